#include "asc/exact.hpp"

#include <cmath>
#include <cstdint>

namespace asc {

std::optional<mpq_class> rationalize(double x, double tol, long max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  auto make = [](long long p, long long q) {
    mpq_class out(mpz_class(p), mpz_class(q));
    out.canonicalize();
    return out;
  };
  long long pm1 = 1, qm1 = 0;
  long long a0 = static_cast<long long>(std::floor(x));
  long long p = a0, q = 1;
  double rem = x - std::floor(x);
  for (int it = 0; it < 64; ++it) {
    if (std::abs(static_cast<double>(p) / static_cast<double>(q) - x) <= tol)
      return make(p, q);
    if (rem == 0.0) break;
    double inv = 1.0 / rem;
    if (!std::isfinite(inv) || std::abs(inv) > 9.0e15) break;
    long long a = static_cast<long long>(std::floor(inv));
    rem = inv - std::floor(inv);
    __int128 pn = static_cast<__int128>(a) * p + pm1;
    __int128 qn = static_cast<__int128>(a) * q + qm1;
    if (qn > max_den || pn > INT64_MAX || pn < INT64_MIN) break;
    pm1 = p;
    qm1 = q;
    p = static_cast<long long>(pn);
    q = static_cast<long long>(qn);
  }
  if (q > 0 && std::abs(static_cast<double>(p) / static_cast<double>(q) - x) <= tol)
    return make(p, q);
  return std::nullopt;
}

int exact_rank(std::vector<std::vector<CQ>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (std::size_t rr = rank; rr < rows.size(); ++rr)
      if (!rows[rr][c].is_zero()) {
        piv = static_cast<int>(rr);
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    CQ inv = CQ(1) / rows[rank][c];
    for (std::size_t rr = 0; rr < rows.size(); ++rr) {
      if (static_cast<int>(rr) == rank || rows[rr][c].is_zero()) continue;
      CQ factor = rows[rr][c] * inv;
      for (std::size_t cc = c; cc < cols; ++cc)
        rows[rr][cc] = rows[rr][cc] - factor * rows[rank][cc];
    }
    ++rank;
  }
  return rank;
}

} // namespace asc
