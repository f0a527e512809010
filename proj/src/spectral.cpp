#include "asc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>

namespace asc {

namespace {

using Cx = std::complex<double>;

// A_i * m without materializing A_i: row x of the product sums the rows of m
// indexed by {y : rel(x,y) = i}.
CMat apply_adjacency(const Scheme& s, int i, const CMat& m) {
  CMat out = CMat::Zero(s.size, m.cols());
  for (int x = 0; x < s.size; ++x)
    for (int y = 0; y < s.size; ++y)
      if (s.relation(x, y) == i) out.row(x) += m.row(y);
  return out;
}

// Connected components of |lambda_a - lambda_b| <= tol.
std::vector<std::vector<int>> cluster_values(const Eigen::VectorXcd& vals, double tol) {
  const int n = static_cast<int>(vals.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (std::abs(vals(a) - vals(b)) <= tol) parent[find(a)] = find(b);
  std::vector<std::vector<int>> groups;
  std::vector<int> where(n, -1);
  for (int a = 0; a < n; ++a) {
    int root = find(a);
    if (where[root] < 0) {
      where[root] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[where[root]].push_back(a);
  }
  return groups;
}

CMat orthonormalize(const CMat& v) {
  Eigen::HouseholderQR<CMat> qr(v);
  CMat q = qr.householderQ() * CMat::Identity(v.rows(), v.cols());
  return q;
}

struct Block {
  CMat basis; // n x m, orthonormal columns
};

} // namespace

std::vector<IMat> adjacency_matrices(const Scheme& s) {
  std::vector<IMat> out(s.num_relations, IMat::Zero(s.size, s.size));
  for (int x = 0; x < s.size; ++x)
    for (int y = 0; y < s.size; ++y) out[s.relation(x, y)](x, y) = 1;
  return out;
}

std::vector<Cx> algebra_coefficients(const Scheme& s, const CMat& mat) {
  const int r = s.num_relations;
  std::vector<Cx> sum(r, Cx(0, 0));
  std::vector<long long> count(r, 0);
  for (int x = 0; x < s.size; ++x)
    for (int y = 0; y < s.size; ++y) {
      sum[s.relation(x, y)] += mat(x, y);
      ++count[s.relation(x, y)];
    }
  for (int i = 0; i < r; ++i) sum[i] /= static_cast<double>(count[i]);
  return sum;
}

std::vector<CQ> coeff_product(const IntersectionTensor& t, const std::vector<CQ>& a,
                              const std::vector<CQ>& b) {
  const int r = t.r;
  std::vector<CQ> out(r);
  for (int i = 0; i < r; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < r; ++j) {
      if (b[j].is_zero()) continue;
      CQ ab = a[i] * b[j];
      for (int k = 0; k < r; ++k) {
        long long pk = t.at(i, j, k);
        if (pk != 0) out[k] += ab * CQ(pk);
      }
    }
  }
  return out;
}

CMat materialize_cq(const Scheme& s, const std::vector<CQ>& c) {
  std::vector<Cx> cd(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) cd[i] = c[i].to_complex();
  CMat out(s.size, s.size);
  for (int x = 0; x < s.size; ++x)
    for (int y = 0; y < s.size; ++y) out(x, y) = cd[s.relation(x, y)];
  return out;
}

namespace {

// Snap a numeric decomposition to exact adjacency-span coefficients and verify
// every invariant in the coefficient algebra. Leaves d untouched on failure.
bool try_exact_snap(const Scheme& s, SpectralDecomposition& d) {
  const int r = s.num_relations;
  const int n = s.size;
  const int J = d.num_idempotents();
  if (J != r) return false;

  std::vector<std::vector<CQ>> q(J, std::vector<CQ>(r));
  for (int j = 0; j < J; ++j) {
    auto c = algebra_coefficients(s, d.idempotents[j]);
    for (int i = 0; i < r; ++i) {
      auto re = rationalize(c[i].real(), 1e-9, 1000000);
      auto im = rationalize(c[i].imag(), 1e-9, 1000000);
      if (!re || !im) return false;
      q[j][i] = CQ(*re, *im);
    }
  }

  IntersectionTensor t = intersection_numbers(s);

  // sum of idempotents is the identity
  for (int i = 0; i < r; ++i) {
    CQ sum;
    for (int j = 0; j < J; ++j) sum += q[j][i];
    if (sum != (i == 0 ? CQ(1) : CQ(0))) return false;
  }
  // pairwise products
  const std::vector<CQ> zero(r);
  for (int j = 0; j < J; ++j)
    for (int k = j; k < J; ++k) {
      auto prod = coeff_product(t, q[j], q[k]);
      const auto& expect = (j == k) ? q[j] : zero;
      if (prod != expect) return false;
    }
  // eigenvalues A_i E_j = lambda E_j, consistent with the numeric eigenmatrix
  std::vector<std::vector<CQ>> eigen(r, std::vector<CQ>(J));
  for (int j = 0; j < J; ++j) {
    int l0 = -1;
    for (int l = 0; l < r; ++l)
      if (!q[j][l].is_zero()) {
        l0 = l;
        break;
      }
    if (l0 < 0) return false;
    for (int i = 0; i < r; ++i) {
      std::vector<CQ> ei(r);
      ei[i] = CQ(1);
      auto prod = coeff_product(t, ei, q[j]);
      CQ lambda = prod[l0] / q[j][l0];
      for (int l = 0; l < r; ++l)
        if (prod[l] != lambda * q[j][l]) return false;
      if (std::abs(lambda.to_complex() - d.eigenmatrix(i, j)) > 1e-6) return false;
      eigen[i][j] = lambda;
    }
  }
  // multiplicities from traces: m_j = n * q_j[0]
  for (int j = 0; j < J; ++j) {
    if (q[j][0].im != 0) return false;
    mpq_class m = n * q[j][0].re;
    if (m.get_den() != 1 || m <= 0) return false;
    if (m.get_num() != d.multiplicities[j]) return false;
  }

  d.exact = true;
  d.coeff = std::move(q);
  d.eigen_exact = std::move(eigen);
  for (int j = 0; j < J; ++j) d.idempotents[j] = materialize_cq(s, d.coeff[j]);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < J; ++j) d.eigenmatrix(i, j) = d.eigen_exact[i][j].to_complex();
  return true;
}

} // namespace

SpectralDecomposition primitive_idempotents_numeric(const Scheme& s, double tol) {
  if (tol <= 0) throw StructuralError("tolerance must be positive");
  if (!is_commutative(s))
    throw UnsupportedInputError(
        "primitive idempotents require a commutative scheme");
  const int n = s.size;
  const int r = s.num_relations;

  CMat m(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) m(x, y) = Cx(1.0 / (s.relation(x, y) + 2), 0);

  Eigen::ComplexEigenSolver<CMat> es(m);
  if (es.info() != Eigen::Success)
    throw NumericalDegeneracyError("eigendecomposition did not converge");

  std::vector<Block> blocks;
  for (const auto& group : cluster_values(es.eigenvalues(), tol)) {
    CMat v(n, static_cast<int>(group.size()));
    for (std::size_t c = 0; c < group.size(); ++c) v.col(c) = es.eigenvectors().col(group[c]);
    blocks.push_back({orthonormalize(v)});
  }

  // Refine: every adjacency matrix must act as a scalar on every block.
  const double scalar_tol = 1000.0 * tol;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t b = 0; b < blocks.size() && !changed; ++b) {
      const CMat& qb = blocks[b].basis;
      const int mcols = static_cast<int>(qb.cols());
      if (mcols == 1) continue;
      for (int i = 1; i < r; ++i) {
        CMat t = qb.adjoint() * apply_adjacency(s, i, qb);
        Cx mean = t.trace() / static_cast<double>(mcols);
        CMat dev = t - mean * CMat::Identity(mcols, mcols);
        if (max_abs(dev) <= scalar_tol) continue;
        Eigen::ComplexEigenSolver<CMat> sub(t);
        if (sub.info() != Eigen::Success)
          throw NumericalDegeneracyError("refinement eigendecomposition failed");
        auto groups = cluster_values(sub.eigenvalues(), 10.0 * tol);
        if (groups.size() < 2)
          throw NumericalDegeneracyError(
              "cannot separate eigenspaces; try a smaller tolerance");
        std::vector<Block> replacement;
        for (const auto& g : groups) {
          CMat w(mcols, static_cast<int>(g.size()));
          for (std::size_t c = 0; c < g.size(); ++c) w.col(c) = sub.eigenvectors().col(g[c]);
          replacement.push_back({orthonormalize(qb * w)});
        }
        blocks.erase(blocks.begin() + static_cast<long>(b));
        blocks.insert(blocks.end(), replacement.begin(), replacement.end());
        changed = true;
        break;
      }
    }
  }

  if (static_cast<int>(blocks.size()) != r)
    throw NumericalDegeneracyError(
        "found " + std::to_string(blocks.size()) + " eigenspaces, expected " +
        std::to_string(r) + "; try a smaller tolerance");

  SpectralDecomposition d;
  d.n = n;
  d.multiplicities.resize(r);
  d.idempotents.resize(r);
  d.eigenmatrix = CMat(r, r);

  // eigenvalues per block, projectors, and the block carrying the all-ones vector
  Eigen::VectorXcd ones = Eigen::VectorXcd::Constant(n, Cx(1.0 / std::sqrt(n), 0));
  int j0 = -1;
  std::vector<std::vector<Cx>> evals(r, std::vector<Cx>(r));
  for (int b = 0; b < r; ++b) {
    const CMat& qb = blocks[b].basis;
    const int mcols = static_cast<int>(qb.cols());
    for (int i = 0; i < r; ++i) {
      CMat t = qb.adjoint() * apply_adjacency(s, i, qb);
      evals[b][i] = t.trace() / static_cast<double>(mcols);
    }
    if ((qb.adjoint() * ones).squaredNorm() > 0.5) j0 = b;
  }
  if (j0 < 0) throw NumericalDegeneracyError("no eigenspace contains the all-ones vector");

  // order: j0 first, then descending P[1][j] (real part, then imaginary part)
  std::vector<int> order;
  order.push_back(j0);
  std::vector<int> rest;
  for (int b = 0; b < r; ++b)
    if (b != j0) rest.push_back(b);
  if (r > 1)
    std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) {
      Cx pa = evals[a][1], pb = evals[b][1];
      if (pa.real() != pb.real()) return pa.real() > pb.real();
      return pa.imag() > pb.imag();
    });
  order.insert(order.end(), rest.begin(), rest.end());

  for (int pos = 0; pos < r; ++pos) {
    const Block& blk = blocks[order[pos]];
    d.multiplicities[pos] = static_cast<int>(blk.basis.cols());
    d.idempotents[pos] = blk.basis * blk.basis.adjoint();
    for (int i = 0; i < r; ++i) d.eigenmatrix(i, pos) = evals[order[pos]][i];
  }
  d.j0_index = 0;

  // invariant self-check at 10*tol (resolvable sizes only)
  if (n <= 512) {
    CMat sum = CMat::Zero(n, n);
    for (const auto& e : d.idempotents) sum += e;
    if (max_abs(sum - CMat::Identity(n, n)) > 10.0 * std::max(tol, 1e-10) * n)
      throw NumericalDegeneracyError("idempotents do not sum to the identity");
  }

  try_exact_snap(s, d);
  return d;
}

SpectralDecomposition wreath_idempotents(const Scheme& x, const SpectralDecomposition& sx,
                                         const Scheme& y, const SpectralDecomposition& sy) {
  const int nx = x.size, ny = y.size;
  const int rx = x.num_relations, ry = y.num_relations;
  const int jx = sx.num_idempotents(), jy = sy.num_idempotents();
  const int rw = rx + ry - 1;
  const int jw = jx + jy - 1;

  std::vector<int> front_order;
  front_order.push_back(sx.j0_index);
  for (int j = 0; j < jx; ++j)
    if (j != sx.j0_index) front_order.push_back(j);
  std::vector<int> rear_order;
  for (int j = 0; j < jy; ++j)
    if (j != sy.j0_index) rear_order.push_back(j);

  SpectralDecomposition d;
  d.n = nx * ny;
  d.j0_index = 0;
  d.multiplicities.resize(jw);
  d.idempotents.resize(jw);
  d.eigenmatrix = CMat(rw, jw);

  CMat jy_avg = CMat::Constant(ny, ny, Cx(1.0 / ny, 0));
  CMat id_x = CMat::Identity(nx, nx);
  for (int a = 0; a < jx; ++a) {
    int j = front_order[a];
    d.multiplicities[a] = sx.multiplicities[j];
    d.idempotents[a] = kron(sx.idempotents[j], jy_avg);
  }
  for (int b = 0; b < jy - 1; ++b) {
    int j = rear_order[b];
    d.multiplicities[jx + b] = nx * sy.multiplicities[j];
    d.idempotents[jx + b] = kron(id_x, sy.idempotents[j]);
  }

  std::vector<int> ky = valencies(y);
  for (int col = 0; col < jw; ++col) {
    bool front_col = col < jx;
    for (int row = 0; row < rw; ++row) {
      if (row >= 1 && row < rx) { // front relation
        d.eigenmatrix(row, col) =
            front_col ? sx.eigenmatrix(row, front_order[col]) * static_cast<double>(ny)
                      : Cx(0, 0);
      } else { // rear relation (row 0 is the identity = rear label 0)
        int iy = row == 0 ? 0 : row - rx + 1;
        d.eigenmatrix(row, col) =
            front_col ? Cx(static_cast<double>(ky[iy]), 0)
                      : sy.eigenmatrix(iy, rear_order[col - jx]);
      }
    }
  }

  if (sx.exact && sy.exact) {
    d.exact = true;
    d.coeff.assign(jw, std::vector<CQ>(rw));
    for (int a = 0; a < jx; ++a) {
      const auto& q = sx.coeff[front_order[a]];
      CQ scale = CQ(1) / CQ(ny);
      d.coeff[a][0] = q[0] * scale;
      for (int i = 1; i < rx; ++i) d.coeff[a][i] = q[i] * scale;
      for (int iy = 1; iy < ry; ++iy) d.coeff[a][rx - 1 + iy] = q[0] * scale;
    }
    for (int b = 0; b < jy - 1; ++b) {
      const auto& q = sy.coeff[rear_order[b]];
      d.coeff[jx + b][0] = q[0];
      for (int iy = 1; iy < ry; ++iy) d.coeff[jx + b][rx - 1 + iy] = q[iy];
    }
    d.eigen_exact.assign(rw, std::vector<CQ>(jw));
    for (int col = 0; col < jw; ++col) {
      bool front_col = col < jx;
      for (int row = 0; row < rw; ++row) {
        if (row >= 1 && row < rx) {
          d.eigen_exact[row][col] =
              front_col ? sx.eigen_exact[row][front_order[col]] * CQ(ny) : CQ(0);
        } else {
          int iy = row == 0 ? 0 : row - rx + 1;
          d.eigen_exact[row][col] = front_col
                                        ? CQ(ky[iy])
                                        : sy.eigen_exact[iy][rear_order[col - jx]];
        }
      }
    }
  }
  return d;
}

CMat wreath_eigenmatrix(const CMat& px, const CMat& py, int n_y,
                        const std::vector<int>& ky) {
  const int rx = static_cast<int>(px.rows());
  const int ry = static_cast<int>(py.rows());
  const int jx = static_cast<int>(px.cols());
  const int jy = static_cast<int>(py.cols());
  if (static_cast<int>(ky.size()) != ry)
    throw StructuralError("valency list does not match the rear eigenmatrix");
  CMat out(rx + ry - 1, jx + jy - 1);
  for (int col = 0; col < jx + jy - 1; ++col) {
    bool front_col = col < jx;
    for (int row = 0; row < rx + ry - 1; ++row) {
      if (row >= 1 && row < rx) {
        out(row, col) = front_col ? px(row, col) * static_cast<double>(n_y) : Cx(0, 0);
      } else {
        int iy = row == 0 ? 0 : row - rx + 1;
        out(row, col) = front_col ? Cx(static_cast<double>(ky[iy]), 0)
                                  : py(iy, col - jx + 1);
      }
    }
  }
  return out;
}

bool is_p_polynomial(const Scheme& s) {
  IntersectionTensor t = intersection_numbers(s);
  const int r = t.r;
  if (r == 1) return true;
  for (int i = 1; i < r; ++i) {
    std::vector<std::vector<CQ>> rows;
    std::vector<CQ> unit(r);
    unit[0] = CQ(1);
    rows.push_back(unit);
    std::vector<CQ> gen(r);
    gen[i] = CQ(1);
    std::vector<CQ> cur = gen;
    for (int pow = 1; pow < r; ++pow) {
      rows.push_back(cur);
      cur = coeff_product(t, cur, gen);
    }
    if (exact_rank(rows) == r) return true;
  }
  return false;
}

namespace {

int numeric_rank(std::vector<std::vector<Cx>> rows, double tol) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  for (auto& row : rows) { // scale-normalize; rank is scale invariant
    double mx = 0;
    for (const auto& v : row) mx = std::max(mx, std::abs(v));
    if (mx > 0)
      for (auto& v : row) v /= mx;
  }
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    double best = tol;
    for (std::size_t rr = rank; rr < rows.size(); ++rr)
      if (std::abs(rows[rr][c]) > best) {
        best = std::abs(rows[rr][c]);
        piv = static_cast<int>(rr);
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t rr = 0; rr < rows.size(); ++rr) {
      if (static_cast<int>(rr) == rank) continue;
      Cx factor = rows[rr][c] / rows[rank][c];
      for (std::size_t cc = c; cc < cols; ++cc) rows[rr][cc] -= factor * rows[rank][cc];
    }
    ++rank;
  }
  return rank;
}

} // namespace

bool is_q_polynomial(const Scheme& s, double tol) {
  SpectralDecomposition d = primitive_idempotents_numeric(s, tol);
  const int r = s.num_relations;
  if (r == 1) return true;
  for (int j = 0; j < d.num_idempotents(); ++j) {
    if (d.exact) {
      std::vector<std::vector<CQ>> rows;
      rows.emplace_back(r, CQ(1)); // the Hadamard unit J
      std::vector<CQ> cur = d.coeff[j];
      for (int pow = 1; pow < r; ++pow) {
        rows.push_back(cur);
        for (int i = 0; i < r; ++i) cur[i] = cur[i] * d.coeff[j][i];
      }
      if (exact_rank(rows) == r) return true;
    } else {
      auto base = algebra_coefficients(s, d.idempotents[j]);
      std::vector<std::vector<Cx>> rows;
      rows.emplace_back(r, Cx(1, 0));
      std::vector<Cx> cur = base;
      for (int pow = 1; pow < r; ++pow) {
        rows.push_back(cur);
        for (int i = 0; i < r; ++i) cur[i] *= base[i];
      }
      if (numeric_rank(rows, 1e-8) == r) return true;
    }
  }
  return false;
}

CMat convolution(const CMat& a, const CMat& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw StructuralError("convolution needs square matrices of equal size");
  return (a * b) / static_cast<double>(a.rows());
}

AlgebraEmbedding embed_algebra(const Scheme& src, const Scheme& dst, const Morphism& m) {
  if (!check_morphism(src, dst, m))
    throw StructuralError("not a morphism of association schemes");
  if (!is_surjective(m, dst.size))
    throw UnsupportedInputError("algebra embedding requires a surjective point map");
  AlgebraEmbedding e;
  e.r_src = src.num_relations;
  e.r_dst = dst.num_relations;
  e.sigma = m.index_map;
  return e;
}

IdempotentCorrespondence idempotent_correspondence(const Scheme& src,
                                                   const SpectralDecomposition& ss,
                                                   const Scheme& dst,
                                                   const SpectralDecomposition& sd,
                                                   const Morphism& m, double tol) {
  AlgebraEmbedding emb = embed_algebra(src, dst, m);
  const int js = ss.num_idempotents();
  const int jd = sd.num_idempotents();
  IdempotentCorrespondence corr;
  corr.blocks.resize(jd);
  std::vector<char> used(js, 0);
  const bool exact = ss.exact && sd.exact;

  for (int jp = 0; jp < jd; ++jp) {
    if (exact) {
      std::vector<CQ> c = sd.coeff[jp];
      for (auto& v : c) v = v * CQ(dst.size);
      std::vector<CQ> psi = emb.apply(c);
      for (int j = 0; j < js; ++j) {
        CQ lambda;
        for (int i = 0; i < emb.r_src; ++i) lambda += psi[i] * ss.eigen_exact[i][j];
        CQ cj = lambda / CQ(src.size);
        if (cj == CQ(1)) {
          if (used[j])
            throw NumericalDegeneracyError("idempotent blocks are not disjoint");
          used[j] = 1;
          corr.blocks[jp].push_back(j);
        } else if (cj != CQ(0)) {
          throw NumericalDegeneracyError(
              "expansion coefficient is neither 0 nor 1");
        }
      }
    } else {
      auto c = algebra_coefficients(dst, sd.idempotents[jp]);
      std::vector<Cx> cd(c.begin(), c.end());
      for (auto& v : cd) v *= static_cast<double>(dst.size);
      std::vector<Cx> psi(emb.r_src);
      for (int i = 0; i < emb.r_src; ++i) psi[i] = cd[emb.sigma[i]];
      for (int j = 0; j < js; ++j) {
        Cx lambda(0, 0);
        for (int i = 0; i < emb.r_src; ++i) lambda += psi[i] * ss.eigenmatrix(i, j);
        Cx cj = lambda / static_cast<double>(src.size);
        if (std::abs(cj - Cx(1, 0)) <= tol) {
          if (used[j])
            throw NumericalDegeneracyError("idempotent blocks are not disjoint");
          used[j] = 1;
          corr.blocks[jp].push_back(j);
        } else if (std::abs(cj) > tol) {
          throw NumericalDegeneracyError(
              "expansion coefficient is neither 0 nor 1 within tolerance");
        }
      }
    }
    if (corr.blocks[jp].empty())
      throw NumericalDegeneracyError("empty idempotent block");
  }
  return corr;
}

} // namespace asc
