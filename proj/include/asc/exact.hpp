#ifndef ASC_EXACT_HPP
#define ASC_EXACT_HPP

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace asc {

// Complex number with exact rational real and imaginary parts.
struct CQ {
  mpq_class re, im;

  CQ() : re(0), im(0) {}
  CQ(long v) : re(v), im(0) {} // NOLINT: implicit by design
  CQ(mpq_class r) : re(std::move(r)), im(0) {}
  CQ(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  CQ conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
  std::string str() const;
};

inline CQ operator+(const CQ& a, const CQ& b) { return {a.re + b.re, a.im + b.im}; }
inline CQ operator-(const CQ& a, const CQ& b) { return {a.re - b.re, a.im - b.im}; }
inline CQ operator-(const CQ& a) { return {-a.re, -a.im}; }
inline CQ operator*(const CQ& a, const CQ& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CQ operator/(const CQ& a, const CQ& b) {
  mpq_class n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
inline bool operator==(const CQ& a, const CQ& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const CQ& a, const CQ& b) { return !(a == b); }
inline CQ& operator+=(CQ& a, const CQ& b) { a = a + b; return a; }

inline std::string rat_str(const mpq_class& q) {
  std::string s = q.get_num().get_str();
  if (q.get_den() != 1) s += "/" + q.get_den().get_str();
  return s;
}

inline std::string CQ::str() const {
  if (im == 0) return rat_str(re);
  return rat_str(re) + (im > 0 ? "+" : "") + rat_str(im) + "i";
}

// Best rational p/q with q <= max_den and |x - p/q| <= tol, via continued fractions.
std::optional<mpq_class> rationalize(double x, double tol, long max_den);

// Rank of a list of row vectors over the field Q(i).
int exact_rank(std::vector<std::vector<CQ>> rows);

} // namespace asc

#endif
