#ifndef ASC_SPECTRAL_HPP
#define ASC_SPECTRAL_HPP

#include <vector>

#include "asc/exact.hpp"
#include "asc/linalg.hpp"
#include "asc/scheme.hpp"

namespace asc {

std::vector<IMat> adjacency_matrices(const Scheme& s);

/// Primitive idempotents of a commutative scheme. The numeric layer is always
/// present; when every idempotent has been verified to lie in the adjacency
/// span with rational (Gaussian-rational) coefficients, the exact layer is
/// populated and `exact` is set. Idempotent j then equals
/// sum_i coeff[j][i] * A_i with exact arithmetic.
struct SpectralDecomposition {
  int n = 0;
  int j0_index = 0;
  std::vector<int> multiplicities;  // ranks m_j, sum = n
  std::vector<CMat> idempotents;    // E_j, dense n x n
  CMat eigenmatrix;                 // P with A_i E_j = P(i,j) E_j

  bool exact = false;
  std::vector<std::vector<CQ>> coeff;       // J x r, adjacency-span coefficients
  std::vector<std::vector<CQ>> eigen_exact; // r x J

  int num_idempotents() const { return static_cast<int>(multiplicities.size()); }
};

/// Simultaneous eigenspace projectors of the adjacency matrices, computed from
/// a fixed deterministic combination M = sum_i A_i/(i+2) with recursive
/// refinement of any eigenvalue group on which some A_i is not scalar.
/// Throws UnsupportedInputError on non-commutative input and
/// NumericalDegeneracyError when refinement cannot reach r projectors.
SpectralDecomposition primitive_idempotents_numeric(const Scheme& s, double tol = 1e-9);

/// Decomposition of wreath_product(x,y) assembled from component
/// decompositions: front idempotents E_jX (x) J/n_y for all jX, then rear
/// idempotents I (x) E_jY for jY != j0. Exact when both inputs are exact.
SpectralDecomposition wreath_idempotents(const Scheme& x, const SpectralDecomposition& sx,
                                         const Scheme& y, const SpectralDecomposition& sy);

/// First eigenmatrix of the wreath product from component eigenmatrices,
/// in the block order of wreath_product and wreath_idempotents.
CMat wreath_eigenmatrix(const CMat& px, const CMat& py, int n_y,
                        const std::vector<int>& ky);

/// True iff some single adjacency matrix generates the Bose-Mesner algebra
/// under the matrix product. Exact computation in the coefficient algebra.
bool is_p_polynomial(const Scheme& s);

/// True iff some single primitive idempotent generates the algebra under the
/// Hadamard product. Requires a commutative scheme.
bool is_q_polynomial(const Scheme& s, double tol = 1e-9);

/// Convolution product (1/n) * a * b of two square matrices of equal size.
CMat convolution(const CMat& a, const CMat& b);

/// Coefficient-space product: (a * b)_k = sum_{i,j} a_i b_j p_{ij}^k.
std::vector<CQ> coeff_product(const IntersectionTensor& t, const std::vector<CQ>& a,
                              const std::vector<CQ>& b);

/// Materialize sum_i c_i A_i as a dense matrix.
template <typename T>
Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> materialize(const Scheme& s,
                                                             const std::vector<T>& c) {
  Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> out(s.size, s.size);
  for (int x = 0; x < s.size; ++x)
    for (int y = 0; y < s.size; ++y) out(x, y) = c[s.relation(x, y)];
  return out;
}

CMat materialize_cq(const Scheme& s, const std::vector<CQ>& c);

/// The algebra injection along a surjective morphism src -> dst: a coefficient
/// vector c on I_dst pulls back to c(sigma(.)) on I_src; at the matrix level
/// A_{i'} maps to the sum of the A_i with sigma(i) = i'.
struct AlgebraEmbedding {
  int r_src = 0;
  int r_dst = 0;
  std::vector<int> sigma;

  template <typename T>
  std::vector<T> apply(const std::vector<T>& c) const {
    std::vector<T> out(r_src);
    for (int i = 0; i < r_src; ++i) out[i] = c[sigma[i]];
    return out;
  }
};

/// Validates the morphism (including surjectivity of f) and returns the
/// embedding. Throws UnsupportedInputError when f is not surjective.
AlgebraEmbedding embed_algebra(const Scheme& src, const Scheme& dst, const Morphism& m);

/// For each j' in J(dst), the non-empty block of J(src) indices whose
/// idempotents sum to the image of E_{j'} under the embedding.
struct IdempotentCorrespondence {
  std::vector<std::vector<int>> blocks;
};

IdempotentCorrespondence idempotent_correspondence(const Scheme& src,
                                                   const SpectralDecomposition& ss,
                                                   const Scheme& dst,
                                                   const SpectralDecomposition& sd,
                                                   const Morphism& m, double tol = 1e-6);

/// Adjacency-span coefficients of a matrix known to lie in the Bose-Mesner
/// algebra, by averaging entries over each relation's cells.
std::vector<std::complex<double>> algebra_coefficients(const Scheme& s, const CMat& mat);

} // namespace asc

#endif
