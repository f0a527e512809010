#ifndef ASC_SCHEME_HPP
#define ASC_SCHEME_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "asc/errors.hpp"

namespace asc {

/// Finite association scheme: points 0..size-1, relation labels 0..num_relations-1.
/// Label 0 is reserved for the identity relation; `labels` holds optional display
/// names and does not take part in equality.
struct Scheme {
  int size = 0;
  int num_relations = 0;
  std::vector<int> rel; // row-major size*size matrix of labels
  std::vector<std::string> labels;

  Scheme() = default;
  Scheme(int n, int r) : size(n), num_relations(r), rel(static_cast<std::size_t>(n) * n, 0) {}

  int relation(int x, int y) const { return rel[static_cast<std::size_t>(x) * size + y]; }
  int& relation(int x, int y) { return rel[static_cast<std::size_t>(x) * size + y]; }
};

bool operator==(const Scheme& a, const Scheme& b);
inline bool operator!=(const Scheme& a, const Scheme& b) { return !(a == b); }

enum class Axiom {
  Identity = 1,   // label 0 is exactly the diagonal
  Closure = 2,    // intersection numbers well defined
  Transpose = 3,  // label set closed under transpose
  Surjective = 4, // every label occurs
};

const char* axiom_name(Axiom a);

struct Violation {
  Axiom axiom;
  std::string message; // includes a witness
};

struct ValidationReport {
  bool structural_ok = false; // square matrix, labels in range
  bool ok = false;            // structural_ok and all axioms hold
  std::vector<Violation> violations;
  std::string structural_message;

  bool violates(Axiom a) const;
  std::string to_string() const;
};

/// Checks all axioms and collects every violation (not first-failure).
/// A malformed matrix yields structural_ok = false and no axiom checks.
ValidationReport validate(const Scheme& raw);

/// Structure constants p_{ij}^k with A_i A_j = sum_k p_{ij}^k A_k.
struct IntersectionTensor {
  int r = 0;
  std::vector<long long> p; // r*r*r, index (i*r+j)*r+k

  long long at(int i, int j, int k) const {
    return p[(static_cast<std::size_t>(i) * r + j) * r + k];
  }
  long long& at(int i, int j, int k) {
    return p[(static_cast<std::size_t>(i) * r + j) * r + k];
  }
};

IntersectionTensor intersection_numbers(const Scheme& s);
std::vector<int> valencies(const Scheme& s);
bool is_commutative(const Scheme& s);
bool is_symmetric(const Scheme& s);

/// The involution i -> i' with A_{i'} = A_i^T. Requires a validated scheme.
std::vector<int> transpose_involution(const Scheme& s);

/// Morphism of schemes: a point map f and an index map sigma making the
/// relation square commute.
struct Morphism {
  std::vector<int> point_map; // f
  std::vector<int> index_map; // sigma
};

bool operator==(const Morphism& a, const Morphism& b);
inline bool operator!=(const Morphism& a, const Morphism& b) { return !(a == b); }

/// True iff sigma fixes 0 and sigma(rel_src(x,y)) == rel_dst(f(x),f(y)) for all x,y.
/// Throws StructuralError on length or range mismatch.
bool check_morphism(const Scheme& src, const Scheme& dst, const Morphism& m);

Morphism identity_morphism(const Scheme& s);
Morphism compose(const Morphism& outer, const Morphism& inner); // outer after inner
bool is_surjective(const Morphism& m, int dst_size);

} // namespace asc

#endif
