#ifndef ASC_AUTGROUP_HPP
#define ASC_AUTGROUP_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "asc/scheme.hpp"

namespace asc {

using Perm = std::vector<int>;

Perm perm_identity(int n);
Perm perm_inverse(const Perm& p);
Perm perm_compose(const Perm& f, const Perm& g); // (f o g)(x) = f[g[x]]
bool perm_is_identity(const Perm& p);

/// Deterministic Schreier-Sims stabilizer chain with explicit transversals.
class StabilizerChain {
 public:
  explicit StabilizerChain(int degree) : degree_(degree) {}

  /// Sift the permutation into the chain; returns true if the group grew.
  bool insert(const Perm& g);
  bool contains(const Perm& g) const;
  mpz_class order() const;

  /// All group elements in deterministic transversal order.
  /// Requires order() <= limit; throws ResourceError otherwise.
  std::vector<Perm> elements(std::uint64_t limit) const;

  int degree() const { return degree_; }

 private:
  struct Level {
    int base = -1;
    std::vector<int> orbit;                 // insertion order
    std::vector<int> where;                 // point -> index in orbit, or -1
    std::vector<Perm> transversal;          // aligned with orbit; maps base -> point
    std::vector<Perm> gens;
  };

  void add_generator(std::size_t level, const Perm& g);
  void insert_from(std::size_t level, Perm g);

  int degree_;
  std::vector<Level> levels_;
};

/// An automorphism together with the label permutation it induces.
struct ColoredPerm {
  Perm f;
  std::vector<int> sigma;
};

struct PermGroupWithColors {
  int degree = 0;
  std::vector<ColoredPerm> generators;
  mpz_class order = 1;
};

/// Aut(X|I): automorphisms preserving every relation label. Generators carry
/// sigma = identity; order comes from a stabilizer chain over the point base
/// 0,1,2,...
PermGroupWithColors color_aut_group(const Scheme& s);

/// Full categorical automorphism group: pairs (f, sigma). Candidate sigmas are
/// filtered by valency, transpose and intersection-tensor preservation before
/// any point search.
PermGroupWithColors full_aut_group(const Scheme& s);

/// The label permutation induced by a point map, with a full consistency
/// check; nullopt when f is not an automorphism for any sigma.
std::optional<std::vector<int>> sigma_from_point_map(const Scheme& s, const Perm& f);

/// Orbit classes of the diagonal action on ordered pairs, as a class id per
/// pair (x*n + y), ids numbered by first appearance.
std::vector<int> orbitals(const std::vector<ColoredPerm>& gens, int n);

/// True iff every relation class is a single orbital of Aut(X|I).
bool is_schurian(const Scheme& s);

/// |Aut(X wr Y)| = |Aut(X)| * sum_tau |Aut(Y)_tau|^{#X} with exact per-tau
/// element counts of the full automorphism group of Y.
mpz_class predicted_wreath_aut_order(const Scheme& x, const Scheme& y);

/// One automorphism of `s` realizing sigma and extending the forced partial
/// map, or nullopt. Exposed for tests and the wreath verification suite.
std::optional<Perm> find_automorphism(const Scheme& s, const std::vector<int>& sigma,
                                      const std::vector<std::pair<int, int>>& forced);

} // namespace asc

#endif
