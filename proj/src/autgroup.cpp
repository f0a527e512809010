#include "asc/autgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace asc {

Perm perm_identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_inverse(const Perm& p) {
  Perm inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
  return inv;
}

Perm perm_compose(const Perm& f, const Perm& g) {
  Perm out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = f[g[i]];
  return out;
}

bool perm_is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

bool StabilizerChain::insert(const Perm& g) {
  if (contains(g)) return false;
  insert_from(0, g);
  return true;
}

bool StabilizerChain::contains(const Perm& g) const {
  Perm cur = g;
  for (const auto& lv : levels_) {
    if (perm_is_identity(cur)) return true;
    int q = cur[lv.base];
    int idx = lv.where[q];
    if (idx < 0) return false;
    cur = perm_compose(perm_inverse(lv.transversal[idx]), cur);
  }
  return perm_is_identity(cur);
}

mpz_class StabilizerChain::order() const {
  mpz_class o = 1;
  for (const auto& lv : levels_) o *= static_cast<long>(lv.orbit.size());
  return o;
}

std::vector<Perm> StabilizerChain::elements(std::uint64_t limit) const {
  if (order() > limit)
    throw ResourceError("group too large to enumerate (order " + order().get_str() + ")");
  std::vector<Perm> result{perm_identity(degree_)};
  for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
    std::vector<Perm> next;
    next.reserve(result.size() * it->transversal.size());
    for (const auto& u : it->transversal)
      for (const auto& e : result) next.push_back(perm_compose(u, e));
    result = std::move(next);
  }
  return result;
}

void StabilizerChain::insert_from(std::size_t level, Perm g) {
  for (std::size_t l = level; l < levels_.size(); ++l) {
    if (perm_is_identity(g)) return;
    int q = g[levels_[l].base];
    int idx = levels_[l].where[q];
    if (idx < 0) {
      add_generator(l, g);
      return;
    }
    g = perm_compose(perm_inverse(levels_[l].transversal[idx]), g);
  }
  if (perm_is_identity(g)) return;
  Level lv;
  for (int i = 0; i < degree_; ++i)
    if (g[i] != i) {
      lv.base = i;
      break;
    }
  lv.where.assign(degree_, -1);
  lv.orbit = {lv.base};
  lv.where[lv.base] = 0;
  lv.transversal = {perm_identity(degree_)};
  levels_.push_back(std::move(lv));
  add_generator(levels_.size() - 1, g);
}

void StabilizerChain::add_generator(std::size_t level, const Perm& g) {
  levels_[level].gens.push_back(g);
  // close the orbit; index loops tolerate growth
  for (std::size_t oi = 0; oi < levels_[level].orbit.size(); ++oi)
    for (std::size_t gi = 0; gi < levels_[level].gens.size(); ++gi) {
      int q = levels_[level].orbit[oi];
      int img = levels_[level].gens[gi][q];
      if (levels_[level].where[img] < 0) {
        levels_[level].where[img] = static_cast<int>(levels_[level].orbit.size());
        Perm u = perm_compose(levels_[level].gens[gi], levels_[level].transversal[oi]);
        levels_[level].orbit.push_back(img);
        levels_[level].transversal.push_back(std::move(u));
      }
    }
  // sift the Schreier generators into the deeper chain
  for (std::size_t oi = 0; oi < levels_[level].orbit.size(); ++oi)
    for (std::size_t gi = 0; gi < levels_[level].gens.size(); ++gi) {
      int q = levels_[level].orbit[oi];
      const Perm& gen = levels_[level].gens[gi];
      int idx = levels_[level].where[gen[q]];
      Perm schreier = perm_compose(perm_inverse(levels_[level].transversal[idx]),
                                   perm_compose(gen, levels_[level].transversal[oi]));
      if (!perm_is_identity(schreier)) insert_from(level + 1, std::move(schreier));
    }
}

namespace {

// Backtracking search for one bijection f with rel(f(a), f(b)) = sigma[rel(a, b)],
// forward-checking candidate sets and branching on the most constrained point.
class IsoSearch {
 public:
  IsoSearch(const Scheme& s, const std::vector<int>& sigma)
      : s_(s), sigma_(sigma), n_(s.size) {}

  std::optional<Perm> run(const std::vector<std::pair<int, int>>& forced) {
    f_.assign(n_, -1);
    taken_.assign(n_, 0);
    cand_.assign(n_, std::vector<char>(n_, 1));
    count_.assign(n_, n_);
    assigned_ = 0;
    trail_.clear();
    for (auto [x, y] : forced) {
      if (f_[x] == y) continue;
      if (f_[x] != -1 || taken_[y] || !cand_[x][y]) return std::nullopt;
      if (!assign(x, y)) return std::nullopt;
    }
    if (dfs()) return f_;
    return std::nullopt;
  }

 private:
  bool assign(int x, int y) {
    f_[x] = y;
    taken_[y] = 1;
    ++assigned_;
    for (int z = 0; z < n_; ++z) {
      if (f_[z] != -1) continue;
      int fwd = sigma_[s_.relation(x, z)];
      int bwd = sigma_[s_.relation(z, x)];
      auto& row = cand_[z];
      for (int w = 0; w < n_; ++w) {
        if (!row[w]) continue;
        if (w == y || s_.relation(y, w) != fwd || s_.relation(w, y) != bwd) {
          row[w] = 0;
          --count_[z];
          trail_.emplace_back(z, w);
        }
      }
      if (count_[z] == 0) return false;
    }
    return true;
  }

  void undo(int x, int y, std::size_t mark) {
    while (trail_.size() > mark) {
      auto [z, w] = trail_.back();
      trail_.pop_back();
      cand_[z][w] = 1;
      ++count_[z];
    }
    f_[x] = -1;
    taken_[y] = 0;
    --assigned_;
  }

  bool dfs() {
    if (assigned_ == n_) return true;
    int pick = -1;
    for (int x = 0; x < n_; ++x)
      if (f_[x] == -1 && (pick == -1 || count_[x] < count_[pick])) pick = x;
    for (int y = 0; y < n_; ++y) {
      if (!cand_[pick][y] || taken_[y]) continue;
      std::size_t mark = trail_.size();
      if (assign(pick, y) && dfs()) return true;
      undo(pick, y, mark);
    }
    return false;
  }

  const Scheme& s_;
  const std::vector<int>& sigma_;
  int n_;
  std::vector<int> f_;
  std::vector<char> taken_;
  std::vector<std::vector<char>> cand_;
  std::vector<int> count_;
  std::vector<std::pair<int, int>> trail_;
  int assigned_ = 0;
};

std::vector<std::vector<int>> sigma_candidates(const Scheme& s) {
  const int r = s.num_relations;
  std::vector<int> kv = valencies(s);
  std::vector<int> tv = transpose_involution(s);
  IntersectionTensor t = intersection_numbers(s);

  std::vector<std::vector<int>> out;
  std::vector<int> sig(r, -1);
  sig[0] = 0;
  std::vector<char> used(r, 0);
  used[0] = 1;

  auto preserves_tensor = [&]() {
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k)
          if (t.at(i, j, k) != t.at(sig[i], sig[j], sig[k])) return false;
    return true;
  };

  std::function<void(int)> rec = [&](int i) {
    if (i == r) {
      if (preserves_tensor()) out.push_back(sig);
      return;
    }
    for (int c = 1; c < r; ++c) {
      if (used[c] || kv[c] != kv[i]) continue;
      if (tv[i] == i && tv[c] != c) continue;
      if (sig[tv[i]] != -1 && sig[tv[i]] != tv[c]) continue;
      sig[i] = c;
      used[c] = 1;
      rec(i + 1);
      sig[i] = -1;
      used[c] = 0;
    }
  };
  rec(1);
  return out;
}

void sort_generators(std::vector<ColoredPerm>& gens) {
  std::sort(gens.begin(), gens.end(),
            [](const ColoredPerm& a, const ColoredPerm& b) { return a.f < b.f; });
}

} // namespace

std::optional<Perm> find_automorphism(const Scheme& s, const std::vector<int>& sigma,
                                      const std::vector<std::pair<int, int>>& forced) {
  IsoSearch search(s, sigma);
  return search.run(forced);
}

std::optional<std::vector<int>> sigma_from_point_map(const Scheme& s, const Perm& f) {
  std::vector<int> sig(s.num_relations, -1);
  for (int x = 0; x < s.size; ++x)
    for (int y = 0; y < s.size; ++y) {
      int i = s.relation(x, y);
      int j = s.relation(f[x], f[y]);
      if (sig[i] == -1)
        sig[i] = j;
      else if (sig[i] != j)
        return std::nullopt;
    }
  std::vector<char> hit(s.num_relations, 0);
  for (int v : sig) {
    if (v < 0 || hit[v]) return std::nullopt;
    hit[v] = 1;
  }
  return sig;
}

PermGroupWithColors color_aut_group(const Scheme& s) {
  const int n = s.size;
  std::vector<int> idsigma(s.num_relations);
  std::iota(idsigma.begin(), idsigma.end(), 0);

  StabilizerChain chain(n);
  std::vector<ColoredPerm> gens;
  mpz_class order = 1;
  std::vector<std::pair<int, int>> prefix;

  for (int b = 0; b < n; ++b) {
    std::vector<char> in_orbit(n, 0);
    in_orbit[b] = 1;
    std::vector<Perm> level_gens;
    auto close = [&]() {
      std::vector<int> stack;
      for (int q = 0; q < n; ++q)
        if (in_orbit[q]) stack.push_back(q);
      while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        for (const auto& g : level_gens)
          if (!in_orbit[g[q]]) {
            in_orbit[g[q]] = 1;
            stack.push_back(g[q]);
          }
      }
    };
    for (int q = 0; q < n; ++q) {
      if (in_orbit[q]) continue;
      auto forced = prefix;
      forced.emplace_back(b, q);
      auto f = find_automorphism(s, idsigma, forced);
      if (f) {
        level_gens.push_back(*f);
        if (chain.insert(*f)) gens.push_back({*f, idsigma});
        in_orbit[q] = 1;
        close();
      }
    }
    order *= static_cast<long>(std::count(in_orbit.begin(), in_orbit.end(), 1));
    prefix.emplace_back(b, b);
  }

  sort_generators(gens);
  PermGroupWithColors out;
  out.degree = n;
  out.generators = std::move(gens);
  out.order = order;
  return out;
}

PermGroupWithColors full_aut_group(const Scheme& s) {
  const int n = s.size;
  PermGroupWithColors color = color_aut_group(s);

  StabilizerChain chain(n);
  std::vector<ColoredPerm> gens;
  for (const auto& g : color.generators) {
    chain.insert(g.f);
    gens.push_back(g);
  }

  for (const auto& sig : sigma_candidates(s)) {
    auto f = find_automorphism(s, sig, {});
    if (f && chain.insert(*f)) gens.push_back({*f, sig});
  }

  sort_generators(gens);
  PermGroupWithColors out;
  out.degree = n;
  out.generators = std::move(gens);
  out.order = chain.order();
  return out;
}

std::vector<int> orbitals(const std::vector<ColoredPerm>& gens, int n) {
  const std::size_t total = static_cast<std::size_t>(n) * n;
  std::vector<int> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    while (parent[a] != static_cast<int>(a)) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& g : gens)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        std::size_t a = find(static_cast<std::size_t>(x) * n + y);
        std::size_t b = find(static_cast<std::size_t>(g.f[x]) * n + g.f[y]);
        if (a != b) parent[a] = static_cast<int>(b);
      }
  std::vector<int> cls(total);
  std::map<std::size_t, int> ids;
  for (std::size_t p = 0; p < total; ++p) {
    std::size_t root = find(p);
    auto it = ids.find(root);
    if (it == ids.end()) it = ids.emplace(root, static_cast<int>(ids.size())).first;
    cls[p] = it->second;
  }
  return cls;
}

bool is_schurian(const Scheme& s) {
  PermGroupWithColors g = color_aut_group(s);
  std::vector<int> orb = orbitals(g.generators, s.size);
  int classes = *std::max_element(orb.begin(), orb.end()) + 1;
  return classes == s.num_relations;
}

mpz_class predicted_wreath_aut_order(const Scheme& x, const Scheme& y) {
  PermGroupWithColors gx = full_aut_group(x);
  PermGroupWithColors gy = full_aut_group(y);

  std::map<std::vector<int>, mpz_class> tau_count;
  if (gy.order <= 200000) {
    StabilizerChain chain(y.size);
    for (const auto& g : gy.generators) chain.insert(g.f);
    for (const auto& el : chain.elements(200000)) {
      auto sig = sigma_from_point_map(y, el);
      if (!sig) throw Error("generated element is not an automorphism");
      tau_count[*sig] += 1;
    }
  } else {
    // fibers of the sigma map are cosets of Aut(Y|I_Y)
    mpz_class kernel_order = color_aut_group(y).order;
    std::set<std::vector<int>> taus;
    std::vector<std::vector<int>> queue;
    std::vector<int> id(y.num_relations);
    std::iota(id.begin(), id.end(), 0);
    taus.insert(id);
    queue.push_back(id);
    std::vector<std::vector<int>> gen_sigmas;
    for (const auto& g : gy.generators) gen_sigmas.push_back(g.sigma);
    while (!queue.empty()) {
      auto t = queue.back();
      queue.pop_back();
      for (const auto& gs : gen_sigmas) {
        std::vector<int> comp(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) comp[i] = gs[t[i]];
        if (taus.insert(comp).second) queue.push_back(comp);
      }
    }
    for (const auto& t : taus) tau_count[t] = kernel_order;
  }

  mpz_class sum = 0;
  for (const auto& [tau, cnt] : tau_count) {
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), cnt.get_mpz_t(), static_cast<unsigned long>(x.size));
    sum += p;
  }
  return gx.order * sum;
}

} // namespace asc
