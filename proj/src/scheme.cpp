#include "asc/scheme.hpp"

#include <algorithm>
#include <sstream>

namespace asc {

bool operator==(const Scheme& a, const Scheme& b) {
  return a.size == b.size && a.num_relations == b.num_relations && a.rel == b.rel;
}

const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::Identity: return "axiom (1): label 0 is the identity relation";
    case Axiom::Closure: return "axiom (2): closure under the matrix product";
    case Axiom::Transpose: return "axiom (3): closure under transpose";
    case Axiom::Surjective: return "surjectivity: every label occurs";
  }
  return "?";
}

bool ValidationReport::violates(Axiom a) const {
  return std::any_of(violations.begin(), violations.end(),
                     [a](const Violation& v) { return v.axiom == a; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  if (!structural_ok) {
    os << "structural error: " << structural_message << "\n";
    return os.str();
  }
  if (ok) {
    os << "ok: all association scheme axioms hold\n";
    return os.str();
  }
  for (const auto& v : violations)
    os << "violated " << axiom_name(v.axiom) << ": " << v.message << "\n";
  return os.str();
}

namespace {

std::string cell(int x, int y) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

} // namespace

ValidationReport validate(const Scheme& raw) {
  ValidationReport rep;
  const int n = raw.size;
  const int r = raw.num_relations;
  if (n <= 0 || r <= 0) {
    rep.structural_message = "size and num_relations must be positive";
    return rep;
  }
  if (raw.rel.size() != static_cast<std::size_t>(n) * n) {
    rep.structural_message = "relation matrix is not " + std::to_string(n) + "x" +
                             std::to_string(n) + " (got " + std::to_string(raw.rel.size()) +
                             " entries)";
    return rep;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int v = raw.relation(x, y);
      if (v < 0 || v >= r) {
        rep.structural_message =
            "label " + std::to_string(v) + " at " + cell(x, y) + " out of range 0.." +
            std::to_string(r - 1);
        return rep;
      }
    }
  rep.structural_ok = true;

  // axiom (1): R^{-1}(0) is exactly the diagonal
  for (int x = 0; x < n; ++x) {
    if (raw.relation(x, x) != 0) {
      rep.violations.push_back({Axiom::Identity, "relation" + cell(x, x) + " = " +
                                                     std::to_string(raw.relation(x, x)) +
                                                     ", expected 0 on the diagonal"});
      break;
    }
  }
  for (int x = 0; x < n && rep.violations.empty(); ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && raw.relation(x, y) == 0) {
        rep.violations.push_back(
            {Axiom::Identity, "label 0 off the diagonal at " + cell(x, y)});
        x = n;
        break;
      }

  // surjectivity
  std::vector<char> seen(r, 0);
  for (int v : raw.rel) seen[v] = 1;
  for (int i = 0; i < r; ++i)
    if (!seen[i])
      rep.violations.push_back(
          {Axiom::Surjective, "label " + std::to_string(i) + " never occurs"});

  // axiom (3): a consistent involution i -> i' with rel(y,x) = rel(x,y)'
  {
    std::vector<int> trans(r, -1);
    bool reported = false;
    for (int x = 0; x < n && !reported; ++x)
      for (int y = 0; y < n; ++y) {
        int i = raw.relation(x, y);
        int j = raw.relation(y, x);
        if (trans[i] == -1) {
          trans[i] = j;
        } else if (trans[i] != j) {
          rep.violations.push_back(
              {Axiom::Transpose,
               "transpose of label " + std::to_string(i) + " ambiguous: " +
                   std::to_string(trans[i]) + " vs " + std::to_string(j) + " at " +
                   cell(x, y)});
          reported = true;
          break;
        }
      }
    if (!reported) {
      for (int i = 0; i < r; ++i)
        if (trans[i] >= 0 && trans[trans[i]] != i) {
          rep.violations.push_back({Axiom::Transpose,
                                    "transpose map is not an involution at label " +
                                        std::to_string(i)});
          break;
        }
    }
  }

  // axiom (2): the count #{y : rel(x,y)=i, rel(y,z)=j} depends only on rel(x,z).
  // Tally per (x,z) cell against the first witness cell of the same label.
  {
    std::vector<long long> ref(static_cast<std::size_t>(r) * r * r, -1);
    std::vector<std::pair<int, int>> witness(r, {-1, -1});
    std::vector<long long> tally(static_cast<std::size_t>(r) * r, 0);
    bool reported = false;
    for (int x = 0; x < n && !reported; ++x)
      for (int z = 0; z < n && !reported; ++z) {
        int k = raw.relation(x, z);
        std::fill(tally.begin(), tally.end(), 0);
        for (int y = 0; y < n; ++y)
          ++tally[static_cast<std::size_t>(raw.relation(x, y)) * r + raw.relation(y, z)];
        if (witness[k].first < 0) {
          witness[k] = {x, z};
          for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
              ref[(static_cast<std::size_t>(i) * r + j) * r + k] =
                  tally[static_cast<std::size_t>(i) * r + j];
        } else {
          for (int i = 0; i < r && !reported; ++i)
            for (int j = 0; j < r; ++j) {
              long long expect = ref[(static_cast<std::size_t>(i) * r + j) * r + k];
              long long got = tally[static_cast<std::size_t>(i) * r + j];
              if (expect != got) {
                std::ostringstream os;
                os << "p_{" << i << "," << j << "}^" << k << " differs: " << expect
                   << " at " << cell(witness[k].first, witness[k].second) << " vs " << got
                   << " at " << cell(x, z);
                rep.violations.push_back({Axiom::Closure, os.str()});
                reported = true;
                break;
              }
            }
        }
      }
  }

  rep.ok = rep.violations.empty();
  return rep;
}

IntersectionTensor intersection_numbers(const Scheme& s) {
  const int n = s.size;
  const int r = s.num_relations;
  IntersectionTensor t;
  t.r = r;
  t.p.assign(static_cast<std::size_t>(r) * r * r, 0);
  std::vector<char> done(r, 0);
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z) {
      int k = s.relation(x, z);
      if (done[k]) continue;
      done[k] = 1;
      for (int y = 0; y < n; ++y) ++t.at(s.relation(x, y), s.relation(y, z), k);
    }
  return t;
}

std::vector<int> valencies(const Scheme& s) {
  std::vector<int> k(s.num_relations, 0);
  for (int y = 0; y < s.size; ++y) ++k[s.relation(0, y)];
  return k;
}

bool is_commutative(const Scheme& s) {
  IntersectionTensor t = intersection_numbers(s);
  const int r = t.r;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 0; k < r; ++k)
        if (t.at(i, j, k) != t.at(j, i, k)) return false;
  return true;
}

bool is_symmetric(const Scheme& s) {
  for (int x = 0; x < s.size; ++x)
    for (int y = 0; y < x; ++y)
      if (s.relation(x, y) != s.relation(y, x)) return false;
  return true;
}

std::vector<int> transpose_involution(const Scheme& s) {
  std::vector<int> trans(s.num_relations, -1);
  for (int x = 0; x < s.size; ++x)
    for (int y = 0; y < s.size; ++y) trans[s.relation(x, y)] = s.relation(y, x);
  return trans;
}

bool operator==(const Morphism& a, const Morphism& b) {
  return a.point_map == b.point_map && a.index_map == b.index_map;
}

bool check_morphism(const Scheme& src, const Scheme& dst, const Morphism& m) {
  if (m.point_map.size() != static_cast<std::size_t>(src.size))
    throw StructuralError("point map has length " + std::to_string(m.point_map.size()) +
                          ", expected " + std::to_string(src.size));
  if (m.index_map.size() != static_cast<std::size_t>(src.num_relations))
    throw StructuralError("index map has length " + std::to_string(m.index_map.size()) +
                          ", expected " + std::to_string(src.num_relations));
  for (int v : m.point_map)
    if (v < 0 || v >= dst.size) throw StructuralError("point map value out of range");
  for (int v : m.index_map)
    if (v < 0 || v >= dst.num_relations)
      throw StructuralError("index map value out of range");

  if (m.index_map[0] != 0) return false;
  for (int x = 0; x < src.size; ++x)
    for (int y = 0; y < src.size; ++y)
      if (m.index_map[src.relation(x, y)] !=
          dst.relation(m.point_map[x], m.point_map[y]))
        return false;
  return true;
}

Morphism identity_morphism(const Scheme& s) {
  Morphism m;
  m.point_map.resize(s.size);
  m.index_map.resize(s.num_relations);
  for (int i = 0; i < s.size; ++i) m.point_map[i] = i;
  for (int i = 0; i < s.num_relations; ++i) m.index_map[i] = i;
  return m;
}

Morphism compose(const Morphism& outer, const Morphism& inner) {
  Morphism m;
  m.point_map.resize(inner.point_map.size());
  m.index_map.resize(inner.index_map.size());
  for (std::size_t i = 0; i < inner.point_map.size(); ++i)
    m.point_map[i] = outer.point_map[inner.point_map[i]];
  for (std::size_t i = 0; i < inner.index_map.size(); ++i)
    m.index_map[i] = outer.index_map[inner.index_map[i]];
  return m;
}

bool is_surjective(const Morphism& m, int dst_size) {
  std::vector<char> hit(dst_size, 0);
  for (int v : m.point_map)
    if (v >= 0 && v < dst_size) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

} // namespace asc
