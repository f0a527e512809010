#include "asc/products.hpp"

#include <string>

namespace asc {

namespace {

void check_cap(long long points, long long cap) {
  if (points > cap)
    throw ResourceError("product would have " + std::to_string(points) +
                        " points, over the cap of " + std::to_string(cap));
}

} // namespace

Scheme direct_product(const Scheme& x, const Scheme& y, long long point_cap) {
  check_cap(static_cast<long long>(x.size) * y.size, point_cap);
  Scheme out(x.size * y.size, x.num_relations * y.num_relations);
  for (int a = 0; a < x.size; ++a)
    for (int b = 0; b < y.size; ++b)
      for (int c = 0; c < x.size; ++c)
        for (int d = 0; d < y.size; ++d)
          out.relation(a * y.size + b, c * y.size + d) =
              x.relation(a, c) * y.num_relations + y.relation(b, d);
  return out;
}

Scheme wreath_product(const Scheme& x, const Scheme& y, long long point_cap) {
  check_cap(static_cast<long long>(x.size) * y.size, point_cap);
  const int rear_base = x.num_relations - 1;
  Scheme out(x.size * y.size, x.num_relations + y.num_relations - 1);
  for (int a = 0; a < x.size; ++a)
    for (int b = 0; b < y.size; ++b)
      for (int c = 0; c < x.size; ++c)
        for (int d = 0; d < y.size; ++d) {
          int label = (a != c) ? x.relation(a, c)
                               : (b == d ? 0 : rear_base + y.relation(b, d));
          out.relation(a * y.size + b, c * y.size + d) = label;
        }
  return out;
}

Scheme wreath_power(const Scheme& x, int n, long long point_cap) {
  if (n < 1) throw StructuralError("wreath power needs n >= 1");
  Scheme out = x;
  for (int i = 2; i <= n; ++i) out = wreath_product(out, x, point_cap);
  return out;
}

Scheme kernel_scheme(int n, int v, long long point_cap) {
  if (n < 1 || v < 2) throw StructuralError("kernel scheme needs n >= 1 and v >= 2");
  long long points = 1;
  for (int i = 0; i < n; ++i) {
    points *= v;
    check_cap(points, point_cap);
  }
  Scheme out(static_cast<int>(points), n + 1);
  // digit i (1-based, most significant first) of word w is (w / v^(n-i)) % v
  std::vector<long long> pow(n + 1, 1);
  for (int i = 1; i <= n; ++i) pow[i] = pow[i - 1] * v;
  for (long long wx = 0; wx < points; ++wx)
    for (long long wy = 0; wy < points; ++wy) {
      int label = 0;
      for (int i = 1; i <= n; ++i) {
        long long dx = (wx / pow[n - i]) % v;
        long long dy = (wy / pow[n - i]) % v;
        if (dx != dy) {
          label = i;
          break;
        }
      }
      out.relation(static_cast<int>(wx), static_cast<int>(wy)) = label;
    }
  return out;
}

Scheme class_one(int v) {
  if (v < 2) throw StructuralError("class-one scheme needs v >= 2");
  Scheme out(v, 2);
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y) out.relation(x, y) = x == y ? 0 : 1;
  return out;
}

Morphism projection_morphism(const Scheme& x, const Scheme& y) {
  Morphism m;
  m.point_map.resize(static_cast<std::size_t>(x.size) * y.size);
  for (int a = 0; a < x.size; ++a)
    for (int b = 0; b < y.size; ++b) m.point_map[a * y.size + b] = a;
  m.index_map.assign(x.num_relations + y.num_relations - 1, 0);
  for (int i = 1; i < x.num_relations; ++i) m.index_map[i] = i;
  return m;
}

} // namespace asc
