#ifndef ASC_PRODUCTS_HPP
#define ASC_PRODUCTS_HPP

#include "asc/scheme.hpp"

namespace asc {

/// Default guard against accidental blowups; every constructor below takes an
/// override.
inline constexpr long long kDefaultPointCap = 4096;

/// Direct product. Point (a,b) -> a*n_y + b, label (i,j) -> i*r_y + j.
Scheme direct_product(const Scheme& x, const Scheme& y,
                      long long point_cap = kDefaultPointCap);

/// Wreath product on X x Y: differing X-coordinates keep the X-relation,
/// equal X-coordinates take the Y-relation. Labels: 0 identity, 1..r_x-1 the
/// front relations (order preserved), r_x..r_x+r_y-2 the rear relations.
Scheme wreath_product(const Scheme& x, const Scheme& y,
                      long long point_cap = kDefaultPointCap);

/// Left-nested wreath power, n >= 1.
Scheme wreath_power(const Scheme& x, int n, long long point_cap = kDefaultPointCap);

/// Scheme on length-n words over a v-ary alphabet, colored by the smallest
/// differing coordinate (1-based); label 0 is equality. Words are encoded
/// base v with coordinate 1 most significant.
Scheme kernel_scheme(int n, int v, long long point_cap = kDefaultPointCap);

/// The unique scheme with two relations on v >= 2 points.
Scheme class_one(int v);

/// The canonical surjection wreath_product(x,y) -> x: drop the Y coordinate,
/// send rear labels to 0.
Morphism projection_morphism(const Scheme& x, const Scheme& y);

} // namespace asc

#endif
