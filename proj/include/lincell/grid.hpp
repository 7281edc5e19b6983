// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "lincell/setops.hpp"

namespace lincell {

/* Rational sampling grid { (a_1/q, ..., a_n/q) : |a_i/q| <= B }. */
struct GridSpec {
  Rational box_radius = 3;
  unsigned denominator = 4;
  size_t dim = 2;
  size_t cap = 1000000;

  /* Desk-scale defaults that straddle every small-coefficient wall. */
  static GridSpec defaults(size_t n) {
    if (n <= 2) return GridSpec{Rational(3), 4, n};
    return GridSpec{Rational(2), 2, n};
  }

  Integer steps_per_axis() const {
    // integer a with |a| <= B*q
    Integer m = num(box_radius * denominator) / den(box_radius * denominator);
    return 2 * m + 1;
  }
};

/* Calls fn on every grid point; throws when the grid exceeds the cap. */
inline void for_each_grid_point(const GridSpec& g, const std::function<void(const Point&)>& fn) {
  Integer per_axis = g.steps_per_axis();
  Integer total = 1;
  for (size_t i = 0; i < g.dim; ++i) {
    total *= per_axis;
    if (total > g.cap)
      throw ResourceLimitError("grid of " + total.str() + "+ points exceeds the cap of " +
                               std::to_string(g.cap));
  }
  Integer m = (per_axis - 1) / 2;
  std::vector<Integer> a(g.dim, -m);
  Point x(g.dim);
  for (;;) {
    for (size_t i = 0; i < g.dim; ++i) x[i] = Rational(a[i], g.denominator);
    fn(x);
    size_t i = 0;
    while (i < g.dim && a[i] == m) a[i++] = -m;
    if (i == g.dim) break;
    ++a[i];
  }
}

/* All grid points where membership in A and B disagrees; empty means the
 * two sets agree on the grid. */
inline std::vector<Point> grid_compare(const SemilinearSet& a, const SemilinearSet& b,
                                       const GridSpec& g) {
  require_same_dim(a, b);
  if (a.dim != g.dim) throw DimensionError("grid dimension mismatch");
  std::vector<Point> diff;
  for_each_grid_point(g, [&](const Point& x) {
    if (a.member(x) != b.member(x)) diff.push_back(x);
  });
  return diff;
}

}  // namespace lincell
