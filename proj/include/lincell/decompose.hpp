// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lincell/decomposition.hpp"

namespace lincell {
namespace detail {

/* Canonical representative of the hyperplane {f = 0}: positive integer
 * coprime entries, leading nonzero coefficient positive. Only used to
 * deduplicate loci; walls solved for a coordinate are never rescaled. */
inline AffineFunc canonical_locus(AffineFunc f) {
  Constraint row(std::move(f), Rel::EQ0);
  for (const Rational& c : row.func.coef) {
    if (c == 0) continue;
    if (c < 0) row.func = Rational(-1) * row.func;
    break;
  }
  return row.func;
}

/* Solve c_n x_n + rest = 0 for x_n; requires c_n != 0. */
inline AffineFunc solve_last(const AffineFunc& f) {
  AffineFunc rest(std::vector<Rational>(f.coef.begin(), f.coef.end() - 1), f.constant);
  return (Rational(-1) / f.coef[f.arity() - 1]) * rest;
}

inline void sort_unique(std::vector<AffineFunc>& fs) {
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
}

/* Stack graphs and bands over a base cell, one graph per wall value.
 * Callers guarantee that wall differences have constant sign on the base,
 * so evaluation at the sample point gives the order everywhere and walls
 * equal there are equal on all of it. */
inline void stack_over(const LinearCell& base, const std::vector<AffineFunc>& walls,
                       std::vector<LinearCell>& out) {
  Point s = base.sample_point();
  std::map<Rational, AffineFunc> levels;
  for (const AffineFunc& w : walls) levels.try_emplace(w.eval(s), w);
  ExtAffine prev = ExtAffine::neg_inf();
  for (const auto& [value, wall] : levels) {
    out.push_back(LinearCell::band_presorted(base, prev, ExtAffine(wall)));
    out.push_back(LinearCell::graph(base, wall));
    prev = ExtAffine(wall);
  }
  out.push_back(LinearCell::band_presorted(base, prev, ExtAffine::pos_inf()));
}

/* Decomposition of Q^n on whose cells every given functional has constant
 * sign. Functionals involving the last coordinate become walls; the base
 * recursion receives the remaining ones plus all pairwise wall-difference
 * loci, which makes per-base-cell wall ordering well defined. */
inline Decomposition sign_invariant_arrangement(size_t n, std::vector<AffineFunc> funcs) {
  sort_unique(funcs);
  if (n == 1) {
    std::vector<Rational> pts;
    for (const AffineFunc& f : funcs)
      if (f.coef[0] != 0) pts.push_back(-f.constant / f.coef[0]);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<LinearCell> cells;
    ExtRational prev = ExtRational::neg_inf();
    for (const Rational& p : pts) {
      cells.push_back(LinearCell::interval(prev, ExtRational(p)));
      cells.push_back(LinearCell::point(p));
      prev = ExtRational(p);
    }
    cells.push_back(LinearCell::interval(prev, ExtRational::pos_inf()));
    return Decomposition::assemble(1, std::move(cells), nullptr);
  }

  std::vector<AffineFunc> walls, lower;
  for (const AffineFunc& f : funcs) {
    if (f.coef[n - 1] != 0)
      walls.push_back(solve_last(f));
    else if (!f.is_constant())
      lower.push_back(f.dropped_last());
  }
  sort_unique(walls);
  for (size_t i = 0; i < walls.size(); ++i)
    for (size_t j = i + 1; j < walls.size(); ++j) {
      AffineFunc d = walls[i] - walls[j];
      if (!d.is_constant()) lower.push_back(canonical_locus(std::move(d)));
    }
  auto base = std::make_shared<const Decomposition>(
      sign_invariant_arrangement(n - 1, std::move(lower)));
  std::vector<LinearCell> cells;
  for (const LinearCell& b : base->cells()) stack_over(b, walls, cells);
  return Decomposition::assemble(n, std::move(cells), std::move(base));
}

inline std::vector<AffineFunc> collect_target_functionals(
    const std::vector<SemilinearSet>& targets, size_t n) {
  std::vector<AffineFunc> funcs;
  for (const SemilinearSet& t : targets) {
    if (t.dim != n) throw DimensionError("target dimension does not match the requested space");
    for (const ConjSystem& d : t.disjuncts)
      for (const Constraint& c : d.constraints)
        if (!c.func.is_constant()) funcs.push_back(canonical_locus(c.func));
  }
  return funcs;
}

}  // namespace detail

/* Linear cell decomposition of Q^n partitioning every target: each cell is
 * contained in or disjoint from each target set. */
inline Decomposition linear_cdt(const std::vector<SemilinearSet>& targets, size_t n) {
  if (n == 0) throw DimensionError("linear_cdt requires ambient dimension >= 1");
  return detail::sign_invariant_arrangement(n, detail::collect_target_functionals(targets, n));
}

/* Decomposition partitioning the guards of a piecewise-affine function, so
 * that on every cell inside a guard the function is one affine piece. */
inline Decomposition pwa_linearize(
    const std::vector<std::pair<SemilinearSet, AffineFunc>>& pieces, size_t n) {
  std::vector<SemilinearSet> guards;
  for (const auto& [guard, fn] : pieces) {
    if (guard.dim != n || fn.arity() != n)
      throw DimensionError("piecewise-affine piece dimension mismatch");
    guards.push_back(guard);
  }
  for (size_t i = 0; i < guards.size(); ++i)
    for (size_t j = i + 1; j < guards.size(); ++j)
      if (feasible(intersect(guards[i], guards[j])))
        throw InputError("piecewise-affine guards " + std::to_string(i) + " and " +
                         std::to_string(j) + " overlap");
  return linear_cdt(guards, n);
}

struct SpecialCheck {
  bool ok = true;
  size_t graph_cell = 0;  // indices of the offending pair when !ok
  size_t band_cell = 0;
  std::string violation;
};

/* Checks the defining property of special decompositions: the base is
 * special, and no graph wall passes strictly between the walls of any band
 * over a shared frontier point of their bases. */
inline SpecialCheck is_special(const Decomposition& d) {
  if (d.special_cache() == 1) return {};
  auto remember = [&](SpecialCheck r) {
    if (r.violation.empty()) d.set_special_cache(r.ok);
    return r;
  };
  if (d.dim() == 1) return remember({});
  SpecialCheck rec = is_special(d.base());
  if (!rec.ok) {
    d.set_special_cache(false);
    return rec;
  }

  const auto& cells = d.cells();
  std::map<std::pair<size_t, size_t>, bool> touch_memo;
  auto bases_touch = [&](size_t a, size_t b) {
    auto key = std::minmax(a, b);
    auto it = touch_memo.find(key);
    if (it != touch_memo.end()) return it->second;
    ConjSystem sys = d.base().cells()[a].closure_system();
    const ConjSystem other = d.base().cells()[b].closure_system();
    sys.constraints.insert(sys.constraints.end(), other.constraints.begin(),
                           other.constraints.end());
    bool t = feasible(sys);
    touch_memo.emplace(key, t);
    return t;
  };

  for (size_t gi = 0; gi < cells.size(); ++gi) {
    if (cells[gi].kind() != LinearCell::Kind::Graph) continue;
    const AffineFunc& h = cells[gi].graph_fn();
    const size_t ga = d.base_index_of(gi);
    for (size_t bj = 0; bj < cells.size(); ++bj) {
      if (cells[bj].kind() != LinearCell::Kind::Band) continue;
      const size_t bb = d.base_index_of(bj);
      if (!bases_touch(ga, bb)) continue;
      ConjSystem sys = d.base().cells()[ga].closure_system();
      const ConjSystem other = d.base().cells()[bb].closure_system();
      sys.constraints.insert(sys.constraints.end(), other.constraints.begin(),
                             other.constraints.end());
      if (cells[bj].band_lo().is_finite())
        sys.add(cells[bj].band_lo().fn - h, Rel::LT0);  // f < h
      if (cells[bj].band_hi().is_finite())
        sys.add(h - cells[bj].band_hi().fn, Rel::LT0);  // h < g
      if (feasible(sys)) {
        d.set_special_cache(false);
        return {false, gi, bj,
                "graph " + cells[gi].describe() + " passes through band " +
                    cells[bj].describe() + " over a shared frontier point"};
      }
    }
  }
  return remember({});
}

/* Special refinement of a decomposition: collect the wall functions of the
 * top level, refine the base so that it is special and partitions every
 * pairwise wall-equality locus and every projected cell, then stack all
 * walls over every base cell. */
inline Decomposition specialize(const Decomposition& d) {
  if (d.dim() == 1) {
    Decomposition c = d;
    c.set_special_cache(true);
    return c;
  }
  const size_t k = d.dim() - 1;
  std::vector<AffineFunc> walls;
  for (const LinearCell& c : d.cells()) {
    if (c.kind() == LinearCell::Kind::Graph) {
      walls.push_back(c.graph_fn());
    } else {
      if (c.band_lo().is_finite()) walls.push_back(c.band_lo().fn);
      if (c.band_hi().is_finite()) walls.push_back(c.band_hi().fn);
    }
  }
  detail::sort_unique(walls);

  std::vector<SemilinearSet> base_targets;
  for (size_t i = 0; i < walls.size(); ++i)
    for (size_t j = i + 1; j < walls.size(); ++j) {
      AffineFunc diff = walls[i] - walls[j];
      if (diff.is_constant()) continue;  // parallel walls never meet
      ConjSystem locus(k);
      locus.add(std::move(diff), Rel::EQ0);
      base_targets.push_back(SemilinearSet(k, {std::move(locus)}));
    }
  for (const LinearCell& p : d.base().cells()) base_targets.push_back(p.formula());

  auto refined_base =
      std::make_shared<const Decomposition>(specialize(linear_cdt(base_targets, k)));
  std::vector<LinearCell> cells;
  for (const LinearCell& b : refined_base->cells()) detail::stack_over(b, walls, cells);
  Decomposition out = Decomposition::assemble(d.dim(), std::move(cells), std::move(refined_base));
  out.set_special_cache(true);
  return out;
}

}  // namespace lincell
