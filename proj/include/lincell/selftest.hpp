// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "lincell/grid.hpp"
#include "lincell/random.hpp"
#include "lincell/star.hpp"

namespace lincell {

/* Deterministic invariant battery. Every message is derived from exact
 * values only, so a fixed seed reproduces the report byte for byte. */
inline int selftest(uint64_t seed, std::ostream& out) {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    out << name << ": " << (ok ? "ok" : "FAIL") << " (" << detail << ")\n";
    if (!ok) ++failures;
  };

  {  // feasibility kernel against exhaustive grid search, witness validity
    size_t checked = 0;
    bool ok = true;
    std::string detail;
    for (uint64_t i = 0; i < 60 && ok; ++i) {
      size_t n = 1 + i % 2;
      SemilinearSet s = random_instance(seed * 1000 + i, n, 4, 3);
      const ConjSystem& sys = s.disjuncts.front();
      bool feas = feasible(sys);
      auto w = witness(sys);
      if (feas != w.has_value()) {
        ok = false;
        detail = "witness/feasible disagree on instance " + std::to_string(i);
        break;
      }
      if (w && !sys.sat(*w)) {
        ok = false;
        detail = "witness fails its system on instance " + std::to_string(i);
        break;
      }
      bool grid_hit = false;
      for_each_grid_point(GridSpec{Rational(4), 2, n}, [&](const Point& x) {
        if (!grid_hit && sys.sat(x)) grid_hit = true;
      });
      if (grid_hit && !feas) {
        ok = false;
        detail = "grid found a point of an instance reported infeasible: " + std::to_string(i);
        break;
      }
      ++checked;
    }
    if (ok) detail = std::to_string(checked) + " systems";
    report("feasibility-kernel", ok, detail);
  }

  {  // boolean algebra agrees with pointwise membership on the grid
    bool ok = true;
    std::string detail;
    for (uint64_t i = 0; i < 20 && ok; ++i) {
      SemilinearSet a = random_instance(seed * 2000 + 2 * i, 2, 5, 3);
      SemilinearSet b = random_instance(seed * 2000 + 2 * i + 1, 2, 5, 3);
      SemilinearSet c = complement(a);
      SemilinearSet m = intersect(a, b);
      SemilinearSet u = set_union(a, b);
      for_each_grid_point(GridSpec::defaults(2), [&](const Point& x) {
        if (!ok) return;
        if (c.member(x) != !a.member(x)) ok = false;
        if (m.member(x) != (a.member(x) && b.member(x))) ok = false;
        if (u.member(x) != (a.member(x) || b.member(x))) ok = false;
      });
      if (!ok) detail = "pointwise disagreement on pair " + std::to_string(i);
    }
    if (ok) detail = "20 pairs";
    report("boolean-ops", ok, detail);
  }

  {  // closure is extensive and idempotent; interior of closure stays inside closure
    bool ok = true;
    std::string detail;
    for (uint64_t i = 0; i < 10 && ok; ++i) {
      SemilinearSet a = random_instance(seed * 3000 + i, 2, 4, 3);
      SemilinearSet cl = closure_set(a);
      if (!subset_of(a, cl)) {
        ok = false;
        detail = "closure not extensive on instance " + std::to_string(i);
      } else if (!equal_sets(cl, closure_set(cl))) {
        ok = false;
        detail = "closure not idempotent on instance " + std::to_string(i);
      }
    }
    if (ok) detail = "10 sets";
    report("closure", ok, detail);
  }

  {  // decomposition engine: partitions its targets and tiles the plane
    bool ok = true;
    std::string detail;
    for (uint64_t i = 0; i < 8 && ok; ++i) {
      SemilinearSet a = random_instance(seed * 4000 + i, 2, 4, 3);
      Decomposition d = linear_cdt({a}, 2);
      DecompositionCheck chk = is_decomposition(d);
      if (!chk.ok) {
        ok = false;
        detail = chk.diagnostic;
        break;
      }
      for (const LinearCell& c : d.cells()) {
        bool inside = a.member(c.sample_point());
        if (inside != subset_of(c.formula(), a) && inside) {
          ok = false;
          detail = "cell not inside its target on instance " + std::to_string(i);
          break;
        }
      }
    }
    if (ok) detail = "8 instances";
    report("linear-cdt", ok, detail);
  }

  {  // specialization: special, refining, stratifying
    bool ok = true;
    std::string detail;
    for (uint64_t i = 0; i < 4 && ok; ++i) {
      SemilinearSet a = random_instance(seed * 5000 + i, 2, 4, 3);
      Decomposition d = linear_cdt({a}, 2);
      Decomposition s = specialize(d);
      if (!is_special(s).ok) {
        ok = false;
        detail = "specialize output not special on instance " + std::to_string(i);
      } else if (!refines(s, d)) {
        ok = false;
        detail = "specialize output does not refine on instance " + std::to_string(i);
      } else if (!frontier_check(s).ok) {
        ok = false;
        detail = "specialize output violates the frontier condition on " + std::to_string(i);
      }
    }
    if (ok) detail = "4 instances";
    report("specialize", ok, detail);
  }

  {  // stars of cells in special decompositions are open
    bool ok = true;
    std::string detail;
    for (uint64_t i = 0; i < 3 && ok; ++i) {
      SemilinearSet a = random_instance(seed * 6000 + i, 2, 3, 2);
      Decomposition s = specialize(linear_cdt({a}, 2));
      for (size_t c = 0; c < s.cells().size() && ok; c += 5) {
        if (!is_open(st(s, s.cells()[c].formula()))) {
          ok = false;
          detail = "closed star in instance " + std::to_string(i) + " at cell " +
                   std::to_string(c);
        }
      }
    }
    if (ok) detail = "3 instances";
    report("star-openness", ok, detail);
  }

  {  // open covers: every piece open and inside, union exact
    bool ok = true;
    std::string detail;
    size_t built = 0;
    for (uint64_t i = 0; built < 3 && i < 40 && ok; ++i) {
      SemilinearSet x = random_open_instance(seed * 7000 + i, 2, 4, 2);
      if (!feasible(x)) continue;
      ++built;
      std::vector<OpenPLCell> cover = cover_open_set(x);
      SemilinearSet un(2);
      for (const OpenPLCell& c : cover) {
        SemilinearSet r = c.realized_set();
        if (!is_open(r) || !subset_of(r, x)) {
          ok = false;
          detail = "bad cover cell on instance " + std::to_string(i);
          break;
        }
        un.disjuncts.insert(un.disjuncts.end(), r.disjuncts.begin(), r.disjuncts.end());
      }
      if (ok && !equal_sets(un, x)) {
        ok = false;
        detail = "cover union differs from the set on instance " + std::to_string(i);
      }
      if (ok && !grid_compare(un, x, GridSpec::defaults(2)).empty()) {
        ok = false;
        detail = "grid disagreement on instance " + std::to_string(i);
      }
    }
    if (ok) detail = std::to_string(built) + " open sets";
    report("open-cover", ok, detail);
  }

  out << "selftest: " << (failures == 0 ? "ok" : "FAILED") << " (seed " << seed << ")\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace lincell
