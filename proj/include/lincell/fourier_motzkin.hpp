// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lincell/semilinear.hpp"

namespace lincell {
namespace detail {

/* Outcome of pushing a row into the working set. */
enum class RowFate { Kept, Redundant, Infeasible };

/* Constant rows are decided immediately; others are normalized and checked
 * against rows with the same slope (keep only the tightest). */
class RowSet {
 public:
  RowFate push(Constraint c) {
    c.normalize();
    if (c.func.is_constant()) {
      const Rational& a = c.func.constant;
      bool ok = c.rel == Rel::LT0 ? a < 0 : c.rel == Rel::LE0 ? a <= 0 : a == 0;
      return ok ? RowFate::Redundant : RowFate::Infeasible;
    }
    if (c.rel == Rel::EQ0) {  // equality rows are not slope-merged
      eq_rows_.push_back(std::move(c));
      return RowFate::Kept;
    }
    // rows share a slope iff coefficient vectors are identical after
    // normalization; tightest bound wins, strict beats non-strict on ties
    auto [it, fresh] = by_slope_.try_emplace(c.func.coef, c);
    if (fresh) return RowFate::Kept;
    Constraint& old = it->second;
    if (c.func.constant > old.func.constant ||
        (c.func.constant == old.func.constant && c.rel == Rel::LT0 && old.rel == Rel::LE0)) {
      old = std::move(c);
      return RowFate::Kept;
    }
    return RowFate::Redundant;
  }

  std::vector<Constraint> rows() const {
    std::vector<Constraint> out = eq_rows_;
    for (const auto& [slope, c] : by_slope_) out.push_back(c);
    return out;
  }

 private:
  std::vector<Constraint> eq_rows_;
  std::map<std::vector<Rational>, Constraint> by_slope_;
};

/* Record of one run, sufficient to reconstruct a satisfying point. */
struct FMTrace {
  // equality pivots in substitution order: variable and its expression
  // (an affine functional with zero coefficient on the variable itself)
  std::vector<std::pair<size_t, AffineFunc>> substitutions;
  // per eliminated variable: the inequality rows that mentioned it
  std::vector<std::pair<size_t, std::vector<Constraint>>> eliminations;
};

inline bool fm_feasible(const ConjSystem& sys, FMTrace* trace) {
  const size_t n = sys.dim;
  std::vector<Constraint> rows;
  {
    RowSet rs;
    for (const Constraint& c : sys.constraints)
      if (rs.push(c) == RowFate::Infeasible) return false;
    rows = rs.rows();
  }

  // substitute out equalities first
  for (;;) {
    auto eq = std::find_if(rows.begin(), rows.end(),
                           [](const Constraint& c) { return c.rel == Rel::EQ0; });
    if (eq == rows.end()) break;
    size_t pivot = n;
    for (size_t i = n; i-- > 0;)
      if (eq->func.coef[i] != 0) {
        pivot = i;
        break;
      }
    // constant equalities were filtered by RowSet
    const Rational cp = eq->func.coef[pivot];
    AffineFunc expr = (Rational(-1) / cp) * eq->func;
    expr.coef[pivot] = 0;
    if (trace) trace->substitutions.emplace_back(pivot, expr);

    RowSet rs;
    bool bad = false;
    for (auto it = rows.begin(); it != rows.end() && !bad; ++it) {
      if (it == eq) continue;
      Constraint c = *it;
      const Rational k = c.func.coef[pivot];
      if (k != 0) {
        c.func = c.func + k * expr;
        c.func.coef[pivot] = 0;
      }
      bad = rs.push(std::move(c)) == RowFate::Infeasible;
    }
    if (bad) return false;
    rows = rs.rows();
  }

  // eliminate remaining variables from the last coordinate down
  for (size_t v = n; v-- > 0;) {
    std::vector<Constraint> lowers, uppers, rest;
    for (Constraint& c : rows) {
      const Rational& k = c.func.coef[v];
      if (k == 0)
        rest.push_back(std::move(c));
      else if (k > 0)
        uppers.push_back(std::move(c));
      else
        lowers.push_back(std::move(c));
    }
    if (lowers.empty() && uppers.empty()) {
      rows = std::move(rest);
      continue;
    }
    if (trace) {
      std::vector<Constraint> mention;
      mention.insert(mention.end(), lowers.begin(), lowers.end());
      mention.insert(mention.end(), uppers.begin(), uppers.end());
      trace->eliminations.emplace_back(v, std::move(mention));
    }
    RowSet rs;
    for (Constraint& c : rest)
      if (rs.push(std::move(c)) == RowFate::Infeasible) return false;
    for (const Constraint& lo : lowers)
      for (const Constraint& up : uppers) {
        // c_lo < 0 < c_up: positive combination cancelling x_v; the result
        // is strict when either parent is strict
        Constraint c;
        c.func = (-lo.func.coef[v]) * up.func + up.func.coef[v] * lo.func;
        c.func.coef[v] = 0;
        c.rel = (lo.rel == Rel::LT0 || up.rel == Rel::LT0) ? Rel::LT0 : Rel::LE0;
        if (rs.push(std::move(c)) == RowFate::Infeasible) return false;
      }
    rows = rs.rows();
  }
  return true;
}

/* Value selection inside an interval with the stated endpoint rules. */
inline Rational pick_in_interval(const ExtRational& lo, const ExtRational& hi) {
  if (!lo.is_finite() && !hi.is_finite()) return 0;
  if (!hi.is_finite()) return lo.value + 1;
  if (!lo.is_finite()) return hi.value - 1;
  if (lo.value == hi.value) return lo.value;
  return (lo.value + hi.value) / 2;
}

}  // namespace detail

/* Exact feasibility of a conjunctive system over Q^n. */
inline bool feasible(const ConjSystem& sys) { return detail::fm_feasible(sys, nullptr); }

inline bool feasible(const SemilinearSet& a) {
  for (const ConjSystem& d : a.disjuncts)
    if (feasible(d)) return true;
  return false;
}

/* A rational point satisfying the system, or nullopt when infeasible.
 * Back-substitutes through the elimination trace; unconstrained directions
 * take the midpoint / shifted-endpoint defaults. */
inline std::optional<Point> witness(const ConjSystem& sys) {
  detail::FMTrace trace;
  if (!detail::fm_feasible(sys, &trace)) return std::nullopt;
  Point x(sys.dim, Rational(0));

  // variables were eliminated from high index to low, so walking the trace
  // backwards assigns each variable after everything it references
  for (auto it = trace.eliminations.rbegin(); it != trace.eliminations.rend(); ++it) {
    const auto& [v, rows] = *it;
    ExtRational lo = ExtRational::neg_inf(), hi = ExtRational::pos_inf();
    for (const Constraint& c : rows) {
      const Rational& k = c.func.coef[v];
      AffineFunc rest = c.func;
      rest.coef[v] = 0;
      Rational bound = -rest.eval(x) / k;
      if (k > 0) {
        if (!hi.is_finite() || bound < hi.value ||
            (bound == hi.value && c.rel == Rel::LT0))
          hi = ExtRational(bound);
      } else {
        if (!lo.is_finite() || bound > lo.value ||
            (bound == lo.value && c.rel == Rel::LT0))
          lo = ExtRational(bound);
      }
    }
    x[v] = detail::pick_in_interval(lo, hi);
  }
  for (auto it = trace.substitutions.rbegin(); it != trace.substitutions.rend(); ++it)
    x[it->first] = it->second.eval(x);
  return x;
}

}  // namespace lincell
