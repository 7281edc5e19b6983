// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "lincell/fourier_motzkin.hpp"

namespace lincell {

/* Caps for operations whose DNF output can blow up. */
struct SetOpLimits {
  size_t max_clauses = 100000;
};

namespace detail {

inline void check_clause_cap(size_t count, const SetOpLimits& lim) {
  if (count > lim.max_clauses)
    throw ResourceLimitError("dnf clause count " + std::to_string(count) +
                             " exceeds the limit of " + std::to_string(lim.max_clauses));
}

/* Negation of an atom as a disjunction of one or two atoms. */
inline std::vector<Constraint> negate_atom(const Constraint& c) {
  AffineFunc neg = Rational(-1) * c.func;
  switch (c.rel) {
    case Rel::LT0: return {Constraint(std::move(neg), Rel::LE0)};
    case Rel::LE0: return {Constraint(std::move(neg), Rel::LT0)};
    default: return {Constraint(c.func, Rel::LT0), Constraint(std::move(neg), Rel::LT0)};
  }
}

/* Subtract one conjunctive system from every residue, keeping residues
 * disjoint: each atom of s splits off the part of the residue violating it
 * while the satisfied prefix accumulates. Infeasible pieces are pruned;
 * atoms the residue already carries split off nothing. */
inline std::vector<ConjSystem> subtract_system(const std::vector<ConjSystem>& residues,
                                               const ConjSystem& s, const SetOpLimits& lim) {
  std::vector<ConjSystem> out;
  for (const ConjSystem& r : residues) {
    ConjSystem meet = r;
    meet.constraints.insert(meet.constraints.end(), s.constraints.begin(), s.constraints.end());
    if (!feasible(meet)) {
      out.push_back(r);
      continue;
    }
    ConjSystem prefix = r;
    for (const Constraint& atom : s.constraints) {
      if (std::find(prefix.constraints.begin(), prefix.constraints.end(), atom) !=
          prefix.constraints.end())
        continue;
      for (const Constraint& lit : negate_atom(atom)) {
        ConjSystem piece = prefix;
        piece.add(lit);
        if (feasible(piece)) {
          out.push_back(std::move(piece));
          check_clause_cap(out.size(), lim);
        }
      }
      prefix.add(atom);
    }
  }
  return out;
}

/* Subtraction order: volume first. Systems without equality rows and with
 * few atoms erase the most and split the least. */
inline std::vector<ConjSystem> subtraction_order(const std::vector<ConjSystem>& systems) {
  std::vector<ConjSystem> subs;
  subs.reserve(systems.size());
  for (const ConjSystem& s : systems) subs.push_back(s.canonical());
  std::sort(subs.begin(), subs.end());
  subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
  std::stable_sort(subs.begin(), subs.end(), [](const ConjSystem& a, const ConjSystem& b) {
    auto eq_count = [](const ConjSystem& s) {
      size_t k = 0;
      for (const Constraint& c : s.constraints) k += c.rel == Rel::EQ0;
      return k;
    };
    size_t ea = eq_count(a), eb = eq_count(b);
    if (ea != eb) return ea < eb;
    return a.constraints.size() < b.constraints.size();
  });
  return subs;
}

}  // namespace detail

inline void require_same_dim(const SemilinearSet& a, const SemilinearSet& b) {
  if (a.dim != b.dim) throw DimensionError("set dimension mismatch");
}

/* Drops infeasible and duplicate disjuncts and applies syntactic absorption
 * (a disjunct whose atom set contains another's is redundant). */
inline SemilinearSet simplify(const SemilinearSet& a) {
  std::vector<ConjSystem> kept;
  for (const ConjSystem& d : a.disjuncts) {
    if (!feasible(d)) continue;
    ConjSystem c = d.canonical();
    bool absorbed = false;
    for (const ConjSystem& k : kept)
      if (std::includes(c.constraints.begin(), c.constraints.end(), k.constraints.begin(),
                        k.constraints.end())) {
        absorbed = true;
        break;
      }
    if (absorbed) continue;
    std::erase_if(kept, [&](const ConjSystem& k) {
      return std::includes(k.constraints.begin(), k.constraints.end(), c.constraints.begin(),
                           c.constraints.end());
    });
    kept.push_back(std::move(c));
  }
  return SemilinearSet(a.dim, std::move(kept));
}

inline SemilinearSet set_union(const SemilinearSet& a, const SemilinearSet& b) {
  require_same_dim(a, b);
  SemilinearSet r = a;
  r.disjuncts.insert(r.disjuncts.end(), b.disjuncts.begin(), b.disjuncts.end());
  return simplify(r);
}

inline SemilinearSet intersect(const SemilinearSet& a, const SemilinearSet& b,
                               const SetOpLimits& lim = {}) {
  require_same_dim(a, b);
  SemilinearSet r(a.dim);
  for (const ConjSystem& da : a.disjuncts)
    for (const ConjSystem& db : b.disjuncts) {
      ConjSystem meet = da;
      meet.constraints.insert(meet.constraints.end(), db.constraints.begin(),
                              db.constraints.end());
      if (!feasible(meet)) continue;
      r.disjuncts.push_back(std::move(meet));
      detail::check_clause_cap(r.disjuncts.size(), lim);
    }
  return simplify(r);
}

/* A \ B as a disjoint DNF, by chained subtraction of B's disjuncts. */
inline SemilinearSet subtract(const SemilinearSet& a, const SemilinearSet& b,
                              const SetOpLimits& lim = {}) {
  require_same_dim(a, b);
  std::vector<ConjSystem> residues;
  for (const ConjSystem& d : a.disjuncts)
    if (feasible(d)) residues.push_back(d);
  for (const ConjSystem& s : detail::subtraction_order(b.disjuncts)) {
    if (residues.empty()) break;
    residues = detail::subtract_system(residues, s, lim);
  }
  return SemilinearSet(a.dim, std::move(residues));
}

/* Structural deduplication of disjuncts, without feasibility checks. */
inline SemilinearSet dedupe_disjuncts(const SemilinearSet& a) {
  std::vector<ConjSystem> ds;
  ds.reserve(a.disjuncts.size());
  for (const ConjSystem& d : a.disjuncts) ds.push_back(d.canonical());
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  return SemilinearSet(a.dim, std::move(ds));
}

inline SemilinearSet complement(const SemilinearSet& a, const SetOpLimits& lim = {}) {
  return subtract(SemilinearSet::full(a.dim), a, lim);
}

/* True iff A is contained in B, by emptiness of the pruned difference. */
inline bool subset_of(const SemilinearSet& a, const SemilinearSet& b,
                      const SetOpLimits& lim = {}) {
  require_same_dim(a, b);
  std::vector<ConjSystem> residues;
  for (const ConjSystem& d : a.disjuncts)
    if (feasible(d)) residues.push_back(d);
  for (const ConjSystem& s : detail::subtraction_order(b.disjuncts)) {
    if (residues.empty()) return true;
    residues = detail::subtract_system(residues, s, lim);
  }
  return residues.empty();
}

inline bool equal_sets(const SemilinearSet& a, const SemilinearSet& b,
                       const SetOpLimits& lim = {}) {
  return subset_of(a, b, lim) && subset_of(b, a, lim);
}

/* Topological closure. Each feasible disjunct is convex, so its closure is
 * obtained by weakening strict atoms; the closure of the union is the union
 * of the closures. */
inline SemilinearSet closure_set(const SemilinearSet& a) {
  SemilinearSet r(a.dim);
  for (const ConjSystem& d : a.disjuncts) {
    if (!feasible(d)) continue;
    ConjSystem closed = d;
    for (Constraint& c : closed.constraints)
      if (c.rel == Rel::LT0) c.rel = Rel::LE0;
    r.disjuncts.push_back(std::move(closed));
  }
  return simplify(r);
}

inline SemilinearSet interior(const SemilinearSet& a, const SetOpLimits& lim = {}) {
  return complement(closure_set(complement(a, lim)), lim);
}

inline bool is_open(const SemilinearSet& a, const SetOpLimits& lim = {}) {
  return equal_sets(a, interior(a, lim), lim);
}

/* Image under the projection dropping the last coordinate, by exact
 * quantifier elimination on each disjunct. */
inline SemilinearSet project_set(const SemilinearSet& a) {
  if (a.dim < 2) throw DimensionError("project_set needs ambient dimension >= 2");
  const size_t v = a.dim - 1;
  SemilinearSet r(a.dim - 1);
  for (const ConjSystem& d : a.disjuncts) {
    if (!feasible(d)) continue;
    std::vector<Constraint> rows = d.constraints;
    // prefer an equality pivot for x_n, otherwise Fourier-Motzkin
    auto eq = std::find_if(rows.begin(), rows.end(), [&](const Constraint& c) {
      return c.rel == Rel::EQ0 && c.func.coef[v] != 0;
    });
    std::vector<Constraint> reduced;
    if (eq != rows.end()) {
      AffineFunc expr = (Rational(-1) / eq->func.coef[v]) * eq->func;
      expr.coef[v] = 0;
      for (auto it = rows.begin(); it != rows.end(); ++it) {
        if (it == eq) continue;
        Constraint c = *it;
        const Rational k = c.func.coef[v];
        if (k != 0) {
          c.func = c.func + k * expr;
          c.func.coef[v] = 0;
        }
        reduced.push_back(std::move(c));
      }
    } else {
      std::vector<Constraint> lowers, uppers;
      for (Constraint& c : rows) {
        const Rational& k = c.func.coef[v];
        if (k == 0)
          reduced.push_back(std::move(c));
        else if (k > 0)
          uppers.push_back(std::move(c));
        else
          lowers.push_back(std::move(c));
      }
      for (const Constraint& lo : lowers)
        for (const Constraint& up : uppers) {
          Constraint c;
          c.func = (-lo.func.coef[v]) * up.func + up.func.coef[v] * lo.func;
          c.func.coef[v] = 0;
          c.rel = (lo.rel == Rel::LT0 || up.rel == Rel::LT0) ? Rel::LT0 : Rel::LE0;
          reduced.push_back(std::move(c));
        }
    }
    ConjSystem proj(a.dim - 1);
    for (Constraint& c : reduced) {
      c.func.coef.pop_back();
      proj.add(std::move(c));
    }
    r.disjuncts.push_back(std::move(proj));
  }
  return simplify(r);
}

}  // namespace lincell
