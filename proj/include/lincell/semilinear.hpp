// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lincell/affine.hpp"

namespace lincell {

/* Relation of an atomic constraint func(x) REL 0. */
enum class Rel : uint8_t { LT0, LE0, EQ0 };

inline std::string to_string(Rel r) {
  switch (r) {
    case Rel::LT0: return "<";
    case Rel::LE0: return "<=";
    default: return "=";
  }
}

/* One atomic constraint. Rows are kept normalized: entries scaled by a
 * positive rational so that all numbers are coprime integers. Positive
 * scaling never changes the satisfied set. */
struct Constraint {
  AffineFunc func;
  Rel rel = Rel::LE0;

  Constraint() = default;
  Constraint(AffineFunc f, Rel r) : func(std::move(f)), rel(r) { normalize(); }

  void normalize() {
    Integer num_gcd = 0;
    Integer den_lcm = 1;
    auto feed = [&](const Rational& v) {
      if (v == 0) return;
      num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::abs(num(v)));
      den_lcm = boost::multiprecision::lcm(den_lcm, den(v));
    };
    for (const Rational& c : func.coef) feed(c);
    feed(func.constant);
    if (num_gcd == 0) return;  // all-zero row
    Rational scale(den_lcm, num_gcd);
    if (scale == 1) return;
    for (Rational& c : func.coef) c *= scale;
    func.constant *= scale;
  }

  bool sat(std::span<const Rational> x) const {
    Rational v = func.eval(x);
    switch (rel) {
      case Rel::LT0: return v < 0;
      case Rel::LE0: return v <= 0;
      default: return v == 0;
    }
  }

  bool operator==(const Constraint& o) const { return rel == o.rel && func == o.func; }
  friend bool operator<(const Constraint& a, const Constraint& b) {
    if (a.rel != b.rel) return a.rel < b.rel;
    return a.func < b.func;
  }
};

inline std::string to_string(const Constraint& c) {
  return to_string(c.func) + " " + to_string(c.rel) + " 0";
}

/* Conjunction of constraints over a fixed ambient dimension; the satisfied
 * set is the intersection, a convex set. */
struct ConjSystem {
  size_t dim = 0;
  std::vector<Constraint> constraints;

  ConjSystem() = default;
  explicit ConjSystem(size_t n) : dim(n) {}
  ConjSystem(size_t n, std::vector<Constraint> cs) : dim(n), constraints(std::move(cs)) {
    for (const Constraint& c : constraints) check_arity(c);
  }

  void add(Constraint c) {
    check_arity(c);
    constraints.push_back(std::move(c));
  }
  void add(AffineFunc f, Rel r) { add(Constraint(std::move(f), r)); }

  bool sat(std::span<const Rational> x) const {
    if (x.size() != dim) throw DimensionError("point/system dimension mismatch");
    for (const Constraint& c : constraints)
      if (!c.sat(x)) return false;
    return true;
  }

  /* Canonical ordering of rows, duplicates removed; used for structural
   * deduplication of disjuncts. */
  ConjSystem canonical() const {
    ConjSystem s = *this;
    std::sort(s.constraints.begin(), s.constraints.end());
    s.constraints.erase(std::unique(s.constraints.begin(), s.constraints.end()),
                        s.constraints.end());
    return s;
  }

  bool operator==(const ConjSystem& o) const {
    return dim == o.dim && constraints == o.constraints;
  }
  friend bool operator<(const ConjSystem& a, const ConjSystem& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return std::lexicographical_compare(a.constraints.begin(), a.constraints.end(),
                                        b.constraints.begin(), b.constraints.end());
  }

 private:
  void check_arity(const Constraint& c) const {
    if (c.func.arity() != dim)
      throw DimensionError("constraint arity " + std::to_string(c.func.arity()) +
                           " does not match system dimension " + std::to_string(dim));
  }
};

/* Finite union of conjunctive systems (DNF). No disjuncts denotes the
 * empty set; a single empty system denotes all of Q^n. */
struct SemilinearSet {
  size_t dim = 0;
  std::vector<ConjSystem> disjuncts;

  SemilinearSet() = default;
  explicit SemilinearSet(size_t n) : dim(n) {}
  SemilinearSet(size_t n, std::vector<ConjSystem> ds) : dim(n), disjuncts(std::move(ds)) {
    for (const ConjSystem& d : disjuncts)
      if (d.dim != dim) throw DimensionError("disjunct dimension mismatch");
  }

  static SemilinearSet empty(size_t n) { return SemilinearSet(n); }
  static SemilinearSet full(size_t n) { return SemilinearSet(n, {ConjSystem(n)}); }

  bool member(std::span<const Rational> x) const {
    if (x.size() != dim) throw DimensionError("point/set dimension mismatch");
    for (const ConjSystem& d : disjuncts)
      if (d.sat(x)) return true;
    return false;
  }

  void add_disjunct(ConjSystem d) {
    if (d.dim != dim) throw DimensionError("disjunct dimension mismatch");
    disjuncts.push_back(std::move(d));
  }
};

inline bool member(const SemilinearSet& a, std::span<const Rational> x) { return a.member(x); }

using Point = std::vector<Rational>;

}  // namespace lincell
