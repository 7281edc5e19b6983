// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lincell/rational.hpp"

namespace lincell {

/* An affine functional c1*x1 + ... + ck*xk + a with exact rational entries.
 * Structural equality: equal arity, coefficients and constant. */
struct AffineFunc {
  std::vector<Rational> coef;
  Rational constant;

  AffineFunc() = default;
  AffineFunc(std::vector<Rational> c, Rational a) : coef(std::move(c)), constant(std::move(a)) {}

  static AffineFunc constant_fn(size_t arity, Rational a) {
    return AffineFunc(std::vector<Rational>(arity, Rational(0)), std::move(a));
  }
  static AffineFunc coordinate(size_t arity, size_t i) {
    AffineFunc f = constant_fn(arity, Rational(0));
    f.coef.at(i) = 1;
    return f;
  }

  size_t arity() const { return coef.size(); }

  bool is_constant() const {
    for (const Rational& c : coef)
      if (c != 0) return false;
    return true;
  }

  Rational eval(std::span<const Rational> x) const {
    if (x.size() != coef.size())
      throw DimensionError("affine eval: point has arity " + std::to_string(x.size()) +
                           ", functional expects " + std::to_string(coef.size()));
    Rational r = constant;
    for (size_t i = 0; i < coef.size(); ++i)
      if (coef[i] != 0) r += coef[i] * x[i];
    return r;
  }

  /* View in one more variable, with coefficient 0 on the new last one. */
  AffineFunc lifted() const {
    AffineFunc f = *this;
    f.coef.emplace_back(0);
    return f;
  }

  /* Drop the last coefficient; only valid when it is zero. */
  AffineFunc dropped_last() const {
    AffineFunc f = *this;
    f.coef.pop_back();
    return f;
  }

  friend AffineFunc operator+(const AffineFunc& a, const AffineFunc& b) {
    AffineFunc r = a;
    for (size_t i = 0; i < r.coef.size(); ++i) r.coef[i] += b.coef[i];
    r.constant += b.constant;
    return r;
  }
  friend AffineFunc operator-(const AffineFunc& a, const AffineFunc& b) {
    AffineFunc r = a;
    for (size_t i = 0; i < r.coef.size(); ++i) r.coef[i] -= b.coef[i];
    r.constant -= b.constant;
    return r;
  }
  friend AffineFunc operator*(const Rational& s, const AffineFunc& a) {
    AffineFunc r = a;
    for (Rational& c : r.coef) c *= s;
    r.constant *= s;
    return r;
  }

  bool operator==(const AffineFunc& o) const { return coef == o.coef && constant == o.constant; }

  /* Lexicographic order for use in sorted containers. */
  friend bool operator<(const AffineFunc& a, const AffineFunc& b) {
    if (a.coef.size() != b.coef.size()) return a.coef.size() < b.coef.size();
    for (size_t i = 0; i < a.coef.size(); ++i)
      if (a.coef[i] != b.coef[i]) return a.coef[i] < b.coef[i];
    return a.constant < b.constant;
  }
};

inline std::string to_string(const AffineFunc& f) {
  std::string s;
  for (size_t i = 0; i < f.arity(); ++i) {
    if (f.coef[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += to_string(f.coef[i]) + "*x" + std::to_string(i + 1);
  }
  if (s.empty() || f.constant != 0) {
    if (!s.empty()) s += " + ";
    s += to_string(f.constant);
  }
  return s;
}

/* Affine functional extended with the constant maps -inf and +inf.
 * Comparisons against an infinity are settled by the tag alone. */
struct ExtAffine {
  enum Kind : int8_t { NegInf = -1, Finite = 0, PosInf = 1 };

  Kind kind = Finite;
  AffineFunc fn;  // meaningful only when kind == Finite

  ExtAffine() = default;
  ExtAffine(AffineFunc f) : kind(Finite), fn(std::move(f)) {}  // NOLINT(google-explicit-constructor)

  static ExtAffine neg_inf() { return ExtAffine(NegInf); }
  static ExtAffine pos_inf() { return ExtAffine(PosInf); }

  bool is_finite() const { return kind == Finite; }

  bool operator==(const ExtAffine& o) const {
    return kind == o.kind && (kind != Finite || fn == o.fn);
  }

 private:
  explicit ExtAffine(Kind k) : kind(k) {}
};

inline std::string to_string(const ExtAffine& e) {
  switch (e.kind) {
    case ExtAffine::NegInf: return "-inf";
    case ExtAffine::PosInf: return "+inf";
    default: return to_string(e.fn);
  }
}

}  // namespace lincell
