// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "lincell/error.hpp"

namespace lincell {

/* Exact scalar field of the whole library. cpp_rational keeps values
 * canonical: positive denominator, gcd(|num|, den) = 1. */
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign(const Rational& q) { return q.sign(); }

/* Serialized form is "p/q", or just "p" when the denominator is 1. */
inline std::string to_string(const Rational& q) {
  std::string s = num(q).str();
  if (den(q) != 1) {
    s += '/';
    s += den(q).str();
  }
  return s;
}

inline Rational parse_rational(std::string_view text) {
  auto bad = [&] { throw InputError("invalid rational literal: '" + std::string(text) + "'"); };
  if (text.empty()) bad();
  size_t slash = text.find('/');
  auto parse_int = [&](std::string_view part) -> Integer {
    if (part.empty()) bad();
    size_t i = part[0] == '-' ? 1 : 0;
    if (i == part.size()) bad();
    for (size_t k = i; k < part.size(); ++k)
      if (part[k] < '0' || part[k] > '9') bad();
    return Integer(std::string(part));
  };
  Integer n = parse_int(slash == std::string_view::npos ? text : text.substr(0, slash));
  Integer d = 1;
  if (slash != std::string_view::npos) {
    d = parse_int(text.substr(slash + 1));
    if (d <= 0) bad();
  }
  return Rational(n, d);
}

/* Rational extended with the two infinities; the endpoints of dim-1 cells.
 * Ordering is NegInf < Finite(v) < PosInf, finite values by value. */
struct ExtRational {
  enum Kind : int8_t { NegInf = -1, Finite = 0, PosInf = 1 };

  Kind kind = Finite;
  Rational value;  // meaningful only when kind == Finite

  ExtRational() = default;
  ExtRational(Rational v) : kind(Finite), value(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  static ExtRational neg_inf() { return ExtRational(NegInf); }
  static ExtRational pos_inf() { return ExtRational(PosInf); }

  bool is_finite() const { return kind == Finite; }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    return a.kind == b.kind && (a.kind != Finite || a.value == b.value);
  }
  friend bool operator<(const ExtRational& a, const ExtRational& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.kind == Finite && a.value < b.value;
  }

 private:
  explicit ExtRational(Kind k) : kind(k) {}
};

inline std::string to_string(const ExtRational& e) {
  switch (e.kind) {
    case ExtRational::NegInf: return "-inf";
    case ExtRational::PosInf: return "+inf";
    default: return to_string(e.value);
  }
}

}  // namespace lincell
