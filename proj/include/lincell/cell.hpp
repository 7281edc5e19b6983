// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cassert>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lincell/setops.hpp"

namespace lincell {

class LinearCell;
enum class CellOrder : uint8_t { LT, EQ, GT, Incomparable };

CellOrder compare_on_cell(const ExtAffine& f, const ExtAffine& g, const LinearCell& c);

/* Linear cell of Q^n, built inductively: a point or open interval on the
 * line, or the graph of an affine map / the open band between two affine
 * walls over a lower-dimensional cell. Immutable; copies share bases. */
class LinearCell {
 public:
  enum class Kind : uint8_t { Point, Interval, Graph, Band };

  static LinearCell point(Rational v) {
    LinearCell c(Kind::Point, 1);
    c.point_ = std::move(v);
    return c;
  }

  static LinearCell interval(ExtRational lo, ExtRational hi) {
    if (!(lo < hi))
      throw InputError("interval endpoints must satisfy lo < hi, got [" + to_string(lo) + ", " +
                       to_string(hi) + "]");
    LinearCell c(Kind::Interval, 1);
    c.lo1_ = std::move(lo);
    c.hi1_ = std::move(hi);
    return c;
  }

  static LinearCell graph(LinearCell base, AffineFunc f) {
    if (f.arity() != base.ambient_dim())
      throw DimensionError("graph wall arity does not match base dimension");
    LinearCell c(Kind::Graph, base.ambient_dim() + 1);
    c.base_ = std::make_shared<const LinearCell>(std::move(base));
    c.lo_ = ExtAffine(std::move(f));
    return c;
  }

  static LinearCell band(LinearCell base, ExtAffine lo, ExtAffine hi) {
    if ((lo.is_finite() && lo.fn.arity() != base.ambient_dim()) ||
        (hi.is_finite() && hi.fn.arity() != base.ambient_dim()))
      throw DimensionError("band wall arity does not match base dimension");
    if (compare_on_cell(lo, hi, base) != CellOrder::LT)
      throw InputError("band walls must satisfy lo < hi everywhere on the base cell");
    return band_presorted(std::move(base), std::move(lo), std::move(hi));
  }

  /* Trusted factory for the decomposition engine: the caller has already
   * established lo < hi on the base. */
  static LinearCell band_presorted(LinearCell base, ExtAffine lo, ExtAffine hi) {
    LinearCell c(Kind::Band, base.ambient_dim() + 1);
    c.base_ = std::make_shared<const LinearCell>(std::move(base));
    c.lo_ = std::move(lo);
    c.hi_ = std::move(hi);
    return c;
  }

  Kind kind() const { return kind_; }
  size_t ambient_dim() const { return ambient_; }
  bool is_inductive() const { return kind_ == Kind::Graph || kind_ == Kind::Band; }

  const Rational& point_value() const { return point_; }
  const ExtRational& interval_lo() const { return lo1_; }
  const ExtRational& interval_hi() const { return hi1_; }
  const LinearCell& base() const { return *base_; }
  std::shared_ptr<const LinearCell> base_ptr() const { return base_; }
  const AffineFunc& graph_fn() const { return lo_.fn; }
  const ExtAffine& band_lo() const { return lo_; }
  const ExtAffine& band_hi() const { return hi_; }

  /* Intrinsic dimension: bands and intervals contribute 1. */
  size_t dim() const {
    switch (kind_) {
      case Kind::Point: return 0;
      case Kind::Interval: return 1;
      case Kind::Graph: return base_->dim();
      default: return base_->dim() + 1;
    }
  }

  /* The base cell; defined for ambient dimension >= 2. */
  LinearCell project() const {
    if (!is_inductive())
      throw PreconditionError("project is undefined on cells of ambient dimension 1");
    return *base_;
  }

  /* Defining constraints, one conjunctive system. */
  ConjSystem formula_system() const {
    ConjSystem s(ambient_);
    append_formula(s, false);
    return s;
  }
  SemilinearSet formula() const { return SemilinearSet(ambient_, {formula_system()}); }

  /* Constraints of the topological closure: strict relations weakened
   * level by level, infinite walls dropped. */
  ConjSystem closure_system() const {
    ConjSystem s(ambient_);
    append_formula(s, true);
    return s;
  }
  SemilinearSet closure() const { return SemilinearSet(ambient_, {closure_system()}); }

  /* A point of the cell: midpoints for bounded fibers, endpoint +/- 1 for
   * half-bounded ones, 0 for free ones. */
  Point sample_point() const {
    switch (kind_) {
      case Kind::Point: return {point_};
      case Kind::Interval: return {detail::pick_in_interval(lo1_, hi1_)};
      case Kind::Graph: {
        Point s = base_->sample_point();
        s.push_back(lo_.fn.eval(s));
        return s;
      }
      default: {
        Point s = base_->sample_point();
        ExtRational lo = lo_.is_finite() ? ExtRational(lo_.fn.eval(s)) : ExtRational::neg_inf();
        ExtRational hi = hi_.is_finite() ? ExtRational(hi_.fn.eval(s)) : ExtRational::pos_inf();
        s.push_back(detail::pick_in_interval(lo, hi));
        return s;
      }
    }
  }

  bool operator==(const LinearCell& o) const {
    if (kind_ != o.kind_ || ambient_ != o.ambient_) return false;
    switch (kind_) {
      case Kind::Point: return point_ == o.point_;
      case Kind::Interval: return lo1_ == o.lo1_ && hi1_ == o.hi1_;
      case Kind::Graph: return lo_ == o.lo_ && *base_ == *o.base_;
      default: return lo_ == o.lo_ && hi_ == o.hi_ && *base_ == *o.base_;
    }
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::Point: return "{" + to_string(point_) + "}";
      case Kind::Interval: return "(" + to_string(lo1_) + ", " + to_string(hi1_) + ")";
      case Kind::Graph: return "graph[" + to_string(lo_.fn) + " | " + base_->describe() + "]";
      default:
        return "band[" + to_string(lo_) + " .. " + to_string(hi_) + " | " + base_->describe() +
               "]";
    }
  }

 private:
  LinearCell(Kind k, size_t ambient) : kind_(k), ambient_(ambient) {}

  void append_formula(ConjSystem& s, bool closed) const {
    const Rel strict = closed ? Rel::LE0 : Rel::LT0;
    // rows are created at this cell's arity and padded out to the ambient
    // dimension of the requested system
    auto add = [&s](AffineFunc f, Rel r) {
      f.coef.resize(s.dim, Rational(0));
      s.add(std::move(f), r);
    };
    switch (kind_) {
      case Kind::Point: {
        add(AffineFunc({Rational(1)}, -point_), Rel::EQ0);
        return;
      }
      case Kind::Interval: {
        if (lo1_.is_finite()) add(AffineFunc({Rational(-1)}, lo1_.value), strict);
        if (hi1_.is_finite()) add(AffineFunc({Rational(1)}, -hi1_.value), strict);
        return;
      }
      case Kind::Graph: {
        base_->append_formula(s, closed);
        AffineFunc f = Rational(-1) * lo_.fn;
        f.coef.push_back(1);
        add(std::move(f), Rel::EQ0);  // x_{k+1} - f(xbar) = 0
        return;
      }
      default: {
        base_->append_formula(s, closed);
        if (lo_.is_finite()) {
          AffineFunc f = lo_.fn;
          f.coef.push_back(-1);
          add(std::move(f), strict);  // lo(xbar) - x_{k+1} < 0
        }
        if (hi_.is_finite()) {
          AffineFunc f = Rational(-1) * hi_.fn;
          f.coef.push_back(1);
          add(std::move(f), strict);  // x_{k+1} - hi(xbar) < 0
        }
        return;
      }
    }
  }

  Kind kind_;
  size_t ambient_;
  Rational point_;
  ExtRational lo1_, hi1_;
  std::shared_ptr<const LinearCell> base_;
  ExtAffine lo_, hi_;  // Graph keeps its wall in lo_
};

inline SemilinearSet cell_formula(const LinearCell& c) { return c.formula(); }
inline SemilinearSet cell_closure(const LinearCell& c) { return c.closure(); }
inline size_t cell_dim(const LinearCell& c) { return c.dim(); }
inline LinearCell project(const LinearCell& c) { return c.project(); }
inline Point sample_point(const LinearCell& c) { return c.sample_point(); }

/* Sign of g - f over a whole cell, decided by exact feasibility of the
 * three sign conditions against the cell formula. Infinite walls are
 * settled by their tags alone. */
inline CellOrder compare_on_cell(const ExtAffine& f, const ExtAffine& g, const LinearCell& c) {
  if (!f.is_finite() || !g.is_finite()) {
    if (f.kind == g.kind) return CellOrder::EQ;
    return f.kind < g.kind ? CellOrder::LT : CellOrder::GT;
  }
  if (f.fn.arity() != c.ambient_dim() || g.fn.arity() != c.ambient_dim())
    throw DimensionError("compare_on_cell: wall arity does not match cell dimension");
  AffineFunc d = g.fn - f.fn;
  if (d.is_constant()) {
    int s = sign(d.constant);
    return s > 0 ? CellOrder::LT : s < 0 ? CellOrder::GT : CellOrder::EQ;
  }
  ConjSystem base = c.formula_system();
  auto holds_somewhere = [&](Rel rel, const AffineFunc& fn) {
    ConjSystem s = base;
    s.add(fn, rel);
    return feasible(s);
  };
  // d < 0 somewhere (g < f), d = 0 somewhere, d > 0 somewhere (f < g)
  bool below = holds_somewhere(Rel::LT0, d);
  bool equal = holds_somewhere(Rel::EQ0, d);
  bool above = holds_somewhere(Rel::LT0, Rational(-1) * d);
  if (below && !equal && !above) return CellOrder::GT;
  if (above && !equal && !below) return CellOrder::LT;
  if (equal && !below && !above) return CellOrder::EQ;
  if (!below && !equal && !above)
    throw PreconditionError("compare_on_cell requires a non-empty cell");
  return CellOrder::Incomparable;
}

inline CellOrder compare_on_cell(const AffineFunc& f, const AffineFunc& g, const LinearCell& c) {
  return compare_on_cell(ExtAffine(f), ExtAffine(g), c);
}

}  // namespace lincell
