// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lincell/decompose.hpp"

namespace lincell {

/* Star(X): the cells of the decomposition whose closure meets X. */
inline std::vector<size_t> star_cell_indices(const Decomposition& d, const SemilinearSet& x) {
  if (x.dim != d.dim()) throw DimensionError("star: set/decomposition dimension mismatch");
  std::vector<size_t> out;
  for (size_t j = 0; j < d.cells().size(); ++j) {
    ConjSystem closure = d.cells()[j].closure_system();
    for (const ConjSystem& s : x.disjuncts) {
      ConjSystem sys = closure;
      sys.constraints.insert(sys.constraints.end(), s.constraints.begin(), s.constraints.end());
      if (feasible(sys)) {
        out.push_back(j);
        break;
      }
    }
  }
  return out;
}

inline std::vector<LinearCell> star_cells(const Decomposition& d, const SemilinearSet& x) {
  std::vector<LinearCell> out;
  for (size_t j : star_cell_indices(d, x)) out.push_back(d.cells()[j]);
  return out;
}

/* st(X): the union of the star, as a semilinear set. */
inline SemilinearSet st(const Decomposition& d, const SemilinearSet& x) {
  SemilinearSet u(d.dim());
  for (size_t j : star_cell_indices(d, x)) u.add_disjunct(d.cells()[j].formula_system());
  return u;
}

/* Memoized per-cell star rows. Candidates are pruned through the base:
 * a cell can only meet the closure of cells over base cells that its own
 * base meets the closure of. Rows list candidates fiber by fiber in stack
 * order. Top-dimensional cells are open, so their star is themselves.
 *
 * The top-level test "cell_i meets cl(cell_j)" runs over the cached region
 * formula(base_i) & cl(base_j): first a constant-time fiber-overlap check
 * at a cached witness of that region, then an exact feasibility test with
 * the x_n requirement reduced by hand to wall comparisons. */
class StarIndex {
 public:
  explicit StarIndex(const Decomposition& d) : d_(&d) {
    if (d.has_base()) base_ = std::make_unique<StarIndex>(d.base());
    rows_.resize(d.cells().size());
  }

  StarIndex& base() { return *base_; }

  const std::vector<size_t>& star_of(size_t i) {
    auto& slot = rows_[i];
    if (slot) return *slot;
    std::vector<size_t> row;
    const auto& cells = d_->cells();
    if (cells[i].dim() == d_->dim()) {
      row.push_back(i);
    } else if (d_->dim() == 1) {
      for (size_t j : d_->line_order())
        if (j == i || line_meets_closure(cells[i], cells[j])) row.push_back(j);
    } else {
      for (size_t b : base_->star_of(d_->base_index_of(i)))
        for (size_t j : d_->fiber(b))
          if (j == i || meets_closure(i, j)) row.push_back(j);
    }
    slot = std::move(row);
    return *slot;
  }

 private:
  static bool line_meets_closure(const LinearCell& c, const LinearCell& other) {
    auto [lo, hi] = detail::line_key(c);
    auto [olo, ohi] = detail::line_key(other);
    if (c.kind() == LinearCell::Kind::Point)
      return !(ExtRational(lo) < olo) && !(ohi < lo);  // olo <= v <= ohi
    if (other.kind() == LinearCell::Kind::Point) return lo < olo && olo < hi;
    return lo < ohi && olo < hi;  // open interval vs closed interval
  }

  struct BaseRegion {
    std::vector<Constraint> rows;  // formula(base_i) + closure(base_j)
    Point witness;
  };

  const BaseRegion& base_region(size_t a, size_t b) {
    auto it = regions_.find({a, b});
    if (it != regions_.end()) return it->second;
    BaseRegion reg;
    ConjSystem sys = d_->base().cells()[a].formula_system();
    const ConjSystem closure = d_->base().cells()[b].closure_system();
    sys.constraints.insert(sys.constraints.end(), closure.constraints.begin(),
                           closure.constraints.end());
    auto w = witness(sys);
    if (!w)
      throw PreconditionError("internal: base star row lists a non-touching pair");
    reg.rows = std::move(sys.constraints);
    reg.witness = std::move(*w);
    return regions_.emplace(std::make_pair(a, b), std::move(reg)).first->second;
  }

  /* Open fiber of the cell and closed fiber of the other cell's closure,
   * evaluated at a point of the shared base region. */
  static std::pair<ExtRational, ExtRational> open_fiber(const LinearCell& c, const Point& w) {
    if (c.kind() == LinearCell::Kind::Graph) {
      Rational v = c.graph_fn().eval(w);
      return {ExtRational(v), ExtRational(v)};
    }
    return {c.band_lo().is_finite() ? ExtRational(c.band_lo().fn.eval(w))
                                    : ExtRational::neg_inf(),
            c.band_hi().is_finite() ? ExtRational(c.band_hi().fn.eval(w))
                                    : ExtRational::pos_inf()};
  }

  bool meets_closure(size_t i, size_t j) {
    const LinearCell& ci = d_->cells()[i];
    const LinearCell& cj = d_->cells()[j];
    const BaseRegion& reg = base_region(d_->base_index_of(i), d_->base_index_of(j));

    auto [mlo, mhi] = open_fiber(ci, reg.witness);
    auto [olo, ohi] = open_fiber(cj, reg.witness);
    bool i_graph = ci.kind() == LinearCell::Kind::Graph;
    bool overlap;
    if (i_graph)
      overlap = !(mlo < olo) && !(ohi < mlo);  // olo <= v <= ohi
    else if (cj.kind() == LinearCell::Kind::Graph)
      overlap = mlo < olo && olo < mhi;
    else
      overlap = mlo < ohi && olo < mhi;  // open (mlo,mhi) vs closed [olo,ohi]
    if (overlap) return true;

    // exact test on the whole region: the fiber requirement reduces to
    // wall comparisons, strict against the open fiber of cell_i and
    // non-strict against the closed fiber of cl(cell_j)
    ConjSystem sys(d_->dim() - 1, reg.rows);
    auto add_lt = [&](const ExtAffine& f, const ExtAffine& g, Rel rel) {
      // f REL g required somewhere; infinite tags make rows vacuous
      if (!f.is_finite() || !g.is_finite()) return;
      sys.add(f.fn - g.fn, rel);
    };
    if (i_graph) {
      ExtAffine h(ci.graph_fn());
      if (cj.kind() == LinearCell::Kind::Graph) {
        sys.add(ci.graph_fn() - cj.graph_fn(), Rel::EQ0);
      } else {
        add_lt(cj.band_lo(), h, Rel::LE0);  // f_j <= h
        add_lt(h, cj.band_hi(), Rel::LE0);  // h <= g_j
      }
    } else if (cj.kind() == LinearCell::Kind::Graph) {
      ExtAffine h(cj.graph_fn());
      add_lt(ci.band_lo(), h, Rel::LT0);  // lo_i < h
      add_lt(h, ci.band_hi(), Rel::LT0);  // h < hi_i
    } else {
      add_lt(ci.band_lo(), cj.band_hi(), Rel::LT0);  // lo_i < g_j
      add_lt(cj.band_lo(), ci.band_hi(), Rel::LT0);  // f_j < hi_i
    }
    return feasible(sys);
  }

  const Decomposition* d_;
  std::unique_ptr<StarIndex> base_;
  std::vector<std::optional<std::vector<size_t>>> rows_;
  std::map<std::pair<size_t, size_t>, BaseRegion> regions_;
};

struct FrontierCheck {
  bool ok = true;
  size_t cell = 0;   // the cell meeting a closure it is not contained in
  size_t other = 0;  // the cell owning that closure
  std::string violation;
};

/* Stratification test: every cell meeting the closure of another must lie
 * entirely inside that closure. */
inline FrontierCheck frontier_check(const Decomposition& d) {
  StarIndex idx(d);
  for (size_t i = 0; i < d.cells().size(); ++i) {
    for (size_t j : idx.star_of(i)) {
      if (i == j) continue;
      if (!subset_of(d.cells()[i].formula(), d.cells()[j].closure()))
        return {false, i, j,
                "cell " + d.cells()[i].describe() + " meets but is not contained in cl(" +
                    d.cells()[j].describe() + ")"};
    }
  }
  return {};
}

/* One wall of an open piecewise-affine cell: a constant infinity or a list
 * of (base cell, affine wall) pieces over the star of the base cell. */
struct PWAWall {
  enum Kind : int8_t { NegInf = -1, Pieces = 0, PosInf = 1 };
  Kind kind = Pieces;
  std::vector<std::pair<LinearCell, AffineFunc>> pieces;

  static PWAWall neg_inf() { return PWAWall{NegInf, {}}; }
  static PWAWall pos_inf() { return PWAWall{PosInf, {}}; }
  bool is_finite() const { return kind == Pieces; }
};

/* Open cell with continuous piecewise-affine walls: an open interval on the
 * line, and a band with PWA walls over an open cell below. The realized
 * subsets of Q^n are open; stars of cells in special decompositions
 * materialize as these. */
class OpenPLCell {
 public:
  static OpenPLCell interval(ExtRational lo, ExtRational hi) {
    if (!(lo < hi)) throw InputError("open interval endpoints must satisfy lo < hi");
    OpenPLCell c;
    c.dim_ = 1;
    c.lo1_ = std::move(lo);
    c.hi1_ = std::move(hi);
    return c;
  }

  static OpenPLCell band(OpenPLCell base, PWAWall lo, PWAWall hi) {
    if (lo.kind == PWAWall::PosInf || hi.kind == PWAWall::NegInf)
      throw InputError("band walls out of order");
    if (lo.is_finite() && hi.is_finite() && lo.pieces.size() != hi.pieces.size())
      throw InputError("band walls have mismatched piece lists");
    OpenPLCell c;
    c.dim_ = base.dim_ + 1;
    c.base_ = std::make_shared<const OpenPLCell>(std::move(base));
    c.lo_ = std::move(lo);
    c.hi_ = std::move(hi);
    return c;
  }

  size_t dim() const { return dim_; }
  bool is_interval() const { return dim_ == 1; }
  const ExtRational& interval_lo() const { return lo1_; }
  const ExtRational& interval_hi() const { return hi1_; }
  const OpenPLCell& base() const { return *base_; }
  const PWAWall& wall_lo() const { return lo_; }
  const PWAWall& wall_hi() const { return hi_; }

  /* The realized point set, fiberwise over the wall pieces. */
  SemilinearSet realized_set() const {
    if (dim_ == 1) {
      ConjSystem s(1);
      if (lo1_.is_finite()) s.add(AffineFunc({Rational(-1)}, lo1_.value), Rel::LT0);
      if (hi1_.is_finite()) s.add(AffineFunc({Rational(1)}, -hi1_.value), Rel::LT0);
      return SemilinearSet(1, {std::move(s)});
    }
    SemilinearSet out(dim_);
    if (!lo_.is_finite() && !hi_.is_finite()) {
      for (const ConjSystem& s : base_->realized_set().disjuncts) {
        ConjSystem lifted(dim_);
        for (const Constraint& c : s.constraints)
          lifted.add(c.func.lifted(), c.rel);
        out.disjuncts.push_back(std::move(lifted));
      }
      return out;
    }
    const auto& pieces = lo_.is_finite() ? lo_.pieces : hi_.pieces;
    for (size_t p = 0; p < pieces.size(); ++p) {
      ConjSystem s(dim_);
      for (const Constraint& c : pieces[p].first.formula_system().constraints)
        s.add(c.func.lifted(), c.rel);
      if (lo_.is_finite()) {
        AffineFunc f = lo_.pieces[p].second;
        f.coef.push_back(-1);
        s.add(std::move(f), Rel::LT0);
      }
      if (hi_.is_finite()) {
        AffineFunc f = Rational(-1) * hi_.pieces[p].second;
        f.coef.push_back(1);
        s.add(std::move(f), Rel::LT0);
      }
      out.disjuncts.push_back(std::move(s));
    }
    return out;
  }

 private:
  OpenPLCell() = default;

  size_t dim_ = 1;
  ExtRational lo1_, hi1_;
  std::shared_ptr<const OpenPLCell> base_;
  PWAWall lo_, hi_;
};

namespace detail {

inline OpenPLCell star_open_cell_rec(const Decomposition& d, size_t i, StarIndex& idx) {
  const auto& cells = d.cells();
  const std::vector<size_t>& row = idx.star_of(i);
  if (d.dim() == 1) {
    ExtRational lo = ExtRational::pos_inf(), hi = ExtRational::neg_inf();
    bool first = true;
    for (size_t j : row) {
      auto key = detail::line_key(cells[j]);
      if (first || key.first < lo) lo = key.first;
      if (first || hi < key.second) hi = key.second;
      first = false;
    }
    return OpenPLCell::interval(lo, hi);
  }

  OpenPLCell base_cell = star_open_cell_rec(d.base(), d.base_index_of(i), idx.base());
  PWAWall lo, hi;
  int lo_inf = 0, hi_inf = 0;  // count of unbounded fibers, to detect mixing
  size_t fibers = 0;
  for (size_t b : idx.base().star_of(d.base_index_of(i))) {
    // the star cells over b form one contiguous run; its extreme members
    // are bands whose outer walls bound the star fiber
    const LinearCell* bottom = nullptr;
    const LinearCell* top = nullptr;
    for (size_t j : row) {
      if (d.base_index_of(j) != b) continue;
      if (!bottom) bottom = &cells[j];
      top = &cells[j];
    }
    if (!bottom || bottom->kind() != LinearCell::Kind::Band ||
        top->kind() != LinearCell::Kind::Band)
      throw PreconditionError("star fiber over " + d.base().cells()[b].describe() +
                              " is not bracketed by bands; decomposition is not special");
    ++fibers;
    const LinearCell& base_of_fiber = d.base().cells()[b];
    if (bottom->band_lo().is_finite())
      lo.pieces.emplace_back(base_of_fiber, bottom->band_lo().fn);
    else
      ++lo_inf;
    if (top->band_hi().is_finite())
      hi.pieces.emplace_back(base_of_fiber, top->band_hi().fn);
    else
      ++hi_inf;
  }
  if (lo_inf != 0 && lo_inf != static_cast<int>(fibers))
    throw PreconditionError("star mixes bounded and unbounded lower walls");
  if (hi_inf != 0 && hi_inf != static_cast<int>(fibers))
    throw PreconditionError("star mixes bounded and unbounded upper walls");
  if (lo_inf) lo = PWAWall::neg_inf();
  if (hi_inf) hi = PWAWall::pos_inf();
  return OpenPLCell::band(std::move(base_cell), std::move(lo), std::move(hi));
}

}  // namespace detail

/* Materializes st(C) as an open piecewise-affine cell. Requires a special
 * decomposition: the non-special example with a pinched star shows the
 * construction cannot work otherwise. */
inline OpenPLCell star_open_cell(const Decomposition& d, size_t cell_index, StarIndex& idx) {
  if (cell_index >= d.cells().size()) throw InputError("cell index out of range");
  SpecialCheck sp = is_special(d);
  if (!sp.ok)
    throw PreconditionError("star_open_cell requires a special decomposition: " + sp.violation);
  return detail::star_open_cell_rec(d, cell_index, idx);
}

inline OpenPLCell star_open_cell(const Decomposition& d, size_t cell_index) {
  StarIndex idx(d);
  return star_open_cell(d, cell_index, idx);
}

/* Finite open-cell covering of a non-empty open semilinear set: specialize
 * a decomposition partitioning it and materialize the star of every cell
 * inside it. Cells sharing a star are reported once. */
inline std::vector<OpenPLCell> cover_open_set(const SemilinearSet& x) {
  if (x.dim == 0) throw DimensionError("cover_open_set requires ambient dimension >= 1");
  if (!feasible(x)) throw PreconditionError("cover_open_set requires a non-empty set");
  if (!is_open(x)) throw PreconditionError("cover_open_set requires an open set");

  Decomposition d = specialize(linear_cdt({x}, x.dim));
  StarIndex idx(d);
  std::set<std::vector<size_t>> seen;
  std::vector<OpenPLCell> out;
  for (size_t i = 0; i < d.cells().size(); ++i) {
    if (!x.member(d.cells()[i].sample_point())) continue;
    const std::vector<size_t>& row = idx.star_of(i);
    std::vector<size_t> key = row;
    std::sort(key.begin(), key.end());
    if (!seen.insert(std::move(key)).second) continue;
    out.push_back(detail::star_open_cell_rec(d, i, idx));
  }
  return out;
}

/* Continuity of a glued wall: wherever one piece domain lies in the closure
 * of another, the two affine pieces must agree on it. */
inline bool pwa_continuous(const PWAWall& w) {
  if (!w.is_finite()) return true;
  for (size_t a = 0; a < w.pieces.size(); ++a)
    for (size_t b = 0; b < w.pieces.size(); ++b) {
      if (a == b) continue;
      const auto& [cell_a, fn_a] = w.pieces[a];
      const auto& [cell_b, fn_b] = w.pieces[b];
      if (!subset_of(cell_a.formula(), cell_b.closure())) continue;
      if (compare_on_cell(fn_a, fn_b, cell_a) != CellOrder::EQ) return false;
    }
  return true;
}

/* Greedy pass dropping cells whose removal keeps the union equal to X. */
inline std::vector<OpenPLCell> minimize_cover(const std::vector<OpenPLCell>& cells,
                                              const SemilinearSet& x) {
  std::vector<SemilinearSet> realized;
  realized.reserve(cells.size());
  for (const OpenPLCell& c : cells) realized.push_back(c.realized_set());
  std::vector<bool> keep(cells.size(), true);
  for (size_t i = 0; i < cells.size(); ++i) {
    keep[i] = false;
    SemilinearSet rest(x.dim);
    for (size_t j = 0; j < cells.size(); ++j)
      if (keep[j])
        rest.disjuncts.insert(rest.disjuncts.end(), realized[j].disjuncts.begin(),
                              realized[j].disjuncts.end());
    if (!subset_of(x, rest)) keep[i] = true;
  }
  std::vector<OpenPLCell> out;
  for (size_t i = 0; i < cells.size(); ++i)
    if (keep[i]) out.push_back(cells[i]);
  return out;
}

}  // namespace lincell
