// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lincell/cell.hpp"

namespace lincell {
namespace detail {

inline int cmp3(bool lt, bool gt) { return lt ? -1 : gt ? 1 : 0; }

inline int cell_cmp(const LinearCell& a, const LinearCell& b) {
  if (a.ambient_dim() != b.ambient_dim()) return a.ambient_dim() < b.ambient_dim() ? -1 : 1;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  auto ext_rat_cmp = [](const ExtRational& x, const ExtRational& y) {
    return cmp3(x < y, y < x);
  };
  auto ext_aff_cmp = [](const ExtAffine& x, const ExtAffine& y) {
    if (x.kind != y.kind) return x.kind < y.kind ? -1 : 1;
    if (x.kind != ExtAffine::Finite) return 0;
    return cmp3(x.fn < y.fn, y.fn < x.fn);
  };
  switch (a.kind()) {
    case LinearCell::Kind::Point:
      return cmp3(a.point_value() < b.point_value(), b.point_value() < a.point_value());
    case LinearCell::Kind::Interval: {
      int c = ext_rat_cmp(a.interval_lo(), b.interval_lo());
      return c ? c : ext_rat_cmp(a.interval_hi(), b.interval_hi());
    }
    case LinearCell::Kind::Graph: {
      int c = cell_cmp(a.base(), b.base());
      if (c) return c;
      return cmp3(a.graph_fn() < b.graph_fn(), b.graph_fn() < a.graph_fn());
    }
    default: {
      int c = cell_cmp(a.base(), b.base());
      if (c) return c;
      c = ext_aff_cmp(a.band_lo(), b.band_lo());
      return c ? c : ext_aff_cmp(a.band_hi(), b.band_hi());
    }
  }
}

struct CellLess {
  bool operator()(const LinearCell& a, const LinearCell& b) const { return cell_cmp(a, b) < 0; }
};

/* Stack position of a cell over a base sample point: graphs collapse to a
 * degenerate interval, bands span their wall values. */
inline std::pair<ExtRational, ExtRational> fiber_key(const LinearCell& c, const Point& s) {
  if (c.kind() == LinearCell::Kind::Graph) {
    Rational v = c.graph_fn().eval(s);
    return {ExtRational(v), ExtRational(v)};
  }
  const ExtAffine& lo = c.band_lo();
  const ExtAffine& hi = c.band_hi();
  return {lo.is_finite() ? ExtRational(lo.fn.eval(s)) : ExtRational::neg_inf(),
          hi.is_finite() ? ExtRational(hi.fn.eval(s)) : ExtRational::pos_inf()};
}

inline std::pair<ExtRational, ExtRational> line_key(const LinearCell& c) {
  if (c.kind() == LinearCell::Kind::Point)
    return {ExtRational(c.point_value()), ExtRational(c.point_value())};
  return {c.interval_lo(), c.interval_hi()};
}

}  // namespace detail

/* A cylindrical decomposition of Q^n: a finite cell partition whose cell
 * projections form the base decomposition one dimension down. Cells keep
 * their construction order; fibers list them in stack order per base cell. */
class Decomposition {
 public:
  /* Groups cells over the given base decomposition. Validates only what
   * grouping needs; use is_decomposition for the full partition check. */
  static Decomposition assemble(size_t dim, std::vector<LinearCell> cells,
                                std::shared_ptr<const Decomposition> base) {
    Decomposition d;
    d.dim_ = dim;
    d.cells_ = std::move(cells);
    d.base_ = std::move(base);
    if (dim == 0) throw DimensionError("decompositions require ambient dimension >= 1");
    if ((dim == 1) != (d.base_ == nullptr))
      throw InputError("decomposition base must be present exactly when dimension > 1");
    if (d.base_ && d.base_->dim() + 1 != dim)
      throw InputError("base decomposition has wrong dimension");
    for (const LinearCell& c : d.cells_)
      if (c.ambient_dim() != dim) throw DimensionError("cell ambient dimension mismatch");

    if (dim == 1) {
      d.order_.resize(d.cells_.size());
      for (size_t i = 0; i < d.order_.size(); ++i) d.order_[i] = i;
      std::sort(d.order_.begin(), d.order_.end(), [&](size_t i, size_t j) {
        auto ki = detail::line_key(d.cells_[i]), kj = detail::line_key(d.cells_[j]);
        if (!(ki.first == kj.first)) return ki.first < kj.first;
        return ki.second < kj.second;
      });
      return d;
    }

    std::map<LinearCell, size_t, detail::CellLess> base_index;
    for (size_t b = 0; b < d.base_->cells().size(); ++b)
      base_index.emplace(d.base_->cells()[b], b);
    d.fibers_.assign(d.base_->cells().size(), {});
    d.base_of_.resize(d.cells_.size());
    for (size_t i = 0; i < d.cells_.size(); ++i) {
      auto it = base_index.find(d.cells_[i].base());
      if (it == base_index.end())
        throw InputError("cell " + std::to_string(i) +
                         " sits over a base cell missing from the base decomposition");
      d.base_of_[i] = it->second;
      d.fibers_[it->second].push_back(i);
    }
    for (size_t b = 0; b < d.fibers_.size(); ++b) {
      Point s = d.base_->cells()[b].sample_point();
      std::sort(d.fibers_[b].begin(), d.fibers_[b].end(), [&](size_t i, size_t j) {
        auto ki = detail::fiber_key(d.cells_[i], s), kj = detail::fiber_key(d.cells_[j], s);
        if (!(ki.first == kj.first)) return ki.first < kj.first;
        return ki.second < kj.second;
      });
    }
    return d;
  }

  size_t dim() const { return dim_; }
  const std::vector<LinearCell>& cells() const { return cells_; }
  const Decomposition& base() const { return *base_; }
  std::shared_ptr<const Decomposition> base_ptr() const { return base_; }
  bool has_base() const { return base_ != nullptr; }

  /* Stack of cell indices over base cell b, bottom to top. */
  const std::vector<size_t>& fiber(size_t b) const { return fibers_.at(b); }
  size_t base_index_of(size_t cell) const { return base_of_.at(cell); }
  /* Dim-1 cells sorted left to right. */
  const std::vector<size_t>& line_order() const { return order_; }

  /* Cached specialness certificate; set by the refinement engine, computed
   * lazily otherwise (see is_special in decompose.hpp). */
  int8_t special_cache() const { return special_.load(std::memory_order_relaxed); }
  void set_special_cache(bool value) const {
    special_.store(value ? 1 : 0, std::memory_order_relaxed);
  }

  Decomposition() = default;
  Decomposition(const Decomposition& o)
      : dim_(o.dim_),
        base_(o.base_),
        cells_(o.cells_),
        fibers_(o.fibers_),
        base_of_(o.base_of_),
        order_(o.order_),
        special_(o.special_.load(std::memory_order_relaxed)) {}
  Decomposition(Decomposition&& o) noexcept
      : dim_(o.dim_),
        base_(std::move(o.base_)),
        cells_(std::move(o.cells_)),
        fibers_(std::move(o.fibers_)),
        base_of_(std::move(o.base_of_)),
        order_(std::move(o.order_)),
        special_(o.special_.load(std::memory_order_relaxed)) {}
  Decomposition& operator=(const Decomposition& o) {
    if (this != &o) *this = Decomposition(o);
    return *this;
  }
  Decomposition& operator=(Decomposition&& o) noexcept {
    dim_ = o.dim_;
    base_ = std::move(o.base_);
    cells_ = std::move(o.cells_);
    fibers_ = std::move(o.fibers_);
    base_of_ = std::move(o.base_of_);
    order_ = std::move(o.order_);
    special_.store(o.special_.load(std::memory_order_relaxed), std::memory_order_relaxed);
    return *this;
  }

 private:
  size_t dim_ = 0;
  std::shared_ptr<const Decomposition> base_;
  std::vector<LinearCell> cells_;
  std::vector<std::vector<size_t>> fibers_;
  std::vector<size_t> base_of_;
  std::vector<size_t> order_;
  mutable std::atomic<int8_t> special_{-1};
};

struct DecompositionCheck {
  bool ok = true;
  std::string diagnostic;
};

/* Full partition + cylindricity verification of a raw cell list: the cells
 * must tile Q^n and their projections must recursively tile Q^(n-1). Wall
 * agreement along each fiber is decided by exact comparison on the base. */
inline DecompositionCheck is_decomposition(const std::vector<LinearCell>& cells, size_t n) {
  if (n == 0) return {false, "ambient dimension must be >= 1"};
  if (cells.empty()) return {false, "no cells"};
  for (const LinearCell& c : cells)
    if (c.ambient_dim() != n)
      return {false, "cell " + c.describe() + " has wrong ambient dimension"};

  if (n == 1) {
    std::vector<const LinearCell*> sorted;
    for (const LinearCell& c : cells) sorted.push_back(&c);
    std::sort(sorted.begin(), sorted.end(), [](const LinearCell* a, const LinearCell* b) {
      auto ka = detail::line_key(*a), kb = detail::line_key(*b);
      if (!(ka.first == kb.first)) return ka.first < kb.first;
      return ka.second < kb.second;
    });
    if (detail::line_key(*sorted.front()).first.is_finite())
      return {false, "line not covered below " + sorted.front()->describe()};
    for (size_t i = 0; i + 1 < sorted.size(); ++i) {
      const LinearCell& cur = *sorted[i];
      const LinearCell& nxt = *sorted[i + 1];
      ExtRational end = detail::line_key(cur).second;
      if (cur.kind() == LinearCell::Kind::Interval) {
        if (!(nxt.kind() == LinearCell::Kind::Point && end.is_finite() &&
              nxt.point_value() == end.value))
          return {false, "cells " + cur.describe() + " and " + nxt.describe() +
                             " do not meet cleanly"};
      } else {
        if (!(nxt.kind() == LinearCell::Kind::Interval && nxt.interval_lo() == end))
          return {false, "cells " + cur.describe() + " and " + nxt.describe() +
                             " do not meet cleanly"};
      }
    }
    if (detail::line_key(*sorted.back()).second.is_finite())
      return {false, "line not covered above " + sorted.back()->describe()};
    return {};
  }

  // derive the base level and recurse
  std::map<LinearCell, std::vector<const LinearCell*>, detail::CellLess> groups;
  for (const LinearCell& c : cells) {
    if (!c.is_inductive()) return {false, "cell " + c.describe() + " is not inductive"};
    groups[c.base()].push_back(&c);
  }
  std::vector<LinearCell> base_cells;
  for (const auto& [b, fiber] : groups) base_cells.push_back(b);
  DecompositionCheck rec = is_decomposition(base_cells, n - 1);
  if (!rec.ok) return {false, "projected cells: " + rec.diagnostic};

  for (auto& [b, fiber] : groups) {
    Point s = b.sample_point();
    std::sort(fiber.begin(), fiber.end(), [&](const LinearCell* x, const LinearCell* y) {
      auto kx = detail::fiber_key(*x, s), ky = detail::fiber_key(*y, s);
      if (!(kx.first == ky.first)) return kx.first < ky.first;
      return kx.second < ky.second;
    });
    const LinearCell* first = fiber.front();
    if (first->kind() != LinearCell::Kind::Band || first->band_lo().is_finite())
      return {false, "fiber over " + b.describe() + " not covered below " + first->describe()};
    for (size_t i = 0; i + 1 < fiber.size(); ++i) {
      const LinearCell& cur = *fiber[i];
      const LinearCell& nxt = *fiber[i + 1];
      bool ok;
      if (cur.kind() == LinearCell::Kind::Band) {
        ok = nxt.kind() == LinearCell::Kind::Graph && cur.band_hi().is_finite() &&
             compare_on_cell(cur.band_hi(), ExtAffine(nxt.graph_fn()), b) == CellOrder::EQ;
      } else {
        ok = nxt.kind() == LinearCell::Kind::Band && nxt.band_lo().is_finite() &&
             compare_on_cell(ExtAffine(cur.graph_fn()), nxt.band_lo(), b) == CellOrder::EQ;
      }
      if (!ok)
        return {false, "cells " + cur.describe() + " and " + nxt.describe() +
                           " do not stack cleanly over " + b.describe()};
    }
    const LinearCell* last = fiber.back();
    if (last->kind() != LinearCell::Kind::Band || last->band_hi().is_finite())
      return {false, "fiber over " + b.describe() + " not covered above " + last->describe()};
  }
  return {};
}

inline DecompositionCheck is_decomposition(const Decomposition& d) {
  return is_decomposition(d.cells(), d.dim());
}

/* True iff every cell of coarse equals the union of the fine cells inside
 * it. Candidate fine cells are located by sample membership and then
 * verified symbolically. */
inline bool refines(const Decomposition& fine, const Decomposition& coarse) {
  if (fine.dim() != coarse.dim()) throw DimensionError("refines: dimension mismatch");
  std::vector<Point> samples;
  samples.reserve(fine.cells().size());
  for (const LinearCell& c : fine.cells()) samples.push_back(c.sample_point());

  for (const LinearCell& big : coarse.cells()) {
    SemilinearSet big_set = big.formula();
    SemilinearSet covered(fine.dim());
    for (size_t i = 0; i < fine.cells().size(); ++i) {
      if (!big_set.member(samples[i])) continue;
      if (!subset_of(fine.cells()[i].formula(), big_set)) return false;
      covered.add_disjunct(fine.cells()[i].formula_system());
    }
    if (!subset_of(big_set, covered)) return false;
  }
  return true;
}

}  // namespace lincell
