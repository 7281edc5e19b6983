// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "lincell/setops.hpp"

namespace lincell {

/* splitmix64: tiny deterministic generator with identical output on every
 * platform, which the seeded-instance contracts depend on. */
struct SplitMix64 {
  uint64_t state = 0;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /* Uniform-ish value in [0, bound); bound must be positive. */
  uint64_t below(uint64_t bound) { return next() % bound; }

  long integer_in(long lo, long hi) { return lo + static_cast<long>(below(hi - lo + 1)); }
};

/* Seed-determined DNF with at most max_atoms atoms and integer entries in
 * [-coef_bound, coef_bound]. All-zero coefficient rows are rerolled. */
inline SemilinearSet random_instance(uint64_t seed, size_t n, size_t max_atoms,
                                     long coef_bound) {
  SplitMix64 rng(seed);
  size_t disjuncts = 1 + rng.below(3);
  if (disjuncts > max_atoms) disjuncts = max_atoms > 0 ? max_atoms : 1;
  SemilinearSet out(n);
  size_t atoms_left = max_atoms;
  for (size_t d = 0; d < disjuncts; ++d) {
    size_t budget = atoms_left / (disjuncts - d);
    if (budget == 0) budget = 1;
    size_t count = 1 + rng.below(budget);
    if (count > atoms_left) count = atoms_left;
    ConjSystem sys(n);
    for (size_t k = 0; k < count; ++k) {
      AffineFunc f(std::vector<Rational>(n), Rational(rng.integer_in(-coef_bound, coef_bound)));
      bool nonzero = false;
      while (!nonzero) {
        for (size_t i = 0; i < n; ++i) {
          f.coef[i] = rng.integer_in(-coef_bound, coef_bound);
          if (f.coef[i] != 0) nonzero = true;
        }
      }
      uint64_t pick = rng.below(10);
      Rel rel = pick < 5 ? Rel::LT0 : pick < 9 ? Rel::LE0 : Rel::EQ0;
      sys.add(std::move(f), rel);
    }
    atoms_left -= count;
    out.disjuncts.push_back(std::move(sys));
    if (atoms_left == 0) break;
  }
  return out;
}

/* Interior of a random instance: open by construction, possibly empty. */
inline SemilinearSet random_open_instance(uint64_t seed, size_t n, size_t max_atoms,
                                          long coef_bound, const SetOpLimits& lim = {}) {
  return interior(random_instance(seed, n, max_atoms, coef_bound), lim);
}

}  // namespace lincell
