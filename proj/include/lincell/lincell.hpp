// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lincell/affine.hpp"
#include "lincell/cell.hpp"
#include "lincell/decompose.hpp"
#include "lincell/decomposition.hpp"
#include "lincell/error.hpp"
#include "lincell/fourier_motzkin.hpp"
#include "lincell/grid.hpp"
#include "lincell/random.hpp"
#include "lincell/rational.hpp"
#include "lincell/semilinear.hpp"
#include "lincell/setops.hpp"
#include "lincell/star.hpp"

//! Exact cylindrical cell decompositions of Q^n, special refinements,
//! stars, stratification checks, and open-cell covers of open semilinear
//! sets, over arbitrary-precision rational arithmetic.
namespace lincell {}
