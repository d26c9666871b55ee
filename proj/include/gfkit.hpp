#pragma once

/**
 * gfkit — exact-arithmetic discovery of closed-form generating functions.
 *
 * Convenience umbrella: pulls in every module.  Individual headers under
 * gfkit/ can also be included on their own; each is self-contained.
 */

#include "gfkit/errors.hpp"
#include "gfkit/numeric.hpp"
#include "gfkit/fixed_decimal.hpp"
#include "gfkit/polynomial.hpp"
#include "gfkit/series.hpp"
#include "gfkit/linalg.hpp"
#include "gfkit/expression.hpp"
#include "gfkit/fit.hpp"
#include "gfkit/holonomic.hpp"
#include "gfkit/hypergeom.hpp"
#include "gfkit/lll.hpp"
#include "gfkit/algdep.hpp"
#include "gfkit/euler.hpp"
#include "gfkit/lookup.hpp"
#include "gfkit/bivariate.hpp"
#include "gfkit/format.hpp"
#include "gfkit/parse.hpp"
#include "gfkit/pipeline.hpp"
