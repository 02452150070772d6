#pragma once

// Umbrella header: exact computation with discrete generating series in the
// falling-factorial basis, for solutions of linear difference equations.

#include "dgs/rational.hpp"
#include "dgs/multi_index.hpp"
#include "dgs/polynomial.hpp"
#include "dgs/series.hpp"
#include "dgs/operators.hpp"
#include "dgs/equation.hpp"
#include "dgs/annihilator.hpp"
#include "dgs/functional_equations.hpp"
#include "dgs/serialization.hpp"
