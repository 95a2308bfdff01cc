#pragma once

/// Everything in one include.

#include "fractal/acceptance.hpp"
#include "fractal/classical.hpp"
#include "fractal/expression.hpp"
#include "fractal/falpha.hpp"
#include "fractal/figures.hpp"
#include "fractal/laplace.hpp"
#include "fractal/operators.hpp"
#include "fractal/output.hpp"
#include "fractal/quadrature.hpp"
#include "fractal/solutions.hpp"
#include "fractal/special_functions.hpp"
#include "fractal/staircase.hpp"
