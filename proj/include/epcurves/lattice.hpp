#pragma once

// LLL reduction, integer kernels and certified minimal polynomials.

#include "epcurves/lattice/algebraic.hpp"
#include "epcurves/lattice/lll.hpp"
