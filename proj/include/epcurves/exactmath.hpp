#pragma once

// Exact integer/rational arithmetic, polynomials, Sturm root isolation and
// fraction-free linear algebra.

#include "epcurves/exactmath/matrix.hpp"
#include "epcurves/exactmath/poly.hpp"
#include "epcurves/exactmath/sturm.hpp"
#include "epcurves/exactmath/types.hpp"
