#pragma once

#include "schroflow/series.hpp"

namespace schroflow {

// Principal branch of the Lambert W function (inverse of w e^w) for
// x >= -1/e, by guarded Newton iteration to 1e-14 relative.
double lambertw_eval(double x);

// Taylor series sum_{n>=1} (-n)^(n-1)/n! x^n, convergent for |x| < 1/e.
TruncatedSeries<Rational> lambertw_series(int order);

}  // namespace schroflow
