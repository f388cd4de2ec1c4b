#pragma once

#include "borel/numeric.hpp"

namespace borel {

/// log Gamma(x) for real x > 0 at the working precision.
///
/// Stirling's series is summed once the argument exceeds a precision-dependent
/// threshold (the optimally truncated remainder is about exp(-2 pi x)); smaller
/// arguments are promoted with Gamma(x) = Gamma(x + k) / (x (x+1) ... (x+k-1)).
/// Evaluated with guard bits and rounded once.
BigReal log_gamma(const BigReal& x);

/// Gamma(x) for real x > 0.
BigReal gamma(const BigReal& x);

/// Exact Bernoulli number B_n.
ExactRational bernoulli(int n);

}  // namespace borel
