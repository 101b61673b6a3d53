#pragma once

namespace sptp {

/// Error function. Odd to the bit, and saturates to +-1 for |z| > 6 where
/// the tail erfc(6) ~ 2e-17 is below half an ulp of 1.
double erf(double z);

}  // namespace sptp
