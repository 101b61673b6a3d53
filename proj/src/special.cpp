#include "sptp/special.hpp"

#include <cmath>

namespace sptp {

double erf(double z) {
    const double magnitude = std::abs(z);
    const double value = magnitude > 6.0 ? 1.0 : std::erf(magnitude);
    return std::signbit(z) ? -value : value;
}

}  // namespace sptp
