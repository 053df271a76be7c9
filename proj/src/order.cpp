#include "frft/order.hpp"

#include <cmath>
#include <stdexcept>

namespace frft {

FrftOrder::FrftOrder(double radians) {
  if (!std::isfinite(radians)) {
    throw std::invalid_argument("FrftOrder: order must be finite");
  }
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;  // rounding of fmod(x) + 2*pi for tiny negative x
  radians_ = r;
}

double FrftOrder::distance_to(double angle) const {
  double d = std::abs(radians_ - FrftOrder(angle).radians());
  return std::min(d, kTwoPi - d);
}

}  // namespace frft
