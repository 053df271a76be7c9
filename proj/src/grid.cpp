#include "frft/grid.hpp"

#include <cmath>
#include <string>

#include "frft/errors.hpp"

namespace frft {

SampledAxis::SampledAxis(int n_, double spacing_, double center_)
    : n(n_), spacing(spacing_), center(center_) {
  if (n < 8) {
    throw GridInadequate("SampledAxis: n = " + std::to_string(n) +
                         " is below the minimum of 8");
  }
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw GridInadequate("SampledAxis: spacing must be positive and finite");
  }
  if (!std::isfinite(center)) {
    throw GridInadequate("SampledAxis: center must be finite");
  }
}

Eigen::VectorXd SampledAxis::coords() const {
  Eigen::VectorXd r(n);
  for (int i = 0; i < n; ++i) r[i] = coord(i);
  return r;
}

int SampledAxis::nearest_index(double rho) const {
  if (!(rho >= min() && rho <= max())) {
    throw OutOfGrid("coordinate " + std::to_string(rho) + " outside grid [" +
                    std::to_string(min()) + ", " + std::to_string(max()) + "]");
  }
  int i = static_cast<int>(std::lround((rho - center) / spacing)) + n / 2;
  if (i < 0) i = 0;
  if (i >= n) i = n - 1;
  return i;
}

double ComplexField1D::norm() const {
  return std::sqrt(samples.squaredNorm() * axis.spacing);
}

double JointAmplitude::norm() const {
  return std::sqrt(samples.squaredNorm() * axis1.spacing * axis2.spacing);
}

}  // namespace frft
