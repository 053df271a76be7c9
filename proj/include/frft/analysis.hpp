#ifndef FRFT_ANALYSIS_HPP
#define FRFT_ANALYSIS_HPP

#include <utility>
#include <vector>

#include "frft/engine.hpp"
#include "frft/gaussian_model.hpp"
#include "frft/grid.hpp"
#include "frft/twophoton.hpp"

namespace frft {

struct GaussianFit {
  double amplitude;  // > 0
  double mean;
  double variance;   // > 0
  double offset;     // >= 0
  double rms_residual;
};

/// Fit amplitude * exp(-(x - mean)^2 / (2 variance)) + offset by damped
/// Gauss-Newton with moment-based initialization. Deterministic, no
/// restarts. Needs >= 8 samples; throws FitDegenerate for flat input
/// (max - min < 1e-12 * max) or a diverging fit.
GaussianFit fit_gaussian(const Eigen::VectorXd& x, const Eigen::VectorXd& y);
GaussianFit fit_gaussian(const ConditionalProfile& profile);

struct VarianceTableRow {
  FrftOrder alpha;
  FrftOrder beta;
  double var_rho2_given_rho1;  // fitted, photon 1 held at rho = 0
  double var_rho1_given_rho2;  // fitted, photon 2 held at rho = 0
};

struct VarianceTableOptions {
  int grid_n = 3072;
  double extent = 60.0;
  FrftPath path = FrftPath::Auto;
};

/// Simulated conditional-variance table: for each (alpha, beta) scenario,
/// build the double-Gaussian state, transform, slice at rho = 0 in both
/// directions with the given slit width, and fit.
std::vector<VarianceTableRow> variance_table(
    const DoubleGaussianParams& params,
    const std::vector<std::pair<FrftOrder, FrftOrder>>& scenarios,
    double slit_width, const VarianceTableOptions& options = {});

struct EprFromVariances {
  double product;
  bool violated;  // product < 1/4, strictly
};

/// Inequality check on externally measured conditional variances.
EprFromVariances epr_from_variances(double var_rho, double var_q);

}  // namespace frft

#endif
