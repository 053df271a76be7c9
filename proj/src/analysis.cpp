#include "frft/analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "frft/engine.hpp"
#include "frft/errors.hpp"

namespace frft {
namespace {

struct FitState {
  double amplitude;
  double mean;
  double variance;
  double offset;
};

double cost_of(const FitState& p, const Eigen::VectorXd& x,
               const Eigen::VectorXd& y, Eigen::VectorXd& residual) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double d = x[i] - p.mean;
    residual[i] =
        p.amplitude * std::exp(-0.5 * d * d / p.variance) + p.offset - y[i];
  }
  return residual.squaredNorm();
}

}  // namespace

GaussianFit fit_gaussian(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const Eigen::Index n = x.size();
  if (y.size() != n) {
    throw std::invalid_argument("fit_gaussian: size mismatch");
  }
  if (n < 8) {
    throw std::invalid_argument("fit_gaussian: needs at least 8 samples");
  }
  if (!x.allFinite() || !y.allFinite()) {
    throw std::invalid_argument("fit_gaussian: nonfinite samples");
  }
  const double y_max = y.maxCoeff();
  const double y_min = y.minCoeff();
  if (y_max - y_min < 1e-12 * std::max(std::abs(y_max), 1e-300)) {
    throw FitDegenerate("fit_gaussian: profile is flat");
  }
  const double span = x.maxCoeff() - x.minCoeff();
  if (!(span > 0.0)) {
    throw std::invalid_argument("fit_gaussian: degenerate abscissa");
  }
  const double var_floor = 1e-15 * span * span;

  // Moment-based start: treat y - min as a weight over x.
  FitState p;
  p.offset = std::max(y_min, 0.0);
  p.amplitude = y_max - p.offset;
  const Eigen::ArrayXd w = (y.array() - y_min).max(0.0);
  const double w_sum = w.sum();
  p.mean = (w * x.array()).sum() / w_sum;
  const double var0 = (w * (x.array() - p.mean).square()).sum() / w_sum;
  p.variance = std::max(var0, var_floor);

  // Step size relative to each parameter's scale; the floors keep a
  // parameter pinned at zero (typically the offset) from masking
  // convergence.
  const double y_scale = std::max(std::abs(y_max), std::abs(y_min));
  const auto step_rel = [&](const Eigen::Vector4d& delta,
                            const FitState& at) {
    return std::max(
        {std::abs(delta[0]) / (std::abs(at.amplitude) + 1e-6 * y_scale),
         std::abs(delta[1]) / (std::abs(at.mean) + 1e-6 * span),
         std::abs(delta[2]) / (at.variance + 1e-6 * span * span),
         std::abs(delta[3]) / (std::abs(at.offset) + 1e-6 * y_scale)});
  };

  Eigen::VectorXd residual(n), trial_residual(n);
  double cost = cost_of(p, x, y, residual);
  double lambda = 1e-3;

  Eigen::MatrixXd jac(n, 4);
  for (int iter = 0; iter < 200; ++iter) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d = x[i] - p.mean;
      const double e = std::exp(-0.5 * d * d / p.variance);
      jac(i, 0) = e;
      jac(i, 1) = p.amplitude * e * d / p.variance;
      jac(i, 2) = p.amplitude * e * d * d / (2.0 * p.variance * p.variance);
      jac(i, 3) = 1.0;
    }
    const Eigen::Matrix4d jtj = jac.transpose() * jac;
    const Eigen::Vector4d jtr = jac.transpose() * residual;

    bool stepped = false;
    while (!stepped) {
      Eigen::Matrix4d damped = jtj;
      for (int k = 0; k < 4; ++k) {
        damped(k, k) += lambda * std::max(jtj(k, k), 1e-30);
      }
      const Eigen::Vector4d delta = damped.ldlt().solve(-jtr);

      FitState trial = p;
      trial.amplitude += delta[0];
      trial.mean += delta[1];
      trial.variance = std::max(trial.variance + delta[2], var_floor);
      trial.offset = std::max(trial.offset + delta[3], 0.0);

      const double trial_cost = cost_of(trial, x, y, trial_residual);
      if (trial_cost < cost) {
        const double rel = step_rel(delta, p);
        p = trial;
        cost = trial_cost;
        residual.swap(trial_residual);
        lambda /= 3.0;
        stepped = true;
        if (rel < 1e-10) {
          iter = 200;  // converged
        }
      } else {
        // A rejected step that is already negligible means the parameters sit
        // at a local minimum; pushing the damping further would only stall.
        if (step_rel(delta, p) < 1e-10) {
          iter = 200;  // converged
          stepped = true;
        } else {
          lambda *= 10.0;
          if (lambda > 1e12) {
            throw FitDegenerate("fit_gaussian: damping diverged");
          }
        }
      }
    }
  }

  if (!(p.amplitude > 0.0) || !(p.variance > 0.0)) {
    throw FitDegenerate("fit_gaussian: collapsed to a non-Gaussian shape");
  }
  return {p.amplitude, p.mean, p.variance, p.offset,
          std::sqrt(cost / static_cast<double>(n))};
}

GaussianFit fit_gaussian(const ConditionalProfile& profile) {
  return fit_gaussian(profile.axis.coords(), profile.values);
}

std::vector<VarianceTableRow> variance_table(
    const DoubleGaussianParams& params,
    const std::vector<std::pair<FrftOrder, FrftOrder>>& scenarios,
    double slit_width, const VarianceTableOptions& options) {
  if (options.grid_n < 8 || !(options.extent > 0.0)) {
    throw std::invalid_argument("variance_table: bad grid options");
  }
  const SampledAxis axis(options.grid_n, options.extent / options.grid_n);
  const JointAmplitude state = build_double_gaussian(params, axis, axis);

  std::vector<VarianceTableRow> rows;
  rows.reserve(scenarios.size());
  for (const auto& [alpha, beta] : scenarios) {
    const JointAmplitude moved = joint_frft(state, alpha, beta, options.path);
    const JointDensity density = joint_density(moved);
    const GaussianFit scan2 =
        fit_gaussian(conditional_profile(density, 1, 0.0, slit_width));
    const GaussianFit scan1 =
        fit_gaussian(conditional_profile(density, 2, 0.0, slit_width));
    rows.push_back({alpha, beta, scan2.variance, scan1.variance});
  }
  return rows;
}

EprFromVariances epr_from_variances(double var_rho, double var_q) {
  if (!(std::isfinite(var_rho) && var_rho >= 0.0) ||
      !(std::isfinite(var_q) && var_q >= 0.0)) {
    throw std::invalid_argument(
        "epr_from_variances: variances must be nonnegative");
  }
  const double product = var_rho * var_q;
  return {product, product < 0.25};
}

}  // namespace frft
