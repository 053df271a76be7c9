#include "frft/twophoton.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "frft/analysis.hpp"
#include "frft/errors.hpp"

namespace frft {
namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-8) {
    return 1.0 - x * x / 6.0;
  }
  return std::sin(x) / x;
}

// Relative-coordinate profile: cosine quadrature of the even phase-matching
// spectrum over dimensionless momenta up to the grid Nyquist rate.
Eigen::VectorXd relative_profile(const PumpSincParams& params, double spacing,
                                 const Eigen::VectorXd& diffs, int n_quad) {
  const double q_max = kPi / spacing;
  const double dq = q_max / n_quad;
  const double phys2 = 1.0 / (params.scale_s * params.scale_s);
  const double arg_scale =
      params.crystal_length * phys2 / (4.0 * params.pump_k);
  const double prefactor = std::sqrt(
      2.0 * params.crystal_length / (params.pump_k * kPi * kPi));

  Eigen::VectorXd q(n_quad), spectrum(n_quad);
  for (int k = 0; k < n_quad; ++k) {
    q[k] = (k + 0.5) * dq;
    spectrum[k] = prefactor * sinc(arg_scale * q[k] * q[k]);
  }

  Eigen::VectorXd g(diffs.size());
  for (Eigen::Index d = 0; d < diffs.size(); ++d) {
    double acc = 0.0;
    const double v = diffs[d];
    for (int k = 0; k < n_quad; ++k) {
      acc += spectrum[k] * std::cos(q[k] * v);
    }
    g[d] = acc * dq / kPi;
  }
  return g;
}

void normalize(JointAmplitude& state) {
  const double norm = state.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("joint amplitude has no finite norm");
  }
  state.samples /= norm;
}

}  // namespace

PumpSincParams::PumpSincParams(double sigma_pump, double crystal_length,
                               double pump_k, double scale_s)
    : sigma_pump(sigma_pump),
      crystal_length(crystal_length),
      pump_k(pump_k),
      scale_s(scale_s) {
  if (!(std::isfinite(sigma_pump) && sigma_pump > 0.0) ||
      !(std::isfinite(crystal_length) && crystal_length > 0.0) ||
      !(std::isfinite(pump_k) && pump_k > 0.0) ||
      !(std::isfinite(scale_s) && scale_s > 0.0)) {
    throw std::invalid_argument("PumpSincParams: all parameters must be positive");
  }
}

double JointDensity::integral() const {
  return values.sum() * axis1.spacing * axis2.spacing;
}

JointAmplitude build_double_gaussian(const DoubleGaussianParams& params,
                                     const SampledAxis& axis1,
                                     const SampledAxis& axis2) {
  const double min_extent = 6.0 * params.sigma_plus;
  const double max_spacing = params.sigma_minus / 3.0;
  for (const SampledAxis* axis : {&axis1, &axis2}) {
    if (axis->extent() < min_extent) {
      throw GridInadequate("build_double_gaussian: extent " +
                           std::to_string(axis->extent()) +
                           " is below 6 * sigma_plus = " +
                           std::to_string(min_extent));
    }
    if (axis->spacing > max_spacing) {
      throw GridInadequate("build_double_gaussian: spacing " +
                           std::to_string(axis->spacing) +
                           " exceeds sigma_minus / 3 = " +
                           std::to_string(max_spacing));
    }
  }

  const double cp = 0.25 / (params.sigma_plus * params.sigma_plus);
  const double cm = 0.25 / (params.sigma_minus * params.sigma_minus);
  JointAmplitude state{axis1, axis2,
                       Eigen::MatrixXcd(axis1.n, axis2.n)};
  for (int j = 0; j < axis2.n; ++j) {
    const double y = axis2.coord(j);
    for (int i = 0; i < axis1.n; ++i) {
      const double x = axis1.coord(i);
      const double sum = x + y;
      const double diff = x - y;
      state.samples(i, j) = std::exp(-cp * sum * sum - cm * diff * diff);
    }
  }
  normalize(state);
  return state;
}

JointAmplitude build_pump_sinc(const PumpSincParams& params,
                               const SampledAxis& axis1,
                               const SampledAxis& axis2) {
  if (std::abs(axis1.spacing - axis2.spacing) >
      1e-12 * std::max(axis1.spacing, axis2.spacing)) {
    throw GridInadequate("build_pump_sinc: axes must share one spacing");
  }
  const double spacing = axis1.spacing;

  // rho1 - rho2 takes n1 + n2 - 1 distinct values on equally spaced axes.
  const int n_diff = axis1.n + axis2.n - 1;
  Eigen::VectorXd diffs(n_diff);
  const double base = axis1.coord(0) - axis2.coord(axis2.n - 1);
  for (int d = 0; d < n_diff; ++d) {
    diffs[d] = base + d * spacing;
  }
  const int n_quad = std::max(4096, 4 * std::max(axis1.n, axis2.n));
  const Eigen::VectorXd g = relative_profile(params, spacing, diffs, n_quad);

  const double cp = 0.25 / (params.sigma_pump * params.sigma_pump);
  JointAmplitude state{axis1, axis2,
                       Eigen::MatrixXcd(axis1.n, axis2.n)};
  for (int j = 0; j < axis2.n; ++j) {
    const double y = axis2.coord(j);
    for (int i = 0; i < axis1.n; ++i) {
      const double x = axis1.coord(i);
      const double sum = x + y;
      // index of x - y in the difference set: (i - 0) - (j - (n2-1))
      state.samples(i, j) =
          std::exp(-cp * sum * sum) * g[i - j + axis2.n - 1];
    }
  }
  normalize(state);
  return state;
}

double pump_sinc_fitted_sigma_minus(const PumpSincParams& params,
                                    double spacing, double half_range) {
  if (!(spacing > 0.0) || !(half_range > 0.0)) {
    throw std::invalid_argument(
        "pump_sinc_fitted_sigma_minus: spacing and half_range must be positive");
  }
  const int half_n = static_cast<int>(std::floor(half_range / spacing));
  const int count = 2 * half_n + 1;
  if (count < 8) {
    throw std::invalid_argument(
        "pump_sinc_fitted_sigma_minus: fewer than 8 samples in half_range");
  }
  Eigen::VectorXd v(count);
  for (int i = 0; i < count; ++i) {
    v[i] = (i - half_n) * spacing;
  }
  const Eigen::VectorXd g =
      relative_profile(params, spacing, v, std::max(4096, 4 * count));
  const GaussianFit fit = fit_gaussian(v, g.array().square());
  return std::sqrt(fit.variance);
}

JointDensity joint_density(const JointAmplitude& state) {
  return {state.axis1, state.axis2, state.samples.cwiseAbs2()};
}

ConditionalProfile conditional_profile(const JointDensity& density,
                                       int fixed_photon, double fixed_rho,
                                       double slit_width) {
  if (fixed_photon != 1 && fixed_photon != 2) {
    throw std::invalid_argument("conditional_profile: fixed_photon must be 1 or 2");
  }
  if (!(slit_width >= 0.0) || !std::isfinite(slit_width)) {
    throw std::invalid_argument("conditional_profile: bad slit width");
  }
  const bool fix_rows = fixed_photon == 1;
  const SampledAxis& fixed_axis = fix_rows ? density.axis1 : density.axis2;
  const SampledAxis& scan_axis = fix_rows ? density.axis2 : density.axis1;

  const int center = fixed_axis.nearest_index(fixed_rho);
  const double snapped = fixed_axis.coord(center);
  const double half = 0.5 * slit_width;
  const double window = half + 1e-12 * std::max(1.0, half);

  // Sum density lines whose fixed coordinate sits inside the slit.
  Eigen::VectorXd gathered = Eigen::VectorXd::Zero(scan_axis.n);
  const int reach =
      static_cast<int>(std::floor(window / fixed_axis.spacing));
  for (int k = std::max(0, center - reach);
       k <= std::min(fixed_axis.n - 1, center + reach); ++k) {
    if (std::abs(fixed_axis.coord(k) - snapped) > window) continue;
    if (fix_rows) {
      gathered += density.values.row(k).transpose();
    } else {
      gathered += density.values.col(k);
    }
  }

  // Boxcar over the scanned coordinate with the same slit.
  Eigen::VectorXd out(scan_axis.n);
  const int scan_reach =
      static_cast<int>(std::floor(window / scan_axis.spacing));
  if (slit_width > 0.0 && scan_reach > 0) {
    for (int j = 0; j < scan_axis.n; ++j) {
      double acc = 0.0;
      for (int k = std::max(0, j - scan_reach);
           k <= std::min(scan_axis.n - 1, j + scan_reach); ++k) {
        acc += gathered[k];
      }
      out[j] = acc;
    }
  } else {
    out = gathered;
  }

  const double area = out.sum() * scan_axis.spacing;
  if (!(area > 0.0) || !std::isfinite(area)) {
    throw SingularConditioning(
        "conditional_profile: slice has no probability mass");
  }
  out /= area;
  return {fixed_photon, snapped, slit_width, scan_axis, out};
}

double slit_width_dimensionless(double width_m, double scale_per_m) {
  if (!(width_m >= 0.0) || !(scale_per_m > 0.0)) {
    throw std::invalid_argument(
        "slit_width_dimensionless: width must be nonnegative and scale positive");
  }
  return width_m * scale_per_m;
}

}  // namespace frft
