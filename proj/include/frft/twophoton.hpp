#ifndef FRFT_TWOPHOTON_HPP
#define FRFT_TWOPHOTON_HPP

#include "frft/gaussian_model.hpp"
#include "frft/grid.hpp"

namespace frft {

/// Pump-envelope times phase-matching state. The relative-coordinate profile
/// comes from G(q) = sqrt(2 L / (K pi^2)) sinc(L q^2 / 4K) with q in 1/m;
/// dimensionless momenta convert through q_phys = q / scale_s.
struct PumpSincParams {
  PumpSincParams(double sigma_pump, double crystal_length, double pump_k,
                 double scale_s);
  double sigma_pump;      // dimensionless rms width of rho1 + rho2
  double crystal_length;  // L, meters
  double pump_k;          // K = 2*pi / pump wavelength, 1/m
  double scale_s;         // meters per dimensionless unit
};

/// Position density |psi|^2 on the tensor grid; integrates to the squared
/// norm of the amplitude it came from.
struct JointDensity {
  SampledAxis axis1;
  SampledAxis axis2;
  Eigen::MatrixXd values;

  double integral() const;
};

/// Coincidence profile with one photon held (within a slit) at fixed_rho.
struct ConditionalProfile {
  int fixed_photon;   // 1 or 2
  double fixed_rho;   // snapped to the grid
  double slit_width;  // dimensionless boxcar width, 0 = raw slice
  SampledAxis axis;   // scanned coordinate
  Eigen::VectorXd values;  // normalized to unit area
};

/// Sample the double-Gaussian amplitude, normalized on the grid. Requires
/// extent >= 6 sigma_plus and spacing <= sigma_minus / 3 on both axes, else
/// GridInadequate naming the violated bound.
JointAmplitude build_double_gaussian(const DoubleGaussianParams& params,
                                     const SampledAxis& axis1,
                                     const SampledAxis& axis2);

/// Sample the pump-envelope times transformed-sinc amplitude, normalized on
/// the grid. The relative profile g is a numerical Fourier quadrature of G
/// over a momentum grid wide enough for every difference rho1 - rho2; both
/// axes must share one spacing.
JointAmplitude build_pump_sinc(const PumpSincParams& params,
                               const SampledAxis& axis1,
                               const SampledAxis& axis2);

/// Gaussian amplitude of matched rms that build_pump_sinc's relative profile
/// g^2 implies; a fitted stand-in for sigma_minus.
double pump_sinc_fitted_sigma_minus(const PumpSincParams& params,
                                    double spacing, double half_range);

JointDensity joint_density(const JointAmplitude& state);

/// Slice the density at the grid row/column nearest fixed_rho (photon 1 fixes
/// rows, photon 2 columns), boxcar-convolved over both the fixed and scanned
/// coordinates when slit_width > 0, normalized to unit area.
ConditionalProfile conditional_profile(const JointDensity& density,
                                       int fixed_photon, double fixed_rho,
                                       double slit_width = 0.0);

/// Detector slit width in dimensionless units: width_m * scale_per_m.
double slit_width_dimensionless(double width_m, double scale_per_m);

}  // namespace frft

#endif
