#include "selftest.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "frft/analysis.hpp"
#include "frft/engine.hpp"
#include "frft/gaussian_model.hpp"
#include "frft/optics.hpp"
#include "frft/twophoton.hpp"

namespace frftsim {
namespace {

using frft::ComplexField1D;
using frft::FrftOrder;
using frft::hermite_gauss;
using frft::kPi;
using frft::kTwoPi;
using frft::SampledAxis;

struct Checker {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
  void expect_le(double value, double bound, const std::string& what) {
    std::ostringstream msg;
    msg << what << " = " << value << " exceeds " << bound;
    expect(value <= bound, msg.str());
  }
};

ComplexField1D random_superposition(const SampledAxis& axis, int max_mode,
                                    std::mt19937& rng) {
  std::normal_distribution<double> gauss;
  ComplexField1D field{axis, Eigen::VectorXcd::Zero(axis.n)};
  for (int m = 0; m <= max_mode; ++m) {
    const std::complex<double> c(gauss(rng), gauss(rng));
    field.samples += c * hermite_gauss(m, axis).samples;
  }
  field.samples /= field.norm();
  return field;
}

// Orders too close to 0, pi or 2*pi are not representable on these grids:
// the kernel's cross term oscillates at 1/|sin|, and once the grid cannot
// carry that frequency an aliased image of the field lands inside the
// window. The usable band scales like extent^2 / n; 0.2 leaves a 2x margin
// for the 512-point grids used here.
double nondegenerate_order(std::mt19937& rng) {
  std::uniform_real_distribution<double> uni(0.05, kTwoPi - 0.05);
  while (true) {
    const double a = uni(rng);
    if (std::abs(std::sin(a)) > 0.2) return a;
  }
}

double rel_l2(const Eigen::VectorXcd& got, const Eigen::VectorXcd& want) {
  return (got - want).norm() / want.norm();
}

void group_additivity(Checker& check, FaultMode) {
  const SampledAxis axis(512, 20.0 / 512);
  std::mt19937 rng(2024001);
  for (int trial = 0; trial < 20 && check.ok; ++trial) {
    const ComplexField1D field = random_superposition(axis, 10, rng);
    double a = 0.0, b = 0.0;
    do {
      a = nondegenerate_order(rng);
      b = nondegenerate_order(rng);
    } while (std::abs(std::sin(a + b)) <= 0.2);
    const ComplexField1D two_step =
        frft::frft_1d(frft::frft_1d(field, FrftOrder(a)), FrftOrder(b));
    const ComplexField1D one_step =
        frft::frft_1d(field, FrftOrder(a) + FrftOrder(b));
    check.expect_le(rel_l2(two_step.samples, one_step.samples), 1e-8,
                    "additivity residual");
  }
}

void group_unitarity(Checker& check, FaultMode) {
  const SampledAxis axis(512, 20.0 / 512);
  std::mt19937 rng(2024002);
  for (int trial = 0; trial < 10 && check.ok; ++trial) {
    const ComplexField1D field = random_superposition(axis, 15, rng);
    const double a = nondegenerate_order(rng);
    const ComplexField1D out = frft::frft_1d(field, FrftOrder(a));
    check.expect_le(std::abs(out.norm() - field.norm()), 1e-10,
                    "norm drift");
    const ComplexField1D back = frft::frft_1d(out, FrftOrder(kTwoPi - a));
    check.expect_le(rel_l2(back.samples, field.samples), 1e-8,
                    "inversion residual");
  }
  // Both numerical paths must agree where both are valid.
  const SampledAxis small(256, 16.0 / 256);
  std::mt19937 rng2(2024003);
  const ComplexField1D field = random_superposition(small, 10, rng2);
  for (const double a : {0.9, 2.2, 3.9, 5.3}) {
    const ComplexField1D dense =
        frft::frft_1d(field, FrftOrder(a), frft::FrftPath::DenseKernel);
    const ComplexField1D fast =
        frft::frft_1d(field, FrftOrder(a), frft::FrftPath::ChirpFft);
    check.expect_le(rel_l2(fast.samples, dense.samples), 1e-10,
                    "path disagreement");
  }
}

void group_eigenfunctions(Checker& check, FaultMode fault) {
  const SampledAxis axis(512, 20.0 / 512);
  for (const double a : {0.7, 2.0, 4.0, 5.5}) {
    for (int n = 0; n <= 8; ++n) {
      const ComplexField1D mode = hermite_gauss(n, axis);
      ComplexField1D out = frft::frft_1d(mode, FrftOrder(a));
      if (fault == FaultMode::KernelPhase) {
        out.samples *= std::polar(1.0, 0.5 * kPi - a);
      }
      const Eigen::VectorXcd want =
          std::polar(1.0, -n * a) * mode.samples;
      check.expect_le((out.samples - want).norm() / mode.samples.norm(), 1e-9,
                      "eigenvalue residual");
      if (!check.ok) return;
    }
  }
}

void group_lohmann(Checker& check, FaultMode) {
  const double wavelength = 810e-9;
  for (const double a : {0.25 * kPi, 0.5 * kPi, 0.75 * kPi, 2.5}) {
    const frft::Type1Design d = frft::type1_design(0.25, FrftOrder(a));
    const double s = 1.0 / frft::scale_per_meter(d.f_prime, wavelength);
    const frft::OpticalSystem sys{
        wavelength,
        s,
        {frft::OpticalElement::free_space(d.z),
         frft::OpticalElement::thin_lens(0.25),
         frft::OpticalElement::free_space(d.z)}};
    const FrftOrder matched = frft::match_frft(frft::compose(sys));
    check.expect_le(matched.distance_to(a), 1e-9, "single-stage order error");
  }

  // Two stages sharing one scale add their orders.
  const double a1 = 0.75 * kPi;
  const double a2 = 0.5 * kPi;
  const frft::Type1Design d1 = frft::type1_design(0.25, FrftOrder(a1));
  const double f2 = d1.f_prime / std::sin(a2);
  const frft::Type1Design d2 = frft::type1_design(f2, FrftOrder(a2));
  const double s = 1.0 / frft::scale_per_meter(d1.f_prime, wavelength);
  const frft::OpticalSystem chain{
      wavelength,
      s,
      {frft::OpticalElement::free_space(d1.z),
       frft::OpticalElement::thin_lens(0.25),
       frft::OpticalElement::free_space(d1.z),
       frft::OpticalElement::free_space(d2.z),
       frft::OpticalElement::thin_lens(f2),
       frft::OpticalElement::free_space(d2.z)}};
  const FrftOrder matched = frft::match_frft(frft::compose(chain));
  check.expect_le(matched.distance_to(a1 + a2), 1e-9,
                  "two-stage order error");

  // Free space between spherical caps: caps act as thin lenses of focal R.
  const double z = 0.3, radius = 0.5;
  const frft::FreeSpaceFrft fs = frft::free_space_frft(z, radius, wavelength);
  const frft::OpticalSystem caps{
      wavelength,
      fs.scale,
      {frft::OpticalElement::thin_lens(radius),
       frft::OpticalElement::free_space(z),
       frft::OpticalElement::thin_lens(radius)}};
  const FrftOrder capped = frft::match_frft(frft::compose(caps));
  check.expect_le(capped.distance_to(fs.order.radians()), 1e-9,
                  "spherical-cap order error");
}

Eigen::Matrix4d rot4(double a, double b) {
  Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
  r(0, 0) = std::cos(a);
  r(0, 1) = std::sin(a);
  r(1, 0) = -std::sin(a);
  r(1, 1) = std::cos(a);
  r(2, 2) = std::cos(b);
  r(2, 3) = std::sin(b);
  r(3, 2) = -std::sin(b);
  r(3, 3) = std::cos(b);
  return r;
}

void group_no_correlation(Checker& check, FaultMode fault) {
  const frft::DoubleGaussianParams paramsets[] = {{4.076, 0.067}, {2.0, 0.5}};
  const double alphas[] = {0.75 * kPi, 1.0, 0.5 * kPi};
  for (const auto& params : paramsets) {
    const frft::BiphotonMoments initial = frft::initial_moments(params);
    for (const double a : alphas) {
      for (const FrftOrder beta :
           frft::no_correlation_beta(params, FrftOrder(a))) {
        const frft::BiphotonMoments moved =
            frft::propagate_moments(initial, FrftOrder(a), beta);
        double cov = moved.cov_rho1_rho2();
        if (fault == FaultMode::CovTranspose) {
          const Eigen::Matrix4d r = rot4(a, beta.radians());
          cov = (r * initial.cov() * r)(0, 2);
        }
        const double scale =
            std::sqrt(moved.var_rho1() * moved.var_rho2());
        check.expect_le(std::abs(cov), 1e-12 * scale,
                        "residual covariance at a solved order");
        if (!check.ok) return;
      }
    }
  }
}

void group_analytic_numeric(Checker& check, FaultMode) {
  const frft::DoubleGaussianParams params(2.0, 0.25);
  // Extent must hold the momentum-side width (about 2, so 13 is 6 sigma);
  // tighter windows truncate the rotated state and the norm drifts.
  const SampledAxis axis(512, 26.0 / 512);
  const frft::JointAmplitude state =
      frft::build_double_gaussian(params, axis, axis);
  const frft::BiphotonMoments initial = frft::initial_moments(params);
  const double pairs[][2] = {{0.5 * kPi, 0.5 * kPi}, {0.7, 5.6}};
  for (const auto& pair : pairs) {
    const FrftOrder a(pair[0]), b(pair[1]);
    const frft::JointAmplitude moved = frft::joint_frft(state, a, b);
    check.expect_le(std::abs(moved.norm() - 1.0), 1e-9, "norm drift");
    const frft::JointDensity density = frft::joint_density(moved);
    const Eigen::MatrixXd analytic = frft::gaussian_joint_density(
        frft::propagate_moments(initial, a, b), axis, axis);
    check.expect_le((density.values - analytic).cwiseAbs().maxCoeff(), 1e-5,
                    "analytic/numeric density gap");
    if (!check.ok) return;
  }
}

}  // namespace

std::vector<GroupResult> run_selftest(FaultMode fault) {
  const std::pair<const char*, std::function<void(Checker&, FaultMode)>>
      groups[] = {
          {"additivity", group_additivity},
          {"unitarity", group_unitarity},
          {"eigenfunctions", group_eigenfunctions},
          {"lohmann", group_lohmann},
          {"no_correlation", group_no_correlation},
          {"analytic_numeric", group_analytic_numeric},
      };
  std::vector<GroupResult> results;
  for (const auto& [name, body] : groups) {
    Checker check;
    try {
      body(check, fault);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    results.push_back({name, check.ok, check.detail});
  }
  return results;
}

}  // namespace frftsim
