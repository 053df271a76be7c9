#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "frft/engine.hpp"
#include "frft/errors.hpp"
#include "oracles.hpp"

using namespace frft;

namespace {

ComplexField1D random_superposition(const SampledAxis& axis, int max_mode,
                                    std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(axis.n);
  for (int n = 0; n <= max_mode; ++n) {
    acc += std::complex<double>(unit(rng), unit(rng)) *
           hermite_gauss(n, axis).samples;
  }
  ComplexField1D field{axis, acc};
  field.samples /= field.norm();
  return field;
}

double rel_err(const Eigen::VectorXcd& got, const Eigen::VectorXcd& want) {
  return (got - want).norm() / want.norm();
}

}  // namespace

TEST_CASE("kernel value matches pinned references") {
  const std::complex<double> k = kernel_value(FrftOrder(kPi / 4), 1.0, 1.0);
  CHECK(k.real() == doctest::Approx(0.32817460928682396).epsilon(1e-12));
  CHECK(k.imag() == doctest::Approx(-0.3426083841045298).epsilon(1e-12));

  // At the Fourier order the kernel at the origin is the plain 1/sqrt(2 pi).
  const std::complex<double> f = kernel_value(FrftOrder(kPi / 2), 0.0, 0.0);
  CHECK(f.real() == doctest::Approx(0.3989422804014327).epsilon(1e-12));
  CHECK(std::abs(f.imag()) < 1e-15);
}

TEST_CASE("kernel amplitude stays on the principal branch over both half-ranges") {
  for (double alpha : {0.3, 1.2, 2.8, 3.5, 4.7, 6.0}) {
    for (double x : {-1.3, 0.4, 2.0}) {
      for (double y : {-0.7, 1.1}) {
        const std::complex<double> got = kernel_value(FrftOrder(alpha), x, y);
        const std::complex<double> want = oracle::kernel(alpha, x, y);
        CHECK(std::abs(got - want) <= 1e-12 * std::abs(want));
      }
    }
  }
}

TEST_CASE("kernel matrix is the kernel times the quadrature weight") {
  const SampledAxis axis(16, 0.5);
  const Eigen::MatrixXcd m = frft_kernel_matrix(FrftOrder(1.1), axis);
  REQUIRE(m.rows() == 16);
  REQUIRE(m.cols() == 16);
  for (int i : {0, 7, 15}) {
    for (int j : {3, 8}) {
      const std::complex<double> want =
          kernel_value(FrftOrder(1.1), axis.coord(i), axis.coord(j)) *
          axis.spacing;
      CHECK(std::abs(m(i, j) - want) <= 1e-15);
    }
  }
}

TEST_CASE("dense transform equals direct quadrature") {
  const SampledAxis axis(96, 16.0 / 96);
  std::mt19937 rng(7101);
  const ComplexField1D field = random_superposition(axis, 6, rng);
  for (double alpha : {0.8, 2.0, 3.7, 5.4}) {
    const ComplexField1D got =
        frft_1d(field, FrftOrder(alpha), FrftPath::DenseKernel);
    CHECK(got.axis == axis);
    CHECK(rel_err(got.samples, oracle::frft(axis, field.samples, alpha)) <=
          1e-12);
  }
}

TEST_CASE("chirp path agrees with the dense path") {
  const SampledAxis axis(256, 20.0 / 256);
  std::mt19937 rng(7102);
  const ComplexField1D field = random_superposition(axis, 10, rng);
  for (double alpha : {0.9, 2.3, 4.0, 5.9}) {
    const ComplexField1D dense =
        frft_1d(field, FrftOrder(alpha), FrftPath::DenseKernel);
    const ComplexField1D chirp =
        frft_1d(field, FrftOrder(alpha), FrftPath::ChirpFft);
    CHECK(rel_err(chirp.samples, dense.samples) <= 1e-10);
  }
}

TEST_CASE("fourier order reduces to the centered unitary transform") {
  const int n = 128;
  const SampledAxis axis(n, std::sqrt(2.0 * kPi / n));
  std::mt19937 rng(7103);
  const ComplexField1D field = random_superposition(axis, 8, rng);
  const ComplexField1D got = frft_1d(field, FrftOrder(kPi / 2));
  CHECK(rel_err(got.samples, oracle::fourier(axis, field.samples)) <= 1e-10);
}

TEST_CASE("identity and parity orders take the exact shortcuts") {
  const SampledAxis axis(64, 0.25);
  std::mt19937 rng(7104);
  const ComplexField1D field = random_superposition(axis, 5, rng);

  for (double alpha : {0.0, 2.0 * kPi - 1e-12, 5e-10}) {
    const ComplexField1D out = frft_1d(field, FrftOrder(alpha));
    CHECK((out.samples - field.samples).cwiseAbs().maxCoeff() == 0.0);
  }
  for (double alpha : {kPi, kPi + 5e-10}) {
    const ComplexField1D out = frft_1d(field, FrftOrder(alpha));
    const Eigen::VectorXcd reversed = field.samples.reverse();
    CHECK((out.samples - reversed).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("orders in the degenerate band are rejected") {
  const SampledAxis axis(64, 0.25);
  std::mt19937 rng(7105);
  const ComplexField1D field = random_superposition(axis, 5, rng);
  CHECK_THROWS_AS(frft_1d(field, FrftOrder(1e-7)), DegenerateOrder);
  CHECK_THROWS_AS(frft_1d(field, FrftOrder(kPi + 1e-7)), DegenerateOrder);
  CHECK_THROWS_AS(frft_1d(field, FrftOrder(2.0 * kPi - 1e-7)), DegenerateOrder);
  CHECK_THROWS_AS(kernel_value(FrftOrder(kPi), 0.3, 0.1), DegenerateOrder);
}

TEST_CASE("explicit chirp path refuses a grid that undersamples the kernel") {
  const SampledAxis axis(64, 1.0);
  std::mt19937 rng(7106);
  const ComplexField1D field = random_superposition(axis, 3, rng);
  // spacing^2 |cot 0.2| = 4.93 > pi.
  CHECK_THROWS_AS(frft_1d(field, FrftOrder(0.2), FrftPath::ChirpFft),
                  GridTooCoarse);
  ComplexField1D out{axis, Eigen::VectorXcd()};
  CHECK_NOTHROW(out = frft_1d(field, FrftOrder(0.2), FrftPath::Auto));
  const ComplexField1D dense =
      frft_1d(field, FrftOrder(0.2), FrftPath::DenseKernel);
  CHECK(rel_err(out.samples, dense.samples) <= 1e-12);
}

TEST_CASE("hermite gauss modes match the explicit low-order formulas") {
  const SampledAxis axis(128, 0.125);
  const double root4pi = std::pow(kPi, 0.25);
  for (int i : {10, 40, 64, 100}) {
    const double x = axis.coord(i);
    const double base = std::exp(-0.5 * x * x) / root4pi;
    CHECK(std::abs(hermite_gauss(0, axis).samples[i].real() - base) <= 1e-14);
    CHECK(std::abs(hermite_gauss(1, axis).samples[i].real() -
                   std::sqrt(2.0) * x * base) <= 1e-13);
    CHECK(std::abs(hermite_gauss(2, axis).samples[i].real() -
                   (2.0 * x * x - 1.0) / std::sqrt(2.0) * base) <= 1e-13);
    CHECK(std::abs(hermite_gauss(3, axis).samples[i].real() -
                   (2.0 * x * x * x - 3.0 * x) / std::sqrt(3.0) * base) <=
          1e-12);
  }
  CHECK_THROWS_AS(hermite_gauss(-1, axis), std::invalid_argument);
  CHECK_THROWS_AS(hermite_gauss(51, axis), std::invalid_argument);
}

TEST_CASE("hermite gauss modes are transform eigenfunctions") {
  const SampledAxis axis(512, 26.0 / 512);
  for (double alpha : {0.8, 3.9}) {
    for (int n : {0, 1, 5}) {
      const ComplexField1D mode = hermite_gauss(n, axis);
      const ComplexField1D out = frft_1d(mode, FrftOrder(alpha));
      const Eigen::VectorXcd want =
          std::exp(std::complex<double>(0.0, -n * alpha)) * mode.samples;
      CHECK(rel_err(out.samples, want) <= 1e-9);
    }
  }
}

TEST_CASE("orders compose additively") {
  const SampledAxis axis(512, 24.0 / 512);
  std::mt19937 rng(7107);
  const ComplexField1D field = random_superposition(axis, 12, rng);
  const double a = 1.1, b = 2.5;
  const ComplexField1D chained =
      frft_1d(frft_1d(field, FrftOrder(a)), FrftOrder(b));
  const ComplexField1D direct = frft_1d(field, FrftOrder(a + b));
  CHECK(rel_err(chained.samples, direct.samples) <= 1e-9);
}

TEST_CASE("transform preserves the norm and inverts through the complement") {
  const SampledAxis axis(256, 20.0 / 256);
  std::mt19937 rng(7108);
  const ComplexField1D field = random_superposition(axis, 10, rng);
  const double alpha = 2.0;
  const ComplexField1D out = frft_1d(field, FrftOrder(alpha));
  CHECK(std::abs(out.norm() - field.norm()) <= 1e-10);
  const ComplexField1D back = frft_1d(out, FrftOrder(2.0 * kPi - alpha));
  CHECK(rel_err(back.samples, field.samples) <= 1e-9);
}

TEST_CASE("joint transform equals the double quadrature on distinct axes") {
  const SampledAxis axis1(40, 0.4);
  const SampledAxis axis2(48, 0.3);
  std::mt19937 rng(7109);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::MatrixXcd samples(axis1.n, axis2.n);
  for (int i = 0; i < axis1.n; ++i) {
    for (int j = 0; j < axis2.n; ++j) {
      samples(i, j) = std::complex<double>(unit(rng), unit(rng)) *
                      std::exp(-0.05 * (axis1.coord(i) * axis1.coord(i) +
                                        axis2.coord(j) * axis2.coord(j)));
    }
  }
  const JointAmplitude state{axis1, axis2, samples};
  const double a = 1.3, b = 4.1;
  const JointAmplitude got =
      joint_frft(state, FrftOrder(a), FrftOrder(b), FrftPath::DenseKernel);
  const Eigen::MatrixXcd want =
      oracle::joint_frft(axis1, axis2, samples, a, b);
  CHECK((got.samples - want).norm() <= 1e-12 * want.norm());

  // Degenerate orders combine with generic ones.
  const JointAmplitude par =
      joint_frft(state, FrftOrder(kPi), FrftOrder(0.0), FrftPath::Auto);
  CHECK((par.samples - samples.colwise().reverse()).norm() == 0.0);
}

TEST_CASE("adequate extent covers the wider of the two widths") {
  CHECK(adequate_extent(2.0) == doctest::Approx(16.0));
  CHECK(adequate_extent(2.0, 5.0) == doctest::Approx(40.0));
}
