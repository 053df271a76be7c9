#include "frft/gaussian_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "frft/errors.hpp"

namespace frft {

DoubleGaussianParams::DoubleGaussianParams(double sigma_plus,
                                           double sigma_minus)
    : sigma_plus(sigma_plus), sigma_minus(sigma_minus) {
  if (!(std::isfinite(sigma_plus) && sigma_plus > 0.0) ||
      !(std::isfinite(sigma_minus) && sigma_minus > 0.0)) {
    throw std::invalid_argument("DoubleGaussianParams: widths must be positive");
  }
}

BiphotonMoments::BiphotonMoments(const Eigen::Matrix4d& cov) {
  if (!cov.allFinite()) {
    throw std::invalid_argument("BiphotonMoments: nonfinite entries");
  }
  cov_ = 0.5 * (cov + cov.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(cov_);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("BiphotonMoments: not positive definite");
  }
  const double slack = 0.25 - 1e-9;
  if (var_rho1() * var_q1() < slack || var_rho2() * var_q2() < slack) {
    throw std::invalid_argument(
        "BiphotonMoments: uncertainty product below 1/4");
  }
}

BiphotonMoments initial_moments(const DoubleGaussianParams& params) {
  const double sp2 = params.sigma_plus * params.sigma_plus;
  const double sm2 = params.sigma_minus * params.sigma_minus;
  const double var_rho = 0.25 * (sp2 + sm2);
  const double cov_rho = 0.25 * (sp2 - sm2);
  const double var_q = 0.25 * (1.0 / sp2 + 1.0 / sm2);
  const double cov_q = 0.25 * (1.0 / sp2 - 1.0 / sm2);

  Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
  cov(0, 0) = cov(2, 2) = var_rho;
  cov(1, 1) = cov(3, 3) = var_q;
  cov(0, 2) = cov(2, 0) = cov_rho;
  cov(1, 3) = cov(3, 1) = cov_q;
  return BiphotonMoments(cov);
}

BiphotonMoments propagate_moments(const BiphotonMoments& moments,
                                  FrftOrder alpha, FrftOrder beta) {
  auto rot2 = [](double a) {
    Eigen::Matrix2d r;
    r << std::cos(a), std::sin(a), -std::sin(a), std::cos(a);
    return r;
  };
  Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
  r.block<2, 2>(0, 0) = rot2(alpha.radians());
  r.block<2, 2>(2, 2) = rot2(beta.radians());
  return BiphotonMoments(r * moments.cov() * r.transpose());
}

CorrelationVerdict position_correlation(const BiphotonMoments& moments,
                                        const VerdictThresholds& thresholds) {
  const double r = moments.cov_rho1_rho2() /
                   std::sqrt(moments.var_rho1() * moments.var_rho2());
  CorrelationKind kind = CorrelationKind::Uncorrelated;
  if (r >= thresholds.correlated) {
    kind = CorrelationKind::Correlated;
  } else if (r <= thresholds.anticorrelated) {
    kind = CorrelationKind::Anticorrelated;
  }
  return {kind, r};
}

std::vector<FrftOrder> no_correlation_beta(const DoubleGaussianParams& params,
                                           FrftOrder alpha) {
  const double p = params.sigma_plus * params.sigma_plus *
                   params.sigma_minus * params.sigma_minus;
  const double a = alpha.radians();
  // The transformed covariance is proportional to
  // cos(a) cos(b) - sin(a) sin(b) / p, so the roots satisfy
  // tan(b) = p * cot(a); atan2 keeps the sin(a) = 0 case exact.
  const double b0 = std::atan2(p * std::cos(a), std::sin(a));
  std::vector<FrftOrder> roots{FrftOrder(b0), FrftOrder(b0 + kPi)};
  std::sort(roots.begin(), roots.end(),
            [](const FrftOrder& x, const FrftOrder& y) {
              return x.radians() < y.radians();
            });
  return roots;
}

double conditional_variance(const BiphotonMoments& moments,
                            ConditionalTarget target) {
  const bool rho1 = target == ConditionalTarget::Rho1GivenRho2;
  const double var_a = rho1 ? moments.var_rho1() : moments.var_rho2();
  const double var_b = rho1 ? moments.var_rho2() : moments.var_rho1();
  const double cov = moments.cov_rho1_rho2();
  if (var_b < 1e-15) {
    throw SingularConditioning(
        "conditional_variance: conditioning variance " +
        std::to_string(var_b) + " is below 1e-15");
  }
  return var_a - cov * cov / var_b;
}

EprProduct epr_product(const DoubleGaussianParams& params, FrftOrder alpha,
                       FrftOrder beta) {
  const BiphotonMoments initial = initial_moments(params);
  const double near = conditional_variance(
      propagate_moments(initial, alpha, beta),
      ConditionalTarget::Rho1GivenRho2);
  const double far = conditional_variance(
      propagate_moments(initial, alpha + FrftOrder(0.5 * kPi),
                        beta + FrftOrder(0.5 * kPi)),
      ConditionalTarget::Rho1GivenRho2);
  const double product = near * far;
  return {product, product < 0.25};
}

Eigen::MatrixXd gaussian_joint_density(const BiphotonMoments& moments,
                                       const SampledAxis& axis1,
                                       const SampledAxis& axis2) {
  const double a = moments.var_rho1();
  const double b = moments.var_rho2();
  const double c = moments.cov_rho1_rho2();
  const double det = a * b - c * c;
  if (det <= 0.0) {
    throw SingularConditioning(
        "gaussian_joint_density: singular position covariance");
  }
  const double norm = 1.0 / (kTwoPi * std::sqrt(det));
  Eigen::MatrixXd density(axis1.n, axis2.n);
  for (int j = 0; j < axis2.n; ++j) {
    const double y = axis2.coord(j);
    for (int i = 0; i < axis1.n; ++i) {
      const double x = axis1.coord(i);
      const double quad = (b * x * x - 2.0 * c * x * y + a * y * y) / det;
      density(i, j) = norm * std::exp(-0.5 * quad);
    }
  }
  return density;
}

}  // namespace frft
