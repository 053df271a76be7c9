#ifndef FRFT_GAUSSIAN_MODEL_HPP
#define FRFT_GAUSSIAN_MODEL_HPP

#include <vector>

#include "frft/grid.hpp"
#include "frft/order.hpp"

namespace frft {

/// Double-Gaussian two-photon state: the position amplitude factors into
/// exp(-(rho1+rho2)^2 / 4 sigma_plus^2) * exp(-(rho1-rho2)^2 / 4 sigma_minus^2)
/// so sigma_plus and sigma_minus are the rms widths of rho1 +- rho2.
struct DoubleGaussianParams {
  DoubleGaussianParams(double sigma_plus, double sigma_minus);
  double sigma_plus;
  double sigma_minus;
};

/// Second moments of the zero-mean state over (rho1, q1, rho2, q2).
/// Construction symmetrizes and validates: positive definite and
/// Var(rho_i) Var(q_i) >= 1/4 for each photon.
class BiphotonMoments {
 public:
  explicit BiphotonMoments(const Eigen::Matrix4d& cov);

  const Eigen::Matrix4d& cov() const { return cov_; }

  double var_rho1() const { return cov_(0, 0); }
  double var_q1() const { return cov_(1, 1); }
  double var_rho2() const { return cov_(2, 2); }
  double var_q2() const { return cov_(3, 3); }
  double cov_rho1_rho2() const { return cov_(0, 2); }
  double cov_q1_q2() const { return cov_(1, 3); }

 private:
  Eigen::Matrix4d cov_;
};

/// Moments of the fresh double-Gaussian state:
///   Var(rho_i) = (s+^2 + s-^2)/4,  Cov(rho1,rho2) = (s+^2 - s-^2)/4,
///   Var(q_i)   = (s+^-2 + s-^-2)/4, Cov(q1,q2)    = (s+^-2 - s-^-2)/4.
BiphotonMoments initial_moments(const DoubleGaussianParams& params);

/// Propagate through transforms of order alpha (photon 1) and beta (photon 2):
/// cov -> R cov R^T with R block-diagonal in the per-photon 2x2 rotations
/// [[cos, sin], [-sin, cos]].
BiphotonMoments propagate_moments(const BiphotonMoments& moments,
                                  FrftOrder alpha, FrftOrder beta);

enum class CorrelationKind { Correlated, Anticorrelated, Uncorrelated };

struct CorrelationVerdict {
  CorrelationKind kind;
  double r;  // Pearson coefficient of (rho1, rho2)
};

struct VerdictThresholds {
  double correlated = 0.5;      // kind = Correlated when r >= this
  double anticorrelated = -0.5; // kind = Anticorrelated when r <= this
};

CorrelationVerdict position_correlation(
    const BiphotonMoments& moments, const VerdictThresholds& thresholds = {});

/// All beta in [0, 2*pi) for which the position covariance vanishes after
/// propagation by (alpha, beta): tan(alpha) tan(beta) = sigma-^2 sigma+^2.
/// When tan(alpha) = 0 the covariance reduces to C cos(alpha) cos(beta) and
/// the solutions are the special pair {pi/2, 3*pi/2}.
std::vector<FrftOrder> no_correlation_beta(const DoubleGaussianParams& params,
                                           FrftOrder alpha);

enum class ConditionalTarget { Rho1GivenRho2, Rho2GivenRho1 };

/// Gaussian conditional variance Var(a) - Cov(a,b)^2 / Var(b). Throws
/// SingularConditioning when the conditioning variance is below 1e-15.
double conditional_variance(const BiphotonMoments& moments,
                            ConditionalTarget target);

struct EprProduct {
  double product;  // Delta^2(rho1|rho2) at (alpha, beta) times the same
                   // quantity at (alpha + pi/2, beta + pi/2)
  bool violated;   // product < 1/4, strictly
};

/// Conditional-variance product witnessing nonclassical correlations. The
/// momentum-side variance is obtained by shifting both orders by pi/2.
EprProduct epr_product(const DoubleGaussianParams& params, FrftOrder alpha,
                       FrftOrder beta);

/// Zero-mean Gaussian position density implied by the moments, sampled on a
/// tensor grid. Reference profile for cross-checking transformed states.
Eigen::MatrixXd gaussian_joint_density(const BiphotonMoments& moments,
                                       const SampledAxis& axis1,
                                       const SampledAxis& axis2);

}  // namespace frft

#endif
