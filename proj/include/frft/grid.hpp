#ifndef FRFT_GRID_HPP
#define FRFT_GRID_HPP

#include <Eigen/Dense>

namespace frft {

/// Uniform sampling grid. Point i sits at center + (i - n/2) * spacing, so the
/// grid is symmetric about the center up to the usual one-sample parity offset
/// of even-length grids.
struct SampledAxis {
  SampledAxis(int n, double spacing, double center = 0.0);

  int n;
  double spacing;
  double center;

  double coord(int i) const { return center + (i - n / 2) * spacing; }
  double min() const { return coord(0); }
  double max() const { return coord(n - 1); }
  double extent() const { return n * spacing; }

  Eigen::VectorXd coords() const;

  /// Index of the grid point nearest to rho; throws OutOfGrid outside
  /// [min(), max()].
  int nearest_index(double rho) const;

  friend bool operator==(const SampledAxis& a, const SampledAxis& b) {
    return a.n == b.n && a.spacing == b.spacing && a.center == b.center;
  }
};

/// Complex field sampled on an axis; norm() is the discrete L2 norm
/// sqrt(sum |psi_i|^2 * spacing).
struct ComplexField1D {
  SampledAxis axis;
  Eigen::VectorXcd samples;

  double norm() const;
};

/// Two-photon amplitude on a tensor grid. Row index runs over axis1 (rho1),
/// column index over axis2 (rho2).
struct JointAmplitude {
  SampledAxis axis1;
  SampledAxis axis2;
  Eigen::MatrixXcd samples;

  double norm() const;
};

}  // namespace frft

#endif
