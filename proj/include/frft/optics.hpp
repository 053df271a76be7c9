#ifndef FRFT_OPTICS_HPP
#define FRFT_OPTICS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "frft/order.hpp"

namespace frft {

// Paraxial ray matrices in the dimensionless coordinates (rho, q) with
// rho = rho_phys / s and q = s * q_phys. A transform of order alpha is the
// phase-space rotation [[cos a, sin a], [-sin a, cos a]].

struct OpticalElement {
  enum class Kind { FreeSpace, ThinLens };
  Kind kind;
  double value;  // propagation distance z or focal length f, meters

  static OpticalElement free_space(double z) {
    return {Kind::FreeSpace, z};
  }
  static OpticalElement thin_lens(double f) {
    return {Kind::ThinLens, f};
  }
};

/// Ordered element list, first element encountered first by the beam.
struct OpticalSystem {
  double wavelength;  // meters
  double scale;       // s, meters per dimensionless unit
  std::vector<OpticalElement> elements;
};

/// FreeSpace -> [[1, z/(k s^2)], [0, 1]], ThinLens -> [[1, 0], [-k s^2/f, 1]],
/// k = 2*pi / wavelength.
Eigen::Matrix2d element_matrix(const OpticalElement& element, double wavelength,
                               double scale);

/// Product of the element matrices, last element leftmost.
Eigen::Matrix2d compose(const OpticalSystem& system);

/// Recover the rotation order from a ray matrix: requires |a - d|, |b + c| and
/// |a^2 + b^2 - 1| all <= 1e-9, else NotAnFrft carrying the residuals.
FrftOrder match_frft(const Eigen::Matrix2d& m);

struct Type1Design {
  double z;        // input and output gap 2 f sin^2(alpha/2), meters
  double f_prime;  // scaled focal length f sin(alpha), meters
};

/// Symmetric lens system (space z, lens f, space z) realizing order alpha.
/// Valid for alpha strictly inside (0, pi); throws OrderOutOfRange otherwise.
Type1Design type1_design(double f, FrftOrder alpha);

struct FreeSpaceFrft {
  FrftOrder order;  // arccos(1 - z/R)
  double scale;     // s = sqrt(z/k) (1 - g^2)^{-1/4}, meters
};

/// Order and scale of free-space propagation between spherical caps of
/// curvature radius R. Throws DegenerateGeometry when |1 - z/R| >= 1.
FreeSpaceFrft free_space_frft(double z, double curvature_radius,
                              double wavelength);

/// Dimensionless-coordinate scale 1/s = sqrt(2*pi / (wavelength * f_prime)).
double scale_per_meter(double f_prime, double wavelength);

struct FrftRealization {
  FrftOrder order;
  double scaled_focal;   // f', meters
  double scale_per_m;    // sqrt(2*pi / (wavelength * f')), 1/m
};

FrftRealization make_frft_realization(FrftOrder order, double f_prime,
                                      double wavelength);

/// Parse a system description: header lines "wavelength=<m>" and "scale=<m>"
/// followed by "lens f=<m>" / "space z=<m>" lines in beam order. '#' starts a
/// comment. Throws std::invalid_argument on malformed input.
OpticalSystem parse_system(std::istream& in);
OpticalSystem parse_system_file(const std::string& path);

}  // namespace frft

#endif
