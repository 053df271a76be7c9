#ifndef FRFT_ENGINE_HPP
#define FRFT_ENGINE_HPP

#include <complex>

#include "frft/grid.hpp"
#include "frft/order.hpp"

namespace frft {

// Fractional Fourier transform of order alpha, kernel
//   K_a(rho, rho') = a_a exp(i cot(a) (rho^2 + rho'^2) / 2 - i rho rho' / sin a)
// with the 1D amplitude
//   a_a = sqrt(1 - i cot a) / sqrt(2 pi)   (principal square root),
// i.e. |a_a| = 1 / sqrt(2 pi |sin a|) with phase a/2 - pi/4 for a in (0, pi)
// and a/2 - 3 pi/4 for a in (pi, 2 pi). This normalization makes the ground
// Hermite-Gauss mode exactly invariant and gives hermite_gauss(n) the
// eigenvalue exp(-i n a); at a = pi/2 the transform is the unitary Fourier
// transform. Orders compose additively modulo 2 pi and a = 0, pi degenerate to
// the identity and parity kernels.

/// Numerical strategy for frft_1d / joint_frft.
enum class FrftPath {
  DenseKernel,  // O(n^2) quadrature matrix apply, reference path
  ChirpFft,     // chirp-multiply / FFT-convolve / chirp-multiply, O(n log n)
  Auto,         // ChirpFft when the sampling criterion holds, else DenseKernel
};

/// Canonical orders within this distance of 0, pi or 2*pi snap to the exact
/// identity / parity shortcut.
inline constexpr double kDegenerateSnap = 1e-9;

/// Below this |sin alpha| the numerical kernel is rejected as degenerate.
inline constexpr double kMinSinAlpha = 1e-6;

/// Kernel value K_alpha(rho, rho'). Throws DegenerateOrder when
/// |sin alpha| < 1e-6.
std::complex<double> kernel_value(FrftOrder order, double rho,
                                  double rho_prime);

/// Dense quadrature matrix K with K(i,j) = K_alpha(rho_i, rho_j) * spacing,
/// so that the transform is a plain matrix-vector product.
Eigen::MatrixXcd frft_kernel_matrix(FrftOrder order, const SampledAxis& axis);

/// Transform a sampled field; the output lives on the same axis. Orders within
/// 1e-9 of 0 (or 2*pi) return a bit-identical copy, orders within 1e-9 of pi
/// return the sample-reversed copy, other orders with |sin alpha| < 1e-6 throw
/// DegenerateOrder. Explicitly requesting ChirpFft on a grid violating the
/// sampling criterion spacing^2 * |cot alpha| <= pi throws GridTooCoarse.
ComplexField1D frft_1d(const ComplexField1D& field, FrftOrder order,
                       FrftPath path = FrftPath::Auto);

/// Normalized Hermite-Gauss mode psi_n sampled on the axis, 0 <= n <= 50.
/// psi_0(rho) = pi^{-1/4} exp(-rho^2 / 2).
ComplexField1D hermite_gauss(int n, const SampledAxis& axis);

/// Apply order alpha along every rho1 line (columns fixed) and beta along
/// every rho2 line. The two passes commute to rounding.
JointAmplitude joint_frft(const JointAmplitude& state, FrftOrder alpha,
                          FrftOrder beta, FrftPath path = FrftPath::Auto);

/// Grid-sizing helper: extent needed to hold a field of the given rms width
/// through a transform whose output rms width is bounded by rotated_rms
/// (pass 0 when unknown). Not enforced anywhere, callers opt in.
double adequate_extent(double input_rms, double rotated_rms = 0.0);

}  // namespace frft

#endif
