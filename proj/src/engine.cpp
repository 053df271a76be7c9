#include "frft/engine.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/FFT>

#include "frft/errors.hpp"

namespace frft {
namespace {

using std::complex;

// a_alpha = sqrt(1 - i cot a) / sqrt(2 pi), principal branch: the phase is
// a/2 - pi/4 on (0, pi) and a/2 - 3 pi/4 on (pi, 2 pi). This branch keeps the
// ground Hermite-Gauss mode exactly invariant on both half-ranges and makes
// orders add modulo 2 pi; a constant-sign slip on the lower half-range would
// break both.
complex<double> amplitude(double a) {
  const double s = std::sin(a);
  const double phase = 0.5 * a - (s > 0.0 ? 0.25 : 0.75) * kPi;
  return std::polar(1.0 / std::sqrt(kTwoPi * std::abs(s)), phase);
}

enum class Shortcut { None, Identity, Parity };

Shortcut degenerate_shortcut(FrftOrder order) {
  const double a = order.radians();
  if (a <= kDegenerateSnap || kTwoPi - a <= kDegenerateSnap) {
    return Shortcut::Identity;
  }
  if (std::abs(a - kPi) <= kDegenerateSnap) {
    return Shortcut::Parity;
  }
  return Shortcut::None;
}

void require_nondegenerate(FrftOrder order, const std::string& who) {
  const double s = std::abs(std::sin(order.radians()));
  if (s < kMinSinAlpha) {
    throw DegenerateOrder(who + ": |sin| = " + std::to_string(s) +
                          " at order " + std::to_string(order.radians()) +
                          " is below " + std::to_string(kMinSinAlpha));
  }
}

bool chirp_criterion_ok(const SampledAxis& axis, double a) {
  const double cot = std::cos(a) / std::sin(a);
  return axis.spacing * axis.spacing * std::abs(cot) <= kPi;
}

// Chirp-multiply, FFT-convolve, chirp-multiply factorization of the kernel:
//   K(rho, rho') = a_a exp(-i t rho^2/2) exp(i (rho-rho')^2 / (2 sin a))
//                      exp(-i t rho'^2/2),  t = tan(a/2),
// valid because cot a = 1/sin a - tan(a/2). On one axis the differences
// rho_i - rho_j = (i - j) * spacing make the middle factor a Toeplitz
// convolution, evaluated circularly at size m >= 2n - 1 with the (even) chirp
// wrapped around the end of the buffer.
struct ChirpPlan {
  int n;
  int m;
  Eigen::VectorXcd pre;    // exp(-i t rho^2/2) * spacing (quadrature weight)
  Eigen::VectorXcd post;   // a_a * exp(-i t rho^2/2)
  Eigen::VectorXcd chirp_fft;
  Eigen::FFT<double> fft;
  Eigen::VectorXcd padded, spectrum, conv;

  ChirpPlan(const SampledAxis& axis, FrftOrder order) : n(axis.n) {
    m = 1;
    while (m < 2 * n - 1) m <<= 1;

    const double a = order.radians();
    const double s = std::sin(a);
    const double t = std::tan(0.5 * a);
    const complex<double> amp = amplitude(a);

    pre.resize(n);
    post.resize(n);
    for (int i = 0; i < n; ++i) {
      const double rho = axis.coord(i);
      const complex<double> c = std::polar(1.0, -0.5 * t * rho * rho);
      pre[i] = c * axis.spacing;
      post[i] = amp * c;
    }

    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(m);
    for (int k = 0; k < n; ++k) {
      const double u = k * axis.spacing;
      b[k] = std::polar(1.0, u * u / (2.0 * s));
      if (k > 0) b[m - k] = b[k];
    }
    fft.fwd(chirp_fft, b);

    padded.resize(m);
    spectrum.resize(m);
    conv.resize(m);
  }

  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    padded.setZero();
    padded.head(n) = pre.cwiseProduct(in);
    fft.fwd(spectrum, padded);
    spectrum.array() *= chirp_fft.array();
    fft.inv(conv, spectrum);
    out = post.cwiseProduct(conv.head(n));
  }
};

FrftPath resolve_path(FrftPath path, const SampledAxis& axis, double a,
                      const std::string& who) {
  const bool fast_ok = chirp_criterion_ok(axis, a);
  if (path == FrftPath::Auto) {
    return fast_ok ? FrftPath::ChirpFft : FrftPath::DenseKernel;
  }
  if (path == FrftPath::ChirpFft && !fast_ok) {
    const double cot = std::abs(std::cos(a) / std::sin(a));
    throw GridTooCoarse(who + ": spacing^2 * |cot| = " +
                        std::to_string(axis.spacing * axis.spacing * cot) +
                        " exceeds pi; refine the grid or use the dense path");
  }
  return path;
}

// In-place transform of every column (rho1 lines) or every row (rho2 lines).
void transform_lines(Eigen::MatrixXcd& samples, const SampledAxis& axis,
                     FrftOrder order, FrftPath path, bool columns,
                     const std::string& who) {
  switch (degenerate_shortcut(order)) {
    case Shortcut::Identity:
      return;
    case Shortcut::Parity:
      if (columns) {
        samples = samples.colwise().reverse().eval();
      } else {
        samples = samples.rowwise().reverse().eval();
      }
      return;
    case Shortcut::None:
      break;
  }
  require_nondegenerate(order, who);
  const FrftPath chosen = resolve_path(path, axis, order.radians(), who);

  if (chosen == FrftPath::ChirpFft) {
    ChirpPlan plan(axis, order);
    Eigen::VectorXcd line(axis.n), out(axis.n);
    const Eigen::Index count = columns ? samples.cols() : samples.rows();
    for (Eigen::Index k = 0; k < count; ++k) {
      if (columns) {
        line = samples.col(k);
      } else {
        line = samples.row(k).transpose();
      }
      plan.apply(line, out);
      if (columns) {
        samples.col(k) = out;
      } else {
        samples.row(k) = out.transpose();
      }
    }
  } else {
    const Eigen::MatrixXcd kernel = frft_kernel_matrix(order, axis);
    if (columns) {
      samples = (kernel * samples).eval();
    } else {
      samples = (samples * kernel.transpose()).eval();
    }
  }
}

}  // namespace

complex<double> kernel_value(FrftOrder order, double rho, double rho_prime) {
  require_nondegenerate(order, "kernel_value");
  const double a = order.radians();
  const double s = std::sin(a);
  const double cot = std::cos(a) / s;
  const double phase =
      0.5 * cot * (rho * rho + rho_prime * rho_prime) - rho * rho_prime / s;
  return amplitude(a) * std::polar(1.0, phase);
}

Eigen::MatrixXcd frft_kernel_matrix(FrftOrder order, const SampledAxis& axis) {
  require_nondegenerate(order, "frft_kernel_matrix");
  const double a = order.radians();
  const double s = std::sin(a);
  const double cot = std::cos(a) / s;
  const Eigen::VectorXd rho = axis.coords();
  const complex<double> amp = amplitude(a) * axis.spacing;

  Eigen::MatrixXcd kernel(axis.n, axis.n);
  for (int j = 0; j < axis.n; ++j) {
    const double rj = rho[j];
    const double half_cot_rj2 = 0.5 * cot * rj * rj;
    for (int i = 0; i < axis.n; ++i) {
      const double ri = rho[i];
      kernel(i, j) =
          amp * std::polar(1.0, 0.5 * cot * ri * ri + half_cot_rj2 -
                                    ri * rj / s);
    }
  }
  return kernel;
}

ComplexField1D frft_1d(const ComplexField1D& field, FrftOrder order,
                       FrftPath path) {
  if (field.samples.size() != field.axis.n) {
    throw std::invalid_argument("frft_1d: sample count does not match axis");
  }
  switch (degenerate_shortcut(order)) {
    case Shortcut::Identity:
      return field;
    case Shortcut::Parity:
      return {field.axis, field.samples.reverse()};
    case Shortcut::None:
      break;
  }
  require_nondegenerate(order, "frft_1d");
  const FrftPath chosen =
      resolve_path(path, field.axis, order.radians(), "frft_1d");

  if (chosen == FrftPath::ChirpFft) {
    ChirpPlan plan(field.axis, order);
    ComplexField1D out{field.axis, Eigen::VectorXcd(field.axis.n)};
    plan.apply(field.samples, out.samples);
    return out;
  }
  return {field.axis, frft_kernel_matrix(order, field.axis) * field.samples};
}

ComplexField1D hermite_gauss(int n, const SampledAxis& axis) {
  if (n < 0 || n > 50) {
    throw std::invalid_argument("hermite_gauss: mode index must be in [0, 50]");
  }
  const Eigen::ArrayXd rho = axis.coords().array();
  Eigen::ArrayXd prev = Eigen::ArrayXd::Zero(axis.n);
  Eigen::ArrayXd cur = std::pow(kPi, -0.25) * (-0.5 * rho.square()).exp();
  for (int k = 1; k <= n; ++k) {
    const Eigen::ArrayXd next =
        std::sqrt(2.0 / k) * rho * cur - std::sqrt((k - 1.0) / k) * prev;
    prev = cur;
    cur = next;
  }
  ComplexField1D out{axis, Eigen::VectorXcd(axis.n)};
  out.samples = cur.cast<complex<double>>().matrix();
  return out;
}

JointAmplitude joint_frft(const JointAmplitude& state, FrftOrder alpha,
                          FrftOrder beta, FrftPath path) {
  if (state.samples.rows() != state.axis1.n ||
      state.samples.cols() != state.axis2.n) {
    throw std::invalid_argument("joint_frft: sample matrix does not match axes");
  }
  JointAmplitude out = state;
  transform_lines(out.samples, out.axis1, alpha, path, true,
                  "joint_frft(alpha)");
  transform_lines(out.samples, out.axis2, beta, path, false,
                  "joint_frft(beta)");
  return out;
}

double adequate_extent(double input_rms, double rotated_rms) {
  if (!(input_rms >= 0.0) || !(rotated_rms >= 0.0)) {
    throw std::invalid_argument("adequate_extent: widths must be nonnegative");
  }
  return 8.0 * std::max(input_rms, rotated_rms);
}

}  // namespace frft
