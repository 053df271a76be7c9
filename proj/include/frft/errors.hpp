#ifndef FRFT_ERRORS_HPP
#define FRFT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace frft {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Order too close to a multiple of pi for the oscillatory kernel.
struct DegenerateOrder : Error {
  using Error::Error;
};

/// Grid spacing cannot represent the kernel chirp on the fast path.
struct GridTooCoarse : Error {
  using Error::Error;
};

/// Grid fails a state-specific extent or spacing bound.
struct GridInadequate : Error {
  using Error::Error;
};

/// Requested coordinate lies outside the sampled axis.
struct OutOfGrid : Error {
  using Error::Error;
};

/// Conditioning coordinate has numerically zero variance.
struct SingularConditioning : Error {
  using Error::Error;
};

/// Ray matrix is not a fractional Fourier rotation; carries the residuals.
struct NotAnFrft : Error {
  NotAnFrft(const std::string& msg, double ad, double bc, double unit)
      : Error(msg), residual_ad(ad), residual_bc(bc), residual_unit(unit) {}
  double residual_ad;    // |a - d|
  double residual_bc;    // |b + c|
  double residual_unit;  // |a^2 + b^2 - 1|
};

/// Design formula valid only for orders strictly inside (0, pi).
struct OrderOutOfRange : Error {
  using Error::Error;
};

/// Free-space geometry outside the |1 - z/R| < 1 regime.
struct DegenerateGeometry : Error {
  using Error::Error;
};

/// Profile too flat to fit, or the fit diverged.
struct FitDegenerate : Error {
  using Error::Error;
};

}  // namespace frft

#endif
