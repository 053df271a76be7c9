#include "frft/optics.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "frft/errors.hpp"

namespace frft {
namespace {

void require_positive(double value, const char* name) {
  if (!(std::isfinite(value) && value > 0.0)) {
    throw std::invalid_argument(std::string(name) + " must be positive");
  }
}

double parse_double(const std::string& text, const std::string& line) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_system: bad number in line: " + line);
  }
  if (used != text.size() || !std::isfinite(value)) {
    throw std::invalid_argument("parse_system: bad number in line: " + line);
  }
  return value;
}

}  // namespace

Eigen::Matrix2d element_matrix(const OpticalElement& element, double wavelength,
                               double scale) {
  require_positive(wavelength, "wavelength");
  require_positive(scale, "scale");
  const double k = kTwoPi / wavelength;
  Eigen::Matrix2d m = Eigen::Matrix2d::Identity();
  switch (element.kind) {
    case OpticalElement::Kind::FreeSpace:
      if (!std::isfinite(element.value) || element.value < 0.0) {
        throw std::invalid_argument("free-space distance must be nonnegative");
      }
      m(0, 1) = element.value / (k * scale * scale);
      break;
    case OpticalElement::Kind::ThinLens:
      if (!std::isfinite(element.value) || element.value == 0.0) {
        throw std::invalid_argument("focal length must be finite and nonzero");
      }
      m(1, 0) = -k * scale * scale / element.value;
      break;
  }
  return m;
}

Eigen::Matrix2d compose(const OpticalSystem& system) {
  if (system.elements.empty()) {
    throw std::invalid_argument("compose: system has no elements");
  }
  Eigen::Matrix2d total = Eigen::Matrix2d::Identity();
  for (const OpticalElement& element : system.elements) {
    total = element_matrix(element, system.wavelength, system.scale) * total;
  }
  return total;
}

FrftOrder match_frft(const Eigen::Matrix2d& m) {
  const double a = m(0, 0);
  const double b = m(0, 1);
  const double c = m(1, 0);
  const double d = m(1, 1);
  const double residual_ad = std::abs(a - d);
  const double residual_bc = std::abs(b + c);
  const double residual_unit = std::abs(a * a + b * b - 1.0);
  const double tol = 1e-9;
  if (residual_ad > tol || residual_bc > tol || residual_unit > tol) {
    throw NotAnFrft(
        "match_frft: ray matrix is not a phase-space rotation (|a-d| = " +
            std::to_string(residual_ad) + ", |b+c| = " +
            std::to_string(residual_bc) + ", |a^2+b^2-1| = " +
            std::to_string(residual_unit) + ")",
        residual_ad, residual_bc, residual_unit);
  }
  return FrftOrder(std::atan2(b, a));
}

Type1Design type1_design(double f, FrftOrder alpha) {
  require_positive(f, "focal length");
  const double a = alpha.radians();
  if (!(a > 0.0 && a < kPi)) {
    throw OrderOutOfRange(
        "type1_design: order " + std::to_string(a) +
        " is outside the open interval (0, pi)");
  }
  const double half_sin = std::sin(0.5 * a);
  return {2.0 * f * half_sin * half_sin, f * std::sin(a)};
}

FreeSpaceFrft free_space_frft(double z, double curvature_radius,
                              double wavelength) {
  require_positive(z, "propagation distance");
  require_positive(wavelength, "wavelength");
  if (!std::isfinite(curvature_radius) || curvature_radius == 0.0) {
    throw std::invalid_argument("curvature radius must be finite and nonzero");
  }
  const double g = 1.0 - z / curvature_radius;
  if (std::abs(g) >= 1.0) {
    throw DegenerateGeometry(
        "free_space_frft: |1 - z/R| = " + std::to_string(std::abs(g)) +
        " leaves no confined transform (need < 1)");
  }
  const double order = std::acos(g);
  const double scale =
      std::sqrt(z * wavelength / kTwoPi) / std::pow(1.0 - g * g, 0.25);
  return {FrftOrder(order), scale};
}

double scale_per_meter(double f_prime, double wavelength) {
  require_positive(f_prime, "scaled focal length");
  require_positive(wavelength, "wavelength");
  return std::sqrt(kTwoPi / (wavelength * f_prime));
}

FrftRealization make_frft_realization(FrftOrder order, double f_prime,
                                      double wavelength) {
  return {order, f_prime, scale_per_meter(f_prime, wavelength)};
}

OpticalSystem parse_system(std::istream& in) {
  OpticalSystem system{0.0, 0.0, {}};
  bool have_wavelength = false;
  bool have_scale = false;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first)) {
      continue;  // blank or comment-only line
    }

    std::string rest;
    if (first == "lens" || first == "space") {
      std::string arg, extra;
      if (!(tokens >> arg) || (tokens >> extra)) {
        throw std::invalid_argument(
            "parse_system: expected exactly one argument in line: " + line);
      }
      const std::string prefix = first == "lens" ? "f=" : "z=";
      if (arg.rfind(prefix, 0) != 0) {
        throw std::invalid_argument("parse_system: expected " + prefix +
                                    "<value> in line: " + line);
      }
      if (!have_wavelength || !have_scale) {
        throw std::invalid_argument(
            "parse_system: wavelength and scale must precede elements");
      }
      const double value = parse_double(arg.substr(prefix.size()), line);
      system.elements.push_back(first == "lens"
                                    ? OpticalElement::thin_lens(value)
                                    : OpticalElement::free_space(value));
    } else if (first.rfind("wavelength=", 0) == 0 && !(tokens >> rest)) {
      system.wavelength = parse_double(first.substr(11), line);
      have_wavelength = true;
    } else if (first.rfind("scale=", 0) == 0 && !(tokens >> rest)) {
      system.scale = parse_double(first.substr(6), line);
      have_scale = true;
    } else {
      throw std::invalid_argument("parse_system: unrecognized line: " + line);
    }
  }
  if (!have_wavelength || !have_scale) {
    throw std::invalid_argument(
        "parse_system: missing wavelength= or scale= header");
  }
  if (system.elements.empty()) {
    throw std::invalid_argument("parse_system: no elements");
  }
  require_positive(system.wavelength, "wavelength");
  require_positive(system.scale, "scale");
  return system;
}

OpticalSystem parse_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("parse_system_file: cannot open " + path);
  }
  return parse_system(in);
}

}  // namespace frft
