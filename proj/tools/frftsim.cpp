#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "config.hpp"
#include "frft/analysis.hpp"
#include "frft/engine.hpp"
#include "frft/errors.hpp"
#include "frft/gaussian_model.hpp"
#include "frft/optics.hpp"
#include "frft/twophoton.hpp"
#include "selftest.hpp"

namespace {

using frftsim::ConfigError;
using frftsim::format17;
using frftsim::KeyValueStore;

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const frft::GridInadequate& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const frft::OutOfGrid& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const frft::OrderOutOfRange& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const frft::Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}

/// One subcommand's flag set, merged over an optional config file. Every flag
/// doubles as a config key of the same name; flags win.
struct OptionBag {
  CLI::App* cmd = nullptr;
  std::string config_path;
  std::map<std::string, std::string> storage;
  std::map<std::string, CLI::Option*> options;
  std::vector<std::string> fixed_rho;
  bool raw = false;

  explicit OptionBag(CLI::App* sub) : cmd(sub) {
    cmd->add_option("--config", config_path, "key = value config file");
  }

  void add(const std::string& key, const std::string& desc) {
    options[key] = cmd->add_option("--" + key, storage[key], desc);
  }
  void add_fixed_rho() {
    options["fixed-rho"] = cmd->add_option(
        "--fixed-rho", fixed_rho, "held detector coordinate (repeatable)");
  }
  void add_raw() {
    cmd->add_flag("--raw", raw, "also dump the density as raw 64-bit floats");
  }

  KeyValueStore merged() const {
    KeyValueStore store;
    if (!config_path.empty()) {
      store = frftsim::read_config_file(config_path);
    }
    for (const auto& [key, opt] : options) {
      if (key == "fixed-rho") {
        if (opt->count() > 0) {
          std::string joined;
          for (const auto& item : fixed_rho) {
            if (!joined.empty()) joined += ',';
            joined += item;
          }
          store.set(key, joined);
        }
      } else if (opt->count() > 0) {
        store.set(key, storage.at(key));
      }
    }
    if (raw) store.set("raw", "1");
    return store;
  }
};

frft::FrftPath parse_path(const std::string& name) {
  if (name == "auto") return frft::FrftPath::Auto;
  if (name == "dense") return frft::FrftPath::DenseKernel;
  if (name == "chirp") return frft::FrftPath::ChirpFft;
  throw ConfigError("path: expected auto, dense or chirp, got '" + name + "'");
}

int to_even_count(double extent, double spacing) {
  int n = static_cast<int>(std::ceil(extent / spacing));
  if (n % 2 != 0) ++n;
  return n;
}

/// Extent holding the state before and after rotation: 8 rms of the widest
/// marginal, and never below the builder's 6 sigma_plus bound.
double default_extent(const frft::DoubleGaussianParams& params, double alpha,
                      double beta) {
  const frft::BiphotonMoments m = frft::initial_moments(params);
  auto rotated_std = [&](double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return std::sqrt(c * c * m.var_rho1() + s * s * m.var_q1());
  };
  const double widest = std::max(rotated_std(alpha), rotated_std(beta));
  return std::max(6.12 * params.sigma_plus, 8.0 * widest);
}

struct Pipeline {
  frft::SampledAxis axis;
  frft::JointAmplitude transformed;
  std::string state_kind;
  double alpha = 0.0;
  double beta = 0.0;
  std::string path_name;
};

Pipeline build_pipeline(const KeyValueStore& cfg) {
  const std::string kind = cfg.get_or("state", "gaussian");
  const double alpha = frftsim::parse_angle(cfg.get_or("alpha", "0"), "alpha");
  const double beta = frftsim::parse_angle(cfg.get_or("beta", "0"), "beta");
  const std::string path_name = cfg.get_or("path", "auto");
  const frft::FrftPath path = parse_path(path_name);

  auto read_grid_n = [&](int fallback) {
    if (!cfg.has("grid-n")) return fallback;
    const long long n = frftsim::parse_integer(cfg.get("grid-n"), "grid-n");
    if (n < 1 || n > 100000) {
      throw ConfigError("grid-n: out of range '" + cfg.get("grid-n") + "'");
    }
    return static_cast<int>(n);
  };

  if (kind == "gaussian") {
    const frft::DoubleGaussianParams params(
        frftsim::parse_number(cfg.get("sigma-plus"), "sigma-plus"),
        frftsim::parse_number(cfg.get("sigma-minus"), "sigma-minus"));
    const double spacing = params.sigma_minus / 3.0;
    const double extent =
        cfg.has("extent") ? frftsim::parse_number(cfg.get("extent"), "extent")
                          : default_extent(params, alpha, beta);
    const int n = read_grid_n(to_even_count(extent, spacing));
    const frft::SampledAxis axis(n, extent / n);
    const frft::JointAmplitude state =
        frft::build_double_gaussian(params, axis, axis);
    return {axis,
            frft::joint_frft(state, frft::FrftOrder(alpha),
                             frft::FrftOrder(beta), path),
            kind, alpha, beta, path_name};
  }
  if (kind == "pump-sinc") {
    const double per_mm =
        frftsim::parse_number(cfg.get("scale-per-mm"), "scale-per-mm");
    if (per_mm <= 0.0) {
      throw ConfigError("scale-per-mm: must be positive");
    }
    const frft::PumpSincParams params(
        frftsim::parse_number(cfg.get("sigma-pump"), "sigma-pump"),
        frftsim::parse_number(cfg.get("crystal-length"), "crystal-length"),
        frftsim::parse_number(cfg.get("pump-k"), "pump-k"),
        1.0 / (per_mm * 1e3));
    const double extent = frftsim::parse_number(cfg.get("extent"), "extent");
    const int n = read_grid_n(-1);
    if (n < 0) throw ConfigError("missing required key: grid-n");
    const frft::SampledAxis axis(n, extent / n);
    const frft::JointAmplitude state =
        frft::build_pump_sinc(params, axis, axis);
    return {axis,
            frft::joint_frft(state, frft::FrftOrder(alpha),
                             frft::FrftOrder(beta), path),
            kind, alpha, beta, path_name};
  }
  throw ConfigError("state: expected gaussian or pump-sinc, got '" + kind +
                    "'");
}

std::filesystem::path prepare_out_dir(const KeyValueStore& cfg) {
  const std::string dir = cfg.get_or("out", ".");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw ConfigError("out: cannot create directory '" + dir + "'");
  }
  return dir;
}

std::ofstream open_out(const std::filesystem::path& path, bool binary) {
  std::ofstream out(path,
                    binary ? std::ios::binary | std::ios::out : std::ios::out);
  if (!out) {
    throw ConfigError("out: cannot write " + path.string());
  }
  return out;
}

void write_report(const std::filesystem::path& path,
                  const std::vector<std::pair<std::string, std::string>>&
                      lines) {
  std::ofstream out = open_out(path, false);
  for (const auto& [key, value] : lines) {
    out << key << '=' << value << '\n';
  }
}

struct DensityCorrelation {
  double r;
  std::string kind;
};

DensityCorrelation density_correlation(const frft::JointDensity& density) {
  const Eigen::VectorXd c1 = density.axis1.coords();
  const Eigen::VectorXd c2 = density.axis2.coords();
  const Eigen::VectorXd row_mass = density.values.rowwise().sum();
  const Eigen::VectorXd col_mass = density.values.colwise().sum();
  const double total = row_mass.sum();
  const double mean1 = row_mass.dot(c1) / total;
  const double mean2 = col_mass.dot(c2) / total;
  const Eigen::VectorXd d1 = c1.array() - mean1;
  const Eigen::VectorXd d2 = c2.array() - mean2;
  const double var1 = row_mass.dot(d1.cwiseProduct(d1)) / total;
  const double var2 = col_mass.dot(d2.cwiseProduct(d2)) / total;
  const double cov = d1.dot(density.values * d2) / total;
  const double r = cov / std::sqrt(var1 * var2);
  std::string kind = "Uncorrelated";
  if (r >= 0.5) {
    kind = "Correlated";
  } else if (r <= -0.5) {
    kind = "Anticorrelated";
  }
  return {r, kind};
}

void append_pipeline_keys(
    std::vector<std::pair<std::string, std::string>>& lines,
    const Pipeline& pipe) {
  lines.emplace_back("state", pipe.state_kind);
  lines.emplace_back("alpha", format17(pipe.alpha));
  lines.emplace_back("beta", format17(pipe.beta));
  lines.emplace_back("grid-n", std::to_string(pipe.axis.n));
  lines.emplace_back("extent", format17(pipe.axis.extent()));
  lines.emplace_back("spacing", format17(pipe.axis.spacing));
  lines.emplace_back("path", pipe.path_name);
}

int cmd_density(const KeyValueStore& cfg) {
  cfg.require_known({"state", "sigma-plus", "sigma-minus", "sigma-pump",
                     "crystal-length", "pump-k", "scale-per-mm", "alpha",
                     "beta", "grid-n", "extent", "path", "out", "raw"});
  const Pipeline pipe = build_pipeline(cfg);
  const frft::JointDensity density = frft::joint_density(pipe.transformed);
  const std::filesystem::path dir = prepare_out_dir(cfg);

  {
    std::ofstream csv = open_out(dir / "density.csv", false);
    csv << "rho1,rho2,p\n";
    for (int i = 0; i < density.axis1.n; ++i) {
      const std::string rho1 = format17(density.axis1.coord(i));
      for (int j = 0; j < density.axis2.n; ++j) {
        csv << rho1 << ',' << format17(density.axis2.coord(j)) << ','
            << format17(density.values(i, j)) << '\n';
      }
    }
  }

  if (cfg.get_or("raw", "0") == "1") {
    std::ofstream bin = open_out(dir / "density.raw", true);
    const std::uint64_t dims[2] = {
        static_cast<std::uint64_t>(density.axis1.n),
        static_cast<std::uint64_t>(density.axis2.n)};
    bin.write(reinterpret_cast<const char*>(dims), sizeof(dims));
    std::vector<double> row(density.axis2.n);
    for (int i = 0; i < density.axis1.n; ++i) {
      for (int j = 0; j < density.axis2.n; ++j) {
        row[static_cast<std::size_t>(j)] = density.values(i, j);
      }
      bin.write(reinterpret_cast<const char*>(row.data()),
                static_cast<std::streamsize>(row.size() * sizeof(double)));
    }
  }

  const DensityCorrelation corr = density_correlation(density);
  std::vector<std::pair<std::string, std::string>> lines;
  lines.emplace_back("command", "density");
  append_pipeline_keys(lines, pipe);
  lines.emplace_back("norm", format17(pipe.transformed.norm()));
  lines.emplace_back("integral", format17(density.integral()));
  lines.emplace_back("r", format17(corr.r));
  lines.emplace_back("kind", corr.kind);
  write_report(dir / "report.txt", lines);
  return 0;
}

double resolve_slit(const KeyValueStore& cfg) {
  if (cfg.has("slit") && cfg.has("slit-um")) {
    throw ConfigError("slit: give either slit or slit-um, not both");
  }
  if (cfg.has("slit")) {
    const double w = frftsim::parse_number(cfg.get("slit"), "slit");
    if (w < 0.0) throw ConfigError("slit: must be nonnegative");
    return w;
  }
  if (cfg.has("slit-um")) {
    const double um = frftsim::parse_number(cfg.get("slit-um"), "slit-um");
    const double per_mm =
        frftsim::parse_number(cfg.get("scale-per-mm"), "scale-per-mm");
    return frft::slit_width_dimensionless(um * 1e-6, per_mm * 1e3);
  }
  return 0.0;
}

int cmd_scan(const KeyValueStore& cfg) {
  cfg.require_known({"state", "sigma-plus", "sigma-minus", "sigma-pump",
                     "crystal-length", "pump-k", "scale-per-mm", "alpha",
                     "beta", "grid-n", "extent", "path", "out", "fixed-photon",
                     "fixed-rho", "slit", "slit-um"});
  const long long photon =
      frftsim::parse_integer(cfg.get_or("fixed-photon", "1"), "fixed-photon");
  if (photon != 1 && photon != 2) {
    throw ConfigError("fixed-photon: must be 1 or 2");
  }
  const std::vector<double> held =
      frftsim::parse_number_list(cfg.get("fixed-rho"), "fixed-rho");
  if (held.empty()) {
    throw ConfigError("fixed-rho: empty list");
  }
  const double slit = resolve_slit(cfg);

  const Pipeline pipe = build_pipeline(cfg);
  const frft::JointDensity density = frft::joint_density(pipe.transformed);
  const std::filesystem::path dir = prepare_out_dir(cfg);
  const std::string scan_col = photon == 1 ? "rho2" : "rho1";

  std::vector<std::pair<std::string, std::string>> lines;
  lines.emplace_back("command", "scan");
  append_pipeline_keys(lines, pipe);
  lines.emplace_back("fixed-photon", std::to_string(photon));
  lines.emplace_back("slit", format17(slit));
  lines.emplace_back("count", std::to_string(held.size()));

  for (std::size_t k = 0; k < held.size(); ++k) {
    const frft::ConditionalProfile profile = frft::conditional_profile(
        density, static_cast<int>(photon), held[k], slit);
    const frft::GaussianFit fit = frft::fit_gaussian(profile);

    std::ofstream csv =
        open_out(dir / ("scan_" + std::to_string(k) + ".csv"), false);
    csv << scan_col << ",counts\n";
    for (int i = 0; i < profile.axis.n; ++i) {
      csv << format17(profile.axis.coord(i)) << ','
          << format17(profile.values[i]) << '\n';
    }

    const std::string tag = std::to_string(k);
    lines.emplace_back("fixed-rho-" + tag, format17(held[k]));
    lines.emplace_back("snapped-rho-" + tag, format17(profile.fixed_rho));
    lines.emplace_back("peak-" + tag, format17(fit.mean));
    lines.emplace_back("variance-" + tag, format17(fit.variance));
    lines.emplace_back("amplitude-" + tag, format17(fit.amplitude));
    lines.emplace_back("offset-" + tag, format17(fit.offset));
    lines.emplace_back("rms-residual-" + tag, format17(fit.rms_residual));
  }
  write_report(dir / "report.txt", lines);
  return 0;
}

int cmd_design(const KeyValueStore& cfg) {
  cfg.require_known({"system", "focal", "alpha", "wavelength"});
  const bool have_system = cfg.has("system");
  if (have_system &&
      (cfg.has("focal") || cfg.has("alpha") || cfg.has("wavelength"))) {
    throw ConfigError("system: incompatible with focal/alpha/wavelength");
  }
  std::cout << "command=design\n";
  if (have_system) {
    const frft::OpticalSystem sys = frft::parse_system_file(cfg.get("system"));
    const Eigen::Matrix2d m = frft::compose(sys);
    std::cout << "system=" << cfg.get("system") << '\n'
              << "m00=" << format17(m(0, 0)) << '\n'
              << "m01=" << format17(m(0, 1)) << '\n'
              << "m10=" << format17(m(1, 0)) << '\n'
              << "m11=" << format17(m(1, 1)) << '\n'
              << "det=" << format17(m.determinant()) << '\n';
    try {
      const frft::FrftOrder order = frft::match_frft(m);
      std::cout << "frft=yes\n"
                << "order-rad=" << format17(order.radians()) << '\n';
    } catch (const frft::NotAnFrft& e) {
      std::cout << "frft=no\n"
                << "residual-ad=" << format17(e.residual_ad) << '\n'
                << "residual-bc=" << format17(e.residual_bc) << '\n'
                << "residual-unit=" << format17(e.residual_unit) << '\n';
    }
    return 0;
  }
  const double focal = frftsim::parse_number(cfg.get("focal"), "focal");
  const double alpha = frftsim::parse_angle(cfg.get("alpha"), "alpha");
  const double wavelength =
      frftsim::parse_number(cfg.get("wavelength"), "wavelength");
  const frft::Type1Design design =
      frft::type1_design(focal, frft::FrftOrder(alpha));
  const double per_m = frft::scale_per_meter(design.f_prime, wavelength);
  std::cout << "alpha-rad=" << format17(alpha) << '\n'
            << "focal-m=" << format17(focal) << '\n'
            << "wavelength-m=" << format17(wavelength) << '\n'
            << "z-m=" << format17(design.z) << '\n'
            << "f-prime-m=" << format17(design.f_prime) << '\n'
            << "scale-per-mm=" << format17(per_m / 1e3) << '\n';
  return 0;
}

int cmd_selftest(const std::string& fault_name) {
  frftsim::FaultMode fault = frftsim::FaultMode::None;
  if (fault_name == "kernel-phase") {
    fault = frftsim::FaultMode::KernelPhase;
  } else if (fault_name == "cov-transpose") {
    fault = frftsim::FaultMode::CovTranspose;
  } else if (fault_name != "none") {
    throw ConfigError(
        "fault: expected none, kernel-phase or cov-transpose, got '" +
        fault_name + "'");
  }
  bool all_passed = true;
  for (const frftsim::GroupResult& result : frftsim::run_selftest(fault)) {
    std::cout << "group " << result.name << ": "
              << (result.passed ? "PASS" : "FAIL (" + result.detail + ")")
              << '\n';
    all_passed = all_passed && result.passed;
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "two-photon transverse correlations through fractional Fourier optics"};
  app.require_subcommand(1);
  int exit_code = 0;

  CLI::App* density = app.add_subcommand(
      "density", "transform a two-photon state and dump the joint density");
  OptionBag density_bag(density);
  for (const char* key :
       {"state", "sigma-plus", "sigma-minus", "sigma-pump", "crystal-length",
        "pump-k", "scale-per-mm", "alpha", "beta", "grid-n", "extent", "path",
        "out"}) {
    density_bag.add(key, "config key " + std::string(key));
  }
  density_bag.add_raw();
  density->callback([&] {
    exit_code = guarded([&] { return cmd_density(density_bag.merged()); });
  });

  CLI::App* scan = app.add_subcommand(
      "scan", "coincidence profiles with one detector held, plus fits");
  OptionBag scan_bag(scan);
  for (const char* key :
       {"state", "sigma-plus", "sigma-minus", "sigma-pump", "crystal-length",
        "pump-k", "scale-per-mm", "alpha", "beta", "grid-n", "extent", "path",
        "out", "fixed-photon", "slit", "slit-um"}) {
    scan_bag.add(key, "config key " + std::string(key));
  }
  scan_bag.add_fixed_rho();
  scan->callback([&] {
    exit_code = guarded([&] { return cmd_scan(scan_bag.merged()); });
  });

  CLI::App* design = app.add_subcommand(
      "design", "lens-system design and ray-matrix recognition");
  OptionBag design_bag(design);
  for (const char* key : {"system", "focal", "alpha", "wavelength"}) {
    design_bag.add(key, "config key " + std::string(key));
  }
  design->callback([&] {
    exit_code = guarded([&] { return cmd_design(design_bag.merged()); });
  });

  CLI::App* selftest =
      app.add_subcommand("selftest", "run the built-in invariant suite");
  std::string fault_name = "none";
  selftest->add_option("--fault", fault_name,
                       "inject a deliberate bug: kernel-phase | cov-transpose");
  selftest->callback([&] {
    exit_code = guarded([&] { return cmd_selftest(fault_name); });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
