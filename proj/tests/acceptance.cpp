// End-to-end checks, one test case per shipped guarantee. Each case prints a
// single "criterion NN <name>: PASS|FAIL" line before handing the details to
// the assertion framework, so a bare run of this binary yields a 12-line
// scoreboard.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "frft/analysis.hpp"
#include "frft/engine.hpp"
#include "frft/errors.hpp"
#include "frft/gaussian_model.hpp"
#include "frft/grid.hpp"
#include "frft/optics.hpp"
#include "frft/order.hpp"
#include "frft/twophoton.hpp"

using namespace frft;

namespace {

void report(int index, const char* name, bool ok) {
  std::printf("criterion %02d %s: %s\n", index, name, ok ? "PASS" : "FAIL");
  std::fflush(stdout);
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

const double kInf = std::numeric_limits<double>::infinity();

// Measured widths of the source used throughout: rms of rho1 +- rho2.
const double kSigmaPlus = 4.076;
const double kSigmaMinus = 0.067;

double field_distance(const ComplexField1D& a, const ComplexField1D& b) {
  const ComplexField1D diff{a.axis, a.samples - b.samples};
  return diff.norm();
}

}  // namespace

TEST_CASE("criterion 01 order additivity") {
  double worst = kInf;
  double secs = kInf;
  int done = 0;
  std::string error;
  try {
    const Timer timer;
    // Orders whose |sin| drops below about extent^2 / (2 pi n) push an
    // aliased image of the field into the window, so draws are restricted
    // to the band this grid can actually represent (0.08 is a 1.7x margin
    // at extent 18, n = 1024; the measured residual there is ~2e-10).
    const SampledAxis axis(1024, 18.0 / 1024);
    const int max_mode = 12;
    Eigen::MatrixXcd modes(axis.n, max_mode + 1);
    for (int m = 0; m <= max_mode; ++m) {
      modes.col(m) = hermite_gauss(m, axis).samples;
    }

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::normal_distribution<double> coeff(0.0, 1.0);

    worst = 0.0;
    int draws = 0;
    while (done < 200 && draws < 100000) {
      ++draws;
      const double a = angle(rng);
      const double b = angle(rng);
      if (std::abs(std::sin(a)) < 0.08 || std::abs(std::sin(b)) < 0.08 ||
          std::abs(std::sin(a + b)) < 0.08) {
        continue;
      }
      Eigen::VectorXcd c(max_mode + 1);
      for (int m = 0; m <= max_mode; ++m) {
        c(m) = std::complex<double>(coeff(rng), coeff(rng));
      }
      ComplexField1D field{axis, modes * c};
      field.samples /= field.norm();

      const ComplexField1D stepwise =
          frft_1d(frft_1d(field, FrftOrder(a)), FrftOrder(b));
      const ComplexField1D direct = frft_1d(field, FrftOrder(a + b));
      worst = std::max(worst, field_distance(stepwise, direct));
      ++done;
    }
    secs = timer.seconds();
  } catch (const std::exception& e) {
    error = e.what();
  }

  const bool ok =
      error.empty() && done == 200 && worst <= 1e-5 && secs <= 30.0;
  report(1, "order additivity", ok);
  INFO("exception: " << error);
  CHECK(error.empty());
  CHECK(done == 200);
  CHECK(worst <= 1e-5);
  CHECK(secs <= 30.0);
}

TEST_CASE("criterion 02 hermite eigenmodes") {
  double worst = kInf;
  std::string error;
  try {
    const SampledAxis axis(1024, 26.0 / 1024);
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);

    worst = 0.0;
    int done = 0;
    int draws = 0;
    while (done < 20 && draws < 10000) {
      ++draws;
      const double a = angle(rng);
      if (std::abs(std::sin(a)) < 1e-3) {
        continue;
      }
      ++done;
      for (int n = 0; n <= 10; ++n) {
        const ComplexField1D mode = hermite_gauss(n, axis);
        const ComplexField1D out = frft_1d(mode, FrftOrder(a));
        const std::complex<double> eig =
            std::exp(std::complex<double>(0.0, -n * a));
        const ComplexField1D expected{axis, eig * mode.samples};
        worst = std::max(worst,
                         field_distance(out, expected) / mode.norm());
      }
    }
    if (done != 20) {
      error = "angle draw exhausted";
    }
  } catch (const std::exception& e) {
    error = e.what();
  }

  const bool ok = error.empty() && worst <= 1e-6;
  report(2, "hermite eigenmodes", ok);
  INFO("exception: " << error);
  CHECK(error.empty());
  CHECK(worst <= 1e-6);
}

TEST_CASE("criterion 03 single lens realization") {
  double worst = kInf;
  double z_34 = 0.0;
  double z_14 = 0.0;
  double fp_34 = 0.0;
  std::string error;
  try {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> focal(0.05, 1.0);
    std::uniform_real_distribution<double> lambda(400e-9, 1000e-9);
    std::uniform_real_distribution<double> angle(0.0, kPi);

    worst = 0.0;
    int done = 0;
    int draws = 0;
    while (done < 1000 && draws < 100000) {
      ++draws;
      const double a = angle(rng);
      if (std::sin(a) < 1e-3) {
        continue;
      }
      ++done;
      const double f = focal(rng);
      const double wl = lambda(rng);
      const Type1Design d = type1_design(f, FrftOrder(a));
      const double s = 1.0 / scale_per_meter(d.f_prime, wl);
      const OpticalSystem system{
          wl, s,
          {OpticalElement::free_space(d.z), OpticalElement::thin_lens(f),
           OpticalElement::free_space(d.z)}};
      const FrftOrder recovered = match_frft(compose(system));
      worst = std::max(worst, recovered.distance_to(a));
    }
    if (done != 1000) {
      error = "angle draw exhausted";
    }

    const Type1Design d34 = type1_design(0.25, FrftOrder(3.0 * kPi / 4.0));
    const Type1Design d14 = type1_design(0.25, FrftOrder(kPi / 4.0));
    z_34 = d34.z;
    fp_34 = d34.f_prime;
    z_14 = d14.z;
  } catch (const std::exception& e) {
    error = e.what();
  }

  const bool ok = error.empty() && worst <= 1e-9 &&
                  std::abs(z_34 - 0.42677669529663687) <= 1e-12 &&
                  std::abs(z_14 - 0.07322330470336312) <= 1e-12 &&
                  std::abs(fp_34 - 0.17677669529663687) <= 1e-12;
  report(3, "single lens realization", ok);
  INFO("exception: " << error);
  CHECK(error.empty());
  CHECK(worst <= 1e-9);
  CHECK(z_34 == doctest::Approx(0.42677669529663687).epsilon(1e-12));
  CHECK(z_14 == doctest::Approx(0.07322330470336312).epsilon(1e-12));
  CHECK(fp_34 == doctest::Approx(0.17677669529663687).epsilon(1e-12));
}

TEST_CASE("criterion 04 transverse scale") {
  double per_mm = kInf;
  double per_m = kInf;
  std::string error;
  try {
    const Type1Design d = type1_design(0.25, FrftOrder(3.0 * kPi / 4.0));
    per_m = scale_per_meter(d.f_prime, 810e-9);
    per_mm = per_m / 1e3;
  } catch (const std::exception& e) {
    error = e.what();
  }

  const bool ok = error.empty() && std::abs(per_mm - 6.62) <= 0.01;
  report(4, "transverse scale", ok);
  INFO("exception: " << error);
  CHECK(error.empty());
  CHECK(std::abs(per_mm - 6.62) <= 0.01);
  CHECK(per_m == doctest::Approx(6624.222619684846).epsilon(1e-12));
}

TEST_CASE("criterion 05 decorrelating orders") {
  double worst = kInf;
  double secs = kInf;
  std::string error;
  try {
    const Timer timer;
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> width(0.1, 10.0);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);

    worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
      const DoubleGaussianParams params(width(rng), width(rng));
      const BiphotonMoments before = initial_moments(params);
      const FrftOrder alpha(angle(rng));
      for (const FrftOrder beta : no_correlation_beta(params, alpha)) {
        const BiphotonMoments after = propagate_moments(before, alpha, beta);
        worst = std::max(worst, std::abs(after.cov_rho1_rho2()));
      }
    }
    secs = timer.seconds();
  } catch (const std::exception& e) {
    error = e.what();
  }

  const bool ok = error.empty() && worst <= 1e-12 && secs <= 5.0;
  report(5, "decorrelating orders", ok);
  INFO("exception: " << error);
  CHECK(error.empty());
  CHECK(worst <= 1e-12);
  CHECK(secs <= 5.0);
}

TEST_CASE("criterion 06 correlation classes") {
  // clause +1: r >= 0.99, clause -1: r <= -0.99, clause 0: |r| <= 0.15.
  struct Scenario {
    double alpha;
    double beta;
    int clause;
  };
  const std::vector<Scenario> scenarios = {
      {3.0 * kPi / 4.0, 5.0 * kPi / 4.0, +1}, {kPi, kPi, +1},
      {kPi / 4.0, 3.0 * kPi / 4.0, -1},       {kPi / 2.0, kPi / 2.0, -1},
      {kPi / 4.0, 5.0 * kPi / 4.0, 0},        {kPi / 2.0, kPi, 0},
      {3.0 * kPi / 4.0, 3.0 * kPi / 4.0, 0},
  };

  std::vector<double> r_values;
  std::string error;
  try {
    const DoubleGaussianParams params(kSigmaPlus, kSigmaMinus);
    const BiphotonMoments before = initial_moments(params);
    for (const Scenario& s : scenarios) {
      const BiphotonMoments after =
          propagate_moments(before, FrftOrder(s.alpha), FrftOrder(s.beta));
      r_values.push_back(position_correlation(after).r);
    }
  } catch (const std::exception& e) {
    error = e.what();
  }

  bool ok = error.empty();
  for (size_t i = 0; i < scenarios.size() && ok; ++i) {
    const double r = r_values[i];
    switch (scenarios[i].clause) {
      case +1: ok = r >= 0.99; break;
      case -1: ok = r <= -0.99; break;
      default: ok = std::abs(r) <= 0.15; break;
    }
  }
  report(6, "correlation classes", ok);
  INFO("exception: " << error);
  REQUIRE(error.empty());
  REQUIRE(r_values.size() == scenarios.size());
  for (size_t i = 0; i < scenarios.size(); ++i) {
    const double r = r_values[i];
    INFO("alpha = " << scenarios[i].alpha << ", beta = " << scenarios[i].beta
                    << ", r = " << r);
    switch (scenarios[i].clause) {
      case +1: CHECK(r >= 0.99); break;
      case -1: CHECK(r <= -0.99); break;
      default: CHECK(std::abs(r) <= 0.15); break;
    }
  }
}

TEST_CASE("criterion 07 analytic numeric agreement") {
  std::vector<double> deviations;
  std::vector<double> times;
  std::string error;
  try {
    const DoubleGaussianParams params(4.0, 0.25);
    const SampledAxis axis(1024, 24.5 / 1024);
    const JointAmplitude state = build_double_gaussian(params, axis, axis);
    const BiphotonMoments before = initial_moments(params);

    const std::vector<std::pair<double, double>> pairs = {
        {kPi / 2.0, kPi / 2.0}, {3.0 * kPi / 4.0, 5.0 * kPi / 4.0}};
    for (const auto& [a, b] : pairs) {
      const Timer timer;
      const JointAmplitude out =
          joint_frft(state, FrftOrder(a), FrftOrder(b));
      const JointDensity numeric = joint_density(out);
      const Eigen::MatrixXd reference = gaussian_joint_density(
          propagate_moments(before, FrftOrder(a), FrftOrder(b)), axis, axis);
      deviations.push_back(
          (numeric.values - reference).cwiseAbs().maxCoeff());
      times.push_back(timer.seconds());
    }
  } catch (const std::exception& e) {
    error = e.what();
  }

  bool ok = error.empty() && deviations.size() == 2;
  for (size_t i = 0; i < deviations.size(); ++i) {
    ok = ok && deviations[i] <= 1e-4 && times[i] <= 60.0;
  }
  report(7, "analytic numeric agreement", ok);
  INFO("exception: " << error);
  REQUIRE(error.empty());
  REQUIRE(deviations.size() == 2);
  for (size_t i = 0; i < deviations.size(); ++i) {
    INFO("pair " << i);
    CHECK(deviations[i] <= 1e-4);
    CHECK(times[i] <= 60.0);
  }
}

TEST_CASE("criterion 08 conditional variance product") {
  double product = kInf;
  bool violated = false;
  double boundary = kInf;
  bool boundary_violated = true;
  std::string error;
  try {
    const DoubleGaussianParams params(kSigmaPlus, kSigmaMinus);
    const EprProduct epr = epr_product(params, FrftOrder(kPi), FrftOrder(kPi));
    product = epr.product;
    violated = epr.violated;

    const DoubleGaussianParams separable(2.0, 2.0);
    const EprProduct at_bound =
        epr_product(separable, FrftOrder(0.0), FrftOrder(0.0));
    boundary = at_bound.product;
    boundary_violated = at_bound.violated;
  } catch (const std::exception& e) {
    error = e.what();
  }

  // Closed form from the widths alone.
  const double sp2 = kSigmaPlus * kSigmaPlus;
  const double sm2 = kSigmaMinus * kSigmaMinus;
  const double var_rho = (sp2 + sm2) / 4.0;
  const double cov_rho = (sp2 - sm2) / 4.0;
  const double var_q = (1.0 / sp2 + 1.0 / sm2) / 4.0;
  const double cov_q = (1.0 / sm2 - 1.0 / sp2) / 4.0;
  const double expected = (var_rho - cov_rho * cov_rho / var_rho) *
                          (var_q - cov_q * cov_q / var_q);

  const bool ok = error.empty() &&
                  std::abs(product - expected) <= 1e-12 * expected &&
                  std::abs(product - 0.0002700515012403649) <=
                      1e-12 * 0.0002700515012403649 &&
                  violated && boundary == 0.25 && !boundary_violated;
  report(8, "conditional variance product", ok);
  INFO("exception: " << error);
  CHECK(error.empty());
  CHECK(product == doctest::Approx(expected).epsilon(1e-12));
  CHECK(product == doctest::Approx(0.0002700515012403649).epsilon(1e-12));
  CHECK(violated);
  CHECK(boundary == 0.25);
  CHECK(!boundary_violated);
}

TEST_CASE("criterion 09 slit scan contrast") {
  // Order pairs summing to 3*pi/2 leave the photons uncorrelated, the rest
  // focus the coincidences; the fitted conditional spreads must separate by
  // an order of magnitude.
  double min_wide = kInf;
  double max_narrow = 0.0;
  std::string error;
  try {
    const DoubleGaussianParams params(kSigmaPlus, kSigmaMinus);
    std::vector<std::pair<FrftOrder, FrftOrder>> scenarios;
    const std::vector<std::pair<double, double>> pairs = {
        {3.0 * kPi / 4.0, 5.0 * kPi / 4.0}, {kPi, kPi},
        {kPi / 4.0, 3.0 * kPi / 4.0},       {kPi / 2.0, kPi / 2.0},
        {kPi / 4.0, 5.0 * kPi / 4.0},       {kPi / 2.0, kPi},
        {3.0 * kPi / 4.0, 3.0 * kPi / 4.0},
    };
    for (const auto& [a, b] : pairs) {
      scenarios.emplace_back(FrftOrder(a), FrftOrder(b));
    }

    const std::vector<VarianceTableRow> rows =
        variance_table(params, scenarios, 0.662);
    for (size_t i = 0; i < rows.size(); ++i) {
      const double lo =
          std::min(rows[i].var_rho2_given_rho1, rows[i].var_rho1_given_rho2);
      const double hi =
          std::max(rows[i].var_rho2_given_rho1, rows[i].var_rho1_given_rho2);
      if (i >= 4) {
        min_wide = std::min(min_wide, lo);  // alpha + beta = 3*pi/2
      } else {
        max_narrow = std::max(max_narrow, hi);
      }
    }
  } catch (const std::exception& e) {
    error = e.what();
  }

  const bool ok = error.empty() && max_narrow > 0.0 &&
                  min_wide >= 10.0 * max_narrow;
  report(9, "slit scan contrast", ok);
  INFO("exception: " << error);
  INFO("min wide " << min_wide << ", max narrow " << max_narrow);
  CHECK(error.empty());
  CHECK(max_narrow > 0.0);
  CHECK(min_wide >= 10.0 * max_narrow);
}

TEST_CASE("criterion 10 coincidence peak tracking") {
  struct Result {
    double held;
    double target;
    double peak;
  };
  std::vector<Result> results;
  std::string error;
  try {
    const DoubleGaussianParams params(kSigmaPlus, kSigmaMinus);
    const SampledAxis axis(2048, 44.0 / 2048);
    const JointAmplitude state = build_double_gaussian(params, axis, axis);

    const std::vector<std::pair<std::pair<double, double>, double>> setups = {
        {{3.0 * kPi / 4.0, 5.0 * kPi / 4.0}, +1.0},
        {{kPi / 4.0, 3.0 * kPi / 4.0}, -1.0},
    };
    for (const auto& [orders, sign] : setups) {
      const JointAmplitude out = joint_frft(state, FrftOrder(orders.first),
                                            FrftOrder(orders.second));
      const JointDensity density = joint_density(out);
      for (const double held : {-1.99, 1.99}) {
        const ConditionalProfile profile =
            conditional_profile(density, 1, held, 0.662);
        const GaussianFit fit = fit_gaussian(profile);
        results.push_back({held, sign * held, fit.mean});
      }
    }
  } catch (const std::exception& e) {
    error = e.what();
  }

  bool ok = error.empty() && results.size() == 4;
  for (const Result& r : results) {
    ok = ok && std::abs(r.peak - r.target) <= 0.1;
  }
  report(10, "coincidence peak tracking", ok);
  INFO("exception: " << error);
  REQUIRE(error.empty());
  REQUIRE(results.size() == 4);
  for (const Result& r : results) {
    INFO("held " << r.held << " expected " << r.target << " got " << r.peak);
    CHECK(std::abs(r.peak - r.target) <= 0.1);
  }
}

TEST_CASE("criterion 11 external variance feed") {
  EprFromVariances fed{kInf, false};
  EprFromVariances at_bound{kInf, true};
  std::string error;
  try {
    fed = epr_from_variances(0.28, 0.14);
    at_bound = epr_from_variances(0.5, 0.5);
  } catch (const std::exception& e) {
    error = e.what();
  }

  const bool ok = error.empty() &&
                  std::abs(fed.product - 0.0392) <= 1e-12 * 0.0392 &&
                  fed.violated && at_bound.product == 0.25 &&
                  !at_bound.violated;
  report(11, "external variance feed", ok);
  INFO("exception: " << error);
  CHECK(error.empty());
  CHECK(fed.product == doctest::Approx(0.0392).epsilon(1e-12));
  CHECK(fed.violated);
  CHECK(at_bound.product == 0.25);
  CHECK(!at_bound.violated);
}

namespace {

struct CliRun {
  int exit_code;
  std::string output;
};

CliRun run_cli(const std::string& bin, const std::string& args,
               const std::string& log_path) {
  const std::string cmd = bin + " " + args + " >'" + log_path + "' 2>&1";
  const int status = std::system(cmd.c_str());
  CliRun result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.output = buffer.str();
  return result;
}

}  // namespace

TEST_CASE("criterion 12 cli selftest") {
  const char* bin = std::getenv("FRFTSIM_BIN");
  bool clean_ok = false;
  bool phase_ok = false;
  bool cov_ok = false;
  double secs = kInf;
  if (bin != nullptr) {
    const std::string log = "/tmp/frftsim_acceptance_selftest.log";
    const Timer timer;
    const CliRun clean = run_cli(bin, "selftest", log);
    secs = timer.seconds();
    clean_ok = clean.exit_code == 0 && secs <= 120.0;

    const CliRun phase = run_cli(bin, "selftest --fault kernel-phase", log);
    phase_ok = phase.exit_code == 1 &&
               phase.output.find("group eigenfunctions: FAIL") !=
                   std::string::npos;

    const CliRun cov = run_cli(bin, "selftest --fault cov-transpose", log);
    cov_ok = cov.exit_code == 1 &&
             cov.output.find("group no_correlation: FAIL") !=
                 std::string::npos;
  }

  const bool ok = bin != nullptr && clean_ok && phase_ok && cov_ok;
  report(12, "cli selftest", ok);
  REQUIRE(bin != nullptr);
  CHECK(clean_ok);
  CHECK(secs <= 120.0);
  CHECK(phase_ok);
  CHECK(cov_ok);
}
