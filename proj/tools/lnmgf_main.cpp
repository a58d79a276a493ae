// lnmgf: lognormal MGF from the command line.
//
//   lnmgf compute --sigma 0.1 --theta 0.5 --methods all --format text
//   lnmgf table --id 2 --format csv
//   lnmgf paths --sigma 0.0625 --theta -1 --n 100000
//   lnmgf grid --sigma 1 --n-pairs 1000
//
// Exit status: 0 on success, 1 if any method failed, 2 on a usage error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lnmgf/lnmgf.hpp"
#include "report.hpp"

namespace {

using namespace lnmgf;
using cli::sig9;

constexpr int kOk = 0;
constexpr int kMethodError = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SettingsFlags {
  std::size_t steps = 2000;
  bool no_gamma = false;
  bool upsilon = false;
  std::size_t n_pairs = 80'000;
  double tail_cutoff = 1e-12;
  bool tail_tiles = false;
  bool laplace_exact = false;
  std::size_t mc_samples = 1'000'000;
  std::uint64_t seed = 0x5eed;
  unsigned mc_threads = 1;

  void attach(CLI::App* app) {
    app->add_option("--steps", steps, "Euler steps for the moment ODEs")->check(CLI::Range(std::size_t{10}, std::numeric_limits<std::size_t>::max()));
    app->add_flag("--no-gamma", no_gamma, "Disable the gamma adjustment of the variance rate");
    app->add_flag("--upsilon", upsilon, "Add the single covariance term to the variance rate");
    app->add_option("--n-pairs", n_pairs, "Thin-tile pairs N (h = sqrt(1/(2N)))")->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
    app->add_option("--tail-cutoff", tail_cutoff, "Stop the tile grid once less mass than this is uncovered")->check(CLI::Range(1e-300, 1e-6));
    app->add_flag("--tail-tiles", tail_tiles, "Extend the tile grid with tail tiles up to the cutoff");
    app->add_flag("--laplace-exact", laplace_exact, "Multiply the closed form by its exact correction factor");
    app->add_option("--mc-samples", mc_samples, "Monte Carlo sample size")->check(CLI::Range(std::size_t{1000}, std::numeric_limits<std::size_t>::max()));
    app->add_option("--seed", seed, "Seed for Monte Carlo");
    app->add_option("--mc-threads", mc_threads, "Monte Carlo worker threads (0 = all cores)");
  }

  MethodSettings build() const {
    MethodSettings s;
    s.zero_entropy.steps = steps;
    s.zero_entropy.gamma_enabled = !no_gamma;
    s.zero_entropy.upsilon_extra_term = upsilon;
    s.thin_tile.n_pairs = n_pairs;
    s.thin_tile.tail_cutoff = tail_cutoff;
    s.thin_tile.tail_tiles = tail_tiles;
    s.laplace.exact_correction = laplace_exact;
    s.monte_carlo.n_samples = mc_samples;
    s.monte_carlo.seed = RngSeed{seed};
    s.monte_carlo.threads = mc_threads;
    return s;
  }
};

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<Method> out;
  for (const auto& n : names) {
    if (n == "all") {
      for (Method m : kAllMethods) {
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
      }
      continue;
    }
    const auto m = parse_method(n);
    if (!m) throw UsageError("unknown method '" + n + "' (expected all, zero_entropy, thin_tile, laplace_w, monte_carlo)");
    if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
  }
  return out;
}

MgfQuery make_query(double mu, double sigma, double theta) {
  try {
    return MgfQuery(mu, sigma, theta);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

void write_trajectory(const std::string& path, const MgfQuery& q, const ZeroEntropyConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open trajectory file " + path);
  out.precision(std::numeric_limits<double>::max_digits10);
  out << "i,t,m,v\n";
  integrate(q, cfg, [&](std::size_t i, const OdeState& s) { out << i << ',' << s.t << ',' << s.m << ',' << s.v << '\n'; });
}

int cmd_compute(double mu, double sigma, double theta, const std::vector<std::string>& method_names,
                const SettingsFlags& flags, const std::string& format, const std::string& trajectory) {
  const MgfQuery q = make_query(mu, sigma, theta);
  const std::vector<Method> methods = parse_methods(method_names);
  const MethodSettings settings = flags.build();
  if (!trajectory.empty() && theta != 0.0) write_trajectory(trajectory, q, settings.zero_entropy);

  const cli::RunReport report = cli::run_report(q, methods, settings);
  if (format == "json") {
    std::cout << cli::to_json(report).dump(2) << '\n';
  } else if (format == "csv") {
    cli::write_csv(std::cout, std::span(&report, 1));
  } else {
    cli::write_text(std::cout, report);
  }
  return report.ok() ? kOk : kMethodError;
}

int cmd_table(int id, const std::vector<std::string>& method_names, const SettingsFlags& flags,
              const std::string& format) {
  const PaperTable& table = paper_table(id);
  const std::vector<Method> methods = parse_methods(method_names);
  const std::vector<cli::RunReport> reports = cli::run_table(table, methods, flags.build());

  if (format == "json") {
    nlohmann::json j;
    j["table"] = id;
    j["reports"] = nlohmann::json::array();
    for (const auto& r : reports) j["reports"].push_back(cli::to_json(r));
    std::cout << j.dump(2) << '\n';
  } else if (format == "csv") {
    cli::write_csv(std::cout, reports);
  } else {
    cli::write_text_table(std::cout, reports);
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.ok();
  return ok ? kOk : kMethodError;
}

int cmd_paths(double mu, double sigma, double theta, std::size_t n, std::size_t steps, std::uint64_t seed,
              unsigned threads, const std::string& format) {
  const MgfQuery q = make_query(mu, sigma, theta);
  if (theta == 0.0) throw UsageError("paths: theta must be non-zero");

  ZeroEntropyConfig cfg;
  cfg.steps = steps;
  const OdeSolution ode = integrate(q, cfg);
  const PathEnsemble ens = simulate_paths(q, n, steps, RngSeed{seed}, threads);
  const SampleMoments mom = sample_moments(ens.terminal_values);

  const double nn = static_cast<double>(mom.n);
  const double z_mean = (mom.mean - ode.state.m) / mom.std_error_of_mean();
  const double z_var = (mom.variance - ode.state.v) / mom.std_error_of_variance();
  const double skew_band = 5.0 * std::sqrt(6.0 / nn);
  const double kurt_band = 5.0 * std::sqrt(24.0 / nn);
  const bool gaussian = std::abs(mom.skewness) <= skew_band && std::abs(mom.excess_kurtosis) <= kurt_band;

  if (format == "json") {
    nlohmann::json j;
    j["query"] = {{"mu", mu}, {"sigma", sigma}, {"theta", theta}};
    j["ensemble"] = {{"n_paths", ens.n_paths}, {"excluded", ens.excluded}, {"steps", steps},  {"seed", seed},
                     {"mean", mom.mean},       {"variance", mom.variance}, {"skewness", mom.skewness},
                     {"excess_kurtosis", mom.excess_kurtosis}};
    j["ode"] = {{"m_1", ode.state.m}, {"v_1", ode.state.v}, {"clamped_steps", ode.clamped_steps}};
    j["standardized"] = {{"mean", z_mean}, {"variance", z_var}};
    j["gaussianity"] = {{"skewness_band", skew_band}, {"kurtosis_band", kurt_band}, {"within", gaussian}};
    std::cout << j.dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << "n_paths,excluded,mean,variance,skewness,excess_kurtosis,m_1,v_1,z_mean,z_variance\n"
              << ens.n_paths << ',' << ens.excluded << ',' << sig9(mom.mean) << ',' << sig9(mom.variance) << ','
              << sig9(mom.skewness) << ',' << sig9(mom.excess_kurtosis) << ',' << sig9(ode.state.m) << ','
              << sig9(ode.state.v) << ',' << sig9(z_mean) << ',' << sig9(z_var) << '\n';
  } else {
    std::cout << "mu = " << sig9(mu) << ", sigma = " << sig9(sigma) << ", theta = " << sig9(theta) << "\n"
              << "paths = " << ens.n_paths << " (excluded " << ens.excluded << "), steps = " << steps
              << ", seed = " << seed << "\n\n"
              << "ensemble mean      " << sig9(mom.mean) << "   ode m_1 " << sig9(ode.state.m) << "   z = "
              << sig9(z_mean) << '\n'
              << "ensemble variance  " << sig9(mom.variance) << "   ode v_1 " << sig9(ode.state.v) << "   z = "
              << sig9(z_var) << '\n'
              << "skewness           " << sig9(mom.skewness) << "   band +-" << sig9(skew_band) << '\n'
              << "excess kurtosis    " << sig9(mom.excess_kurtosis) << "   band +-" << sig9(kurt_band) << '\n'
              << "gaussian           " << (gaussian ? "yes" : "no") << '\n';
  }
  return kOk;
}

int cmd_grid(double mu, double sigma, const SettingsFlags& flags) {
  GaussianParams p;
  try {
    p = GaussianParams(mu, sigma);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  write_grid_csv(std::cout, build_grid(p, flags.build().thin_tile));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lognormal moment-generating function by four methods"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"json", "csv", "text"};

  double mu = 0.0, sigma = 1.0, theta = 0.0;
  std::vector<std::string> methods{"all"};
  std::string format = "text";
  std::string trajectory;
  int table_id = 0;
  std::size_t n_paths = 100'000, path_steps = 2000;
  std::uint64_t path_seed = 1;
  unsigned path_threads = 0;
  SettingsFlags flags;

  auto* compute = app.add_subcommand("compute", "Evaluate M(theta) for one (mu, sigma, theta)");
  compute->add_option("--mu", mu, "Location of log X");
  compute->add_option("--sigma", sigma, "Scale of log X")->required();
  compute->add_option("--theta", theta, "MGF argument")->required();
  compute->add_option("--methods", methods, "Comma-separated methods or 'all'")->delimiter(',');
  compute->add_option("--format", format)->check(CLI::IsMember(formats));
  compute->add_option("--trajectory", trajectory, "Write the zero-entropy trajectory i,t,m,v to this CSV file");
  flags.attach(compute);

  auto* table = app.add_subcommand("table", "Reproduce one of the published comparison tables");
  table->add_option("--id", table_id, "Table id")->required()->check(CLI::IsMember({1, 2, 3}));
  table->add_option("--methods", methods, "Comma-separated methods or 'all'")->delimiter(',');
  table->add_option("--format", format)->check(CLI::IsMember(formats));
  flags.attach(table);

  auto* paths = app.add_subcommand("paths", "Simulate the y process and compare with the moment ODEs");
  paths->add_option("--mu", mu);
  paths->add_option("--sigma", sigma)->required();
  paths->add_option("--theta", theta)->required();
  paths->add_option("--n", n_paths, "Number of paths")->check(CLI::PositiveNumber);
  paths->add_option("--steps", path_steps, "Euler-Maruyama steps")->check(CLI::Range(std::size_t{10}, std::numeric_limits<std::size_t>::max()));
  paths->add_option("--seed", path_seed);
  paths->add_option("--threads", path_threads, "Worker threads (0 = all cores)");
  paths->add_option("--format", format)->check(CLI::IsMember(formats));

  auto* grid = app.add_subcommand("grid", "Dump the thin-tile grid as CSV");
  grid->add_option("--mu", mu);
  grid->add_option("--sigma", sigma);
  grid->add_option("--n-pairs", flags.n_pairs)->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  grid->add_option("--tail-cutoff", flags.tail_cutoff)->check(CLI::Range(1e-300, 1e-6));
  grid->add_flag("--tail-tiles", flags.tail_tiles);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*compute) return cmd_compute(mu, sigma, theta, methods, flags, format, trajectory);
    if (*table) return cmd_table(table_id, methods, flags, format);
    if (*paths) return cmd_paths(mu, sigma, theta, n_paths, path_steps, path_seed, path_threads, format);
    if (*grid) return cmd_grid(mu, sigma, flags);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const lnmgf::Error& e) {
    std::cerr << cli::error_kind(e) << ": " << e.what() << '\n';
    return kMethodError;
  }
  return kUsage;
}
