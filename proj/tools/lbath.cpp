// lbath.cpp — command-line front end: rate tables, time-series evolution,
// region and closeness maps, oracle verification, and the triple point.
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lbath/born.hpp"
#include "lbath/classify.hpp"
#include "lbath/config.hpp"
#include "lbath/exact.hpp"
#include "lbath/io.hpp"
#include "lbath/model.hpp"
#include "lbath/oracle.hpp"
#include "lbath/redfield.hpp"
#include "lbath/types.hpp"

namespace {

using namespace lbath;

ModelConfig default_config() {
  ModelConfig config;
  config.system.h_s = Eigen::MatrixXcd::Zero(1, 1);
  config.reservoir.g = 1.0;
  config.reservoir.gamma = 2.0;
  config.reservoir.eps = 0.0;
  config.initial.psi0 = 0.0;
  config.initial.psi = Eigen::VectorXcd::Ones(1);
  return config;
}

ModelConfig load_or_default(const std::string& path) {
  return path.empty() ? default_config() : load_model_config(path);
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(out);
  if (!os) throw ValidationError("cannot open for writing: " + out);
  os << text;
}

std::pair<int, int> parse_grid_dims(const std::string& text) {
  const auto pos = text.find('x');
  if (pos != std::string::npos) {
    try {
      return {std::stoi(text.substr(0, pos)), std::stoi(text.substr(pos + 1))};
    } catch (const std::exception&) {
    }
  }
  throw ValidationError("grid must look like NxM, got: " + text);
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto pos = text.find(':');
  if (pos != std::string::npos) {
    try {
      return {std::stod(text.substr(0, pos)), std::stod(text.substr(pos + 1))};
    } catch (const std::exception&) {
    }
  }
  throw ValidationError("range must look like a:b, got: " + text);
}

GridSpec make_grid(const std::string& dims, const std::string& de_range,
                   const std::string& gamma_range) {
  GridSpec grid;
  const auto [n_de, n_gamma] = parse_grid_dims(dims);
  grid.n_de = n_de;
  grid.n_gamma = n_gamma;
  std::tie(grid.de_min, grid.de_max) = parse_range(de_range);
  std::tie(grid.gamma_min, grid.gamma_max) = parse_range(gamma_range);
  if (grid.n_de > 2000 || grid.n_gamma > 2000)
    throw ValidationError("grid resolution limited to 2000 per axis");
  grid.validate();
  return grid;
}

std::vector<double> time_grid(double t_max, double dt) {
  if (!(t_max > 0.0)) throw ValidationError("t-max must be > 0");
  if (!(dt > 0.0)) throw ValidationError("dt must be > 0");
  const int n = static_cast<int>(std::floor(t_max / dt + 1e-9));
  std::vector<double> times;
  times.reserve(n + 1);
  for (int i = 0; i <= n; ++i) times.push_back(i * dt);
  return times;
}

// ---------------- subcommands ----------------

int cmd_rates(const std::string& config_path, const std::string& out) {
  const ModelConfig config = load_or_default(config_path);
  const GlobalBasis basis = diagonalize(config.system, config.reservoir);
  const RateTable exact = exact_rates(basis, config.reservoir);
  const RateTable born = born_rates(basis, config.reservoir);
  const RateTable gksl = gksl_rates(basis, config.reservoir);
  std::vector<RateTable> redfield;
  for (double f : {0.5, 1.0, 2.0})
    redfield.push_back(redfield_rates(basis, config.reservoir, f / config.reservoir.gamma));
  emit(out, rates_report_json(exact, born, gksl, redfield));
  return 0;
}

int cmd_evolve(const std::string& config_path, const std::string& method, double t_max,
               double dt, const std::string& out, const std::string& format) {
  const ModelConfig config = load_or_default(config_path);
  const GlobalBasis basis = diagonalize(config.system, config.reservoir);
  const std::vector<double> times = time_grid(t_max, dt);

  std::vector<std::string> warnings;
  std::vector<ReducedState> states;
  if (method == "exact") {
    states = evolve_exact(config.initial, basis, config.reservoir, times);
  } else if (method == "born") {
    states = evolve_born(config.initial, basis, config.reservoir, times, &warnings);
  } else if (method == "redfield" || method == "gksl") {
    states = evolve_redfield(config.initial, basis, config.reservoir, times, method == "gksl");
  } else {
    throw ValidationError("unknown method: " + method);
  }
  for (const std::string& warning : warnings) std::cerr << "warning: " << warning << '\n';

  std::vector<Eigen::VectorXcd> psi;
  psi.reserve(times.size());
  for (double t : times) {
    if (method == "exact" || method == "born")
      psi.push_back(evolve_psi(config.initial, basis, config.reservoir, t));
    else
      psi.push_back(redfield_psi(config.initial, basis, config.reservoir, t, method == "gksl"));
  }

  std::ostringstream oss;
  write_timeseries(oss, method, config.reservoir, psi, states);
  if (format == "csv") {
    emit(out, oss.str());
  } else {  // json: same table re-expressed as columns/rows/metadata
    std::istringstream iss(oss.str());
    const TimeSeries series = read_timeseries(iss);
    nlohmann::json j;
    j["columns"] = series.columns;
    j["rows"] = series.rows;
    j["metadata"] = series.metadata;
    emit(out, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_classify(const std::string& dims, const std::string& de_range,
                 const std::string& gamma_range, int jobs, const std::string& out_base) {
  const GridSpec grid = make_grid(dims, de_range, gamma_range);
  const std::vector<RegionCell> cells = region_map(grid, jobs);
  write_region_csv_file(out_base + ".csv", cells);
  write_region_svg_file(out_base + ".svg", grid, cells);
  const int disagree = count_disagreements(cells);
  std::cout << "region map: " << cells.size() << " cells, " << disagree
            << " predicate/direct disagreements (reported, nonfatal)\n"
            << "wrote " << out_base << ".csv and " << out_base << ".svg\n";
  return 0;
}

int cmd_closeness(const std::string& dims, const std::string& de_range,
                  const std::string& gamma_range, double tolerance, const std::string& pair_name,
                  int jobs, const std::string& out_base) {
  const GridSpec grid = make_grid(dims, de_range, gamma_range);
  std::vector<ClosenessPair> pairs;
  if (pair_name == "both" || pair_name == "exact-born") pairs.push_back(ClosenessPair::exact_born);
  if (pair_name == "both" || pair_name == "exact-gksl") pairs.push_back(ClosenessPair::exact_gksl);
  if (pairs.empty()) throw ValidationError("unknown pair: " + pair_name);
  for (ClosenessPair pair : pairs) {
    const std::vector<ClosenessCell> cells = closeness_map(grid, tolerance, pair, jobs);
    std::size_t filled = 0;
    for (const ClosenessCell& cell : cells) filled += cell.close ? 1 : 0;
    const std::string base = out_base + "-" + to_string(pair);
    write_closeness_csv_file(base + ".csv", cells, pair, tolerance);
    write_closeness_svg_file(base + ".svg", grid, cells, pair, tolerance);
    std::cout << to_string(pair) << ": " << filled << " of " << cells.size()
              << " cells within tolerance; wrote " << base << ".csv and " << base << ".svg\n";
  }
  return 0;
}

int cmd_verify(const std::string& config_path, int modes, double width_over_gamma, double t_max,
               double dt, const std::string& out) {
  const ModelConfig config = load_or_default(config_path);
  const double gamma = config.reservoir.gamma;
  if (t_max <= 0.0) t_max = 5.0 / gamma;
  if (dt <= 0.0) dt = 1e-3 / gamma;
  const GlobalBasis basis = diagonalize(config.system, config.reservoir);

  // Discretized-reservoir propagation vs the enlarged-system closed form.
  const DiscretizedReservoir disc =
      DiscretizedReservoir::make(config.reservoir, modes, width_over_gamma * gamma);
  if (t_max > disc.recurrence_time())
    throw ValidationError("t-max exceeds the discrete-reservoir recurrence guard");
  std::vector<double> times;
  const int samples = 200;
  for (int i = 0; i <= samples; ++i) times.push_back(t_max * i / samples);
  const std::vector<Eigen::VectorXcd> blocks =
      evolve_friedrichs(config.initial, config.system, disc, times);
  double sup_error = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Eigen::VectorXcd psi_i =
        evolve_psi(config.initial, basis, config.reservoir, times[i]);
    Eigen::VectorXcd phases(basis.n());
    for (int a = 0; a < basis.n(); ++a)
      phases(a) = std::exp(cplx(0.0, -basis.energies(a) * times[i]));
    const Eigen::VectorXcd closed = basis.unitary * phases.cwiseProduct(psi_i).eval();
    sup_error = std::max(sup_error, (blocks[i] - closed).norm());
  }
  const bool friedrichs_pass = sup_error <= 1e-2;

  // Memory-kernel quadrature for psi vs the closed form.
  const std::vector<Eigen::VectorXcd> vol_psi =
      volterra_psi(config.initial, basis, config.reservoir, t_max, dt);
  double psi_error = 0.0;
  for (std::size_t j = 0; j < vol_psi.size(); ++j) {
    const double t = j * dt;
    const Eigen::VectorXcd psi_i = evolve_psi(config.initial, basis, config.reservoir, t);
    Eigen::VectorXcd phases(basis.n());
    for (int a = 0; a < basis.n(); ++a)
      phases(a) = std::exp(cplx(0.0, -basis.energies(a) * t));
    psi_error = std::max(psi_error, (vol_psi[j] - phases.cwiseProduct(psi_i).eval()).norm());
  }
  const bool psi_pass = psi_error <= 1e-6;

  // Memory-kernel quadrature for sigma vs the 3x3 matrix-exponential solution.
  const double sigma_t_max = std::min(t_max, 3.0 / gamma);
  const std::vector<Eigen::MatrixXcd> vol_sigma =
      volterra_sigma(config.initial, basis, config.reservoir, sigma_t_max, dt);
  std::vector<double> sigma_times;
  for (std::size_t j = 0; j < vol_sigma.size(); ++j) sigma_times.push_back(j * dt);
  const std::vector<ReducedState> born_states =
      evolve_born(config.initial, basis, config.reservoir, sigma_times);
  double sigma_error = 0.0;
  for (std::size_t j = 0; j < vol_sigma.size(); ++j) {
    const int n = basis.n();
    sigma_error = std::max(
        sigma_error,
        (vol_sigma[j] - born_states[j].rho.bottomRightCorner(n, n)).norm());
  }
  const bool sigma_pass = sigma_error <= 1e-6;

  // Triple point: all three population rates must agree pairwise there.
  const auto points = triple_point();
  const DirectComparison at_tp = compare_direct(points.first.de_over_g, ReservoirSpec{
                                                    1.0, points.first.gamma_over_g, 0.0});
  const double scale = std::max({at_tp.eta_exact, at_tp.eta_born, at_tp.eta_gksl});
  const double tp_residual = std::max({std::abs(at_tp.eta_exact - at_tp.eta_born),
                                       std::abs(at_tp.eta_exact - at_tp.eta_gksl),
                                       std::abs(at_tp.eta_born - at_tp.eta_gksl)}) /
                             scale;
  const bool tp_pass = tp_residual <= 1e-8;

  const bool pass = friedrichs_pass && psi_pass && sigma_pass && tp_pass;

  nlohmann::json j;
  j["K"] = disc.modes();
  j["W"] = disc.width;
  j["t_max"] = t_max;
  j["sup_error"] = sup_error;
  j["recurrence_time"] = disc.recurrence_time();
  j["pass"] = pass;
  j["volterra_psi"] = {{"dt", dt}, {"t_max", t_max}, {"max_error", psi_error}, {"pass", psi_pass}};
  j["volterra_sigma"] = {
      {"dt", dt}, {"t_max", sigma_t_max}, {"max_error", sigma_error}, {"pass", sigma_pass}};
  j["triple_point"] = {{"de_over_g", points.first.de_over_g},
                       {"gamma_over_g", points.first.gamma_over_g},
                       {"max_pairwise_rel", tp_residual},
                       {"pass", tp_pass}};
  emit(out, j.dump(2) + "\n");

  if (!pass) {
    std::cerr << "verify: tolerance breach (see report)\n";
    return 3;
  }
  return 0;
}

int cmd_triple_point(const std::string& out) {
  const auto points = triple_point();
  nlohmann::json j;
  j["points"] = {{{"de_over_g", points.first.de_over_g},
                  {"gamma_over_g", points.first.gamma_over_g}},
                 {{"de_over_g", points.second.de_over_g},
                  {"gamma_over_g", points.second.gamma_over_g}}};
  emit(out, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced dynamics of an (N+1)-level system in a Lorentzian reservoir: "
               "exact (pseudomode), memory-kernel, Redfield, and GKSL rates and evolutions"};
  app.require_subcommand(1);

  std::string config_path, out, format = "csv", method = "exact";
  std::string dims = "97x96", de_range = "-3:3", gamma_range = "0:8", pair_name = "both";
  double t_max = 5.0, dt = 0.01, tolerance = 0.15;
  int jobs = 1, modes = 2000;
  double width_over_gamma = 40.0;
  double verify_t_max = 0.0, verify_dt = 0.0;

  CLI::App* rates = app.add_subcommand("rates", "Tabulate decay/decoherence rates as JSON");
  rates->add_option("--config", config_path, "Model config JSON (default: resonant 1-level)");
  rates->add_option("--out", out, "Output path (default: stdout)");

  CLI::App* evolve = app.add_subcommand("evolve", "Evolve the reduced state on a time grid");
  evolve->add_option("--config", config_path, "Model config JSON (default: resonant 1-level)");
  evolve->add_option("--method", method, "exact | born | redfield | gksl")
      ->check(CLI::IsMember({"exact", "born", "redfield", "gksl"}));
  evolve->add_option("--t-max", t_max, "Final time (default 5)");
  evolve->add_option("--dt", dt, "Time step (default 0.01)");
  evolve->add_option("--out", out, "Output path (default: stdout)");
  evolve->add_option("--format", format, "csv | json (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* classify =
      app.add_subcommand("classify", "Region map I-VI of rate orderings (CSV + SVG)");
  classify->add_option("--grid", dims, "Grid size NxM: N detuning columns, M gamma rows");
  classify->add_option("--de-range", de_range, "dE/g range a:b (default -3:3)");
  classify->add_option("--gamma-range", gamma_range, "gamma/g range a:b, left-open (default 0:8)");
  classify->add_option("--jobs", jobs, "Worker threads (default 1)");
  classify->add_option("--out", out, "Output base path (writes <base>.csv, <base>.svg)")
      ->default_str("region");

  CLI::App* closeness =
      app.add_subcommand("closeness", "Map cells where two rates agree within tolerance");
  closeness->add_option("--grid", dims, "Grid size NxM: N detuning columns, M gamma rows");
  closeness->add_option("--de-range", de_range, "dE/g range a:b (default -3:3)");
  closeness->add_option("--gamma-range", gamma_range, "gamma/g range a:b, left-open (default 0:8)");
  closeness->add_option("--tolerance", tolerance, "Relative tolerance (default 0.15)");
  closeness->add_option("--pair", pair_name, "exact-born | exact-gksl | both (default both)")
      ->check(CLI::IsMember({"exact-born", "exact-gksl", "both"}));
  closeness->add_option("--jobs", jobs, "Worker threads (default 1)");
  closeness->add_option("--out", out, "Output base path (writes <base>-<pair>.csv/.svg)")
      ->default_str("closeness");

  CLI::App* verify = app.add_subcommand(
      "verify", "Check closed forms against discretized-reservoir and memory-kernel integrators");
  verify->add_option("--config", config_path, "Model config JSON (default: resonant 1-level)");
  verify->add_option("--modes", modes, "Reservoir modes K (default 2000)");
  verify->add_option("--bath-width", width_over_gamma,
                     "Discretization half-width in units of gamma (default 40)");
  verify->add_option("--t-max", verify_t_max, "Comparison horizon (default 5/gamma)");
  verify->add_option("--dt", verify_dt, "Quadrature step (default 1e-3/gamma)");
  verify->add_option("--out", out, "Report path (default: stdout)");

  CLI::App* triple = app.add_subcommand("triple-point", "Locate the rate-coincidence points");
  triple->add_option("--out", out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*rates) return cmd_rates(config_path, out);
    if (*evolve) return cmd_evolve(config_path, method, t_max, dt, out, format);
    if (*classify)
      return cmd_classify(dims, de_range, gamma_range, jobs, out.empty() ? "region" : out);
    if (*closeness)
      return cmd_closeness(dims, de_range, gamma_range, tolerance, pair_name, jobs,
                           out.empty() ? "closeness" : out);
    if (*verify)
      return cmd_verify(config_path, modes, width_over_gamma, verify_t_max, verify_dt, out);
    if (*triple) return cmd_triple_point(out);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
