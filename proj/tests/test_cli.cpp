// test_cli.cpp — end-to-end checks of the command-line tool, spawned from the
// path in the LBATH_CLI environment variable.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lbath/io.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("LBATH_CLI");
  REQUIRE_MESSAGE(bin != nullptr, "LBATH_CLI must point at the built binary");
  const std::string cmd =
      std::string(bin) + " " + args + " > cli_stdout.tmp 2> cli_stderr.tmp";
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp("cli_stdout.tmp");
  result.err = slurp("cli_stderr.tmp");
  std::remove("cli_stdout.tmp");
  std::remove("cli_stderr.tmp");
  return result;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  REQUIRE(os.good());
  os << text;
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

constexpr const char* kGamma6Config =
    R"({"n":1,"h_s":[[[0,0]]],"reservoir":{"g":1,"gamma":6,"eps":0},)"
    R"("initial":{"psi0":[0,0],"psi":[[1,0]]}})";
constexpr const char* kDecoupledConfig =
    R"({"n":1,"h_s":[[[0,0]]],"reservoir":{"g":0,"gamma":2,"eps":0},)"
    R"("initial":{"psi0":[0,0],"psi":[[1,0]]}})";

}  // namespace

TEST_CASE("rates: default resonant model") {
  const RunResult r = run_cli("rates");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("n").get<int>() == 1);
  const auto& mode = j.at("modes").at(0);
  CHECK(mode.at("eta_exact").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mode.at("eta_born").get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mode.at("eta_gksl").get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(mode.at("eta_redfield_at").size() == 3);
}

TEST_CASE("rates: overdamped and decoupled configs") {
  write_file("cli_gamma6.json", kGamma6Config);
  const RunResult r6 = run_cli("rates --config cli_gamma6.json");
  REQUIRE(r6.code == 0);
  const json j6 = json::parse(r6.out);
  const auto& mode6 = j6.at("modes").at(0);
  CHECK(mode6.at("eta_exact").get<double>() ==
        doctest::Approx(3.0 - std::sqrt(5.0)).epsilon(1e-12));
  CHECK(mode6.at("eta_born").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mode6.at("eta_gksl").get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  std::remove("cli_gamma6.json");

  write_file("cli_decoupled.json", kDecoupledConfig);
  const RunResult r0 = run_cli("rates --config cli_decoupled.json");
  REQUIRE(r0.code == 0);
  const json j0 = json::parse(r0.out);
  const auto& mode0 = j0.at("modes").at(0);
  CHECK(mode0.at("eta_exact").get<double>() == doctest::Approx(0.0));
  CHECK(mode0.at("eta_born").get<double>() == doctest::Approx(0.0));
  CHECK(mode0.at("eta_gksl").get<double>() == doctest::Approx(0.0));
  std::remove("cli_decoupled.json");
}

TEST_CASE("rates: --out writes the report to a file") {
  const RunResult r = run_cli("rates --out cli_rates_out.json");
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const json j = json::parse(slurp("cli_rates_out.json"));
  CHECK(j.contains("modes"));
  std::remove("cli_rates_out.json");
}

TEST_CASE("evolve: t = 0 row and exact/born psi agreement") {
  const RunResult exact = run_cli("evolve --method exact --t-max 1 --dt 0.25");
  REQUIRE(exact.code == 0);
  std::istringstream exact_is(exact.out);
  const lbath::TimeSeries exact_series = lbath::read_timeseries(exact_is);
  REQUIRE(exact_series.rows.size() == 5);
  CHECK(exact_series.rows[0][0] == 0.0);
  CHECK(exact_series.rows[0][1] == doctest::Approx(1.0).epsilon(1e-14));  // psi_1_re
  CHECK(exact_series.rows[0][2] == doctest::Approx(0.0));                 // psi_1_im
  CHECK(exact_series.rows[0].back() == doctest::Approx(0.0));             // rho00

  const RunResult born = run_cli("evolve --method born --t-max 1 --dt 0.25");
  REQUIRE(born.code == 0);
  std::istringstream born_is(born.out);
  const lbath::TimeSeries born_series = lbath::read_timeseries(born_is);
  REQUIRE(born_series.rows.size() == exact_series.rows.size());
  for (std::size_t k = 0; k < exact_series.rows.size(); ++k) {
    CHECK(std::abs(born_series.rows[k][1] - exact_series.rows[k][1]) < 1e-12);
    CHECK(std::abs(born_series.rows[k][2] - exact_series.rows[k][2]) < 1e-12);
  }
}

TEST_CASE("evolve: gksl populations are log-linear at rate J") {
  const RunResult r = run_cli("evolve --method gksl --t-max 3 --dt 0.5");
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  const lbath::TimeSeries series = lbath::read_timeseries(is);
  // Default resonant model: J = 4 g^2 / gamma = 2, sigma_11(t) = e^{-2t}.
  for (const auto& row : series.rows) {
    const double t = row[0];
    const double population = row[3];  // sigma_1_1_re
    CHECK(std::abs(std::log(population) + 2.0 * t) < 1e-9);
  }
}

TEST_CASE("evolve: json format re-expresses the same table") {
  const RunResult r = run_cli("evolve --t-max 0.5 --dt 0.25 --format json");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j.contains("columns"));
  REQUIRE(j.contains("rows"));
  REQUIRE(j.contains("metadata"));
  CHECK(j.at("columns").at(0).get<std::string>() == "t");
  CHECK(j.at("rows").size() == 3);
}

TEST_CASE("exit codes: usage, validation, and help") {
  CHECK(run_cli("evolve --method hamiltonian").code == 1);  // rejected by the option check
  CHECK(run_cli("rates --config no_such_config.json").code == 2);
  CHECK(run_cli("classify --grid 5").code == 2);
  CHECK(run_cli("evolve --t-max -1").code == 2);
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("").code == 1);  // a subcommand is required
}

TEST_CASE("classify: writes csv and svg, reports disagreements") {
  const RunResult r = run_cli("classify --grid 9x8 --jobs 2 --out cli_region");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("region map: 72 cells") != std::string::npos);
  CHECK(r.out.find("disagreements (reported, nonfatal)") != std::string::npos);
  CHECK(file_exists("cli_region.csv"));
  CHECK(file_exists("cli_region.svg"));
  std::remove("cli_region.csv");
  std::remove("cli_region.svg");
}

TEST_CASE("closeness: single pair writes only that pair") {
  const RunResult r =
      run_cli("closeness --grid 9x8 --pair exact-born --out cli_close");
  REQUIRE(r.code == 0);
  CHECK(file_exists("cli_close-exact-born.csv"));
  CHECK(file_exists("cli_close-exact-born.svg"));
  CHECK(!file_exists("cli_close-exact-gksl.csv"));
  std::remove("cli_close-exact-born.csv");
  std::remove("cli_close-exact-born.svg");
}

TEST_CASE("triple-point: both mirror points") {
  const RunResult r = run_cli("triple-point");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j.at("points").size() == 2);
  const double de0 = j.at("points").at(0).at("de_over_g").get<double>();
  const double de1 = j.at("points").at(1).at("de_over_g").get<double>();
  CHECK(de0 == doctest::Approx(0.549).epsilon(0.05));
  CHECK(de1 == doctest::Approx(-de0).epsilon(1e-9));
  CHECK(j.at("points").at(0).at("gamma_over_g").get<double>() ==
        doctest::Approx(3.547).epsilon(0.05));
}

TEST_CASE("verify: full oracle run passes and reports the documented keys") {
  const RunResult r = run_cli("verify --out cli_verify.json");
  CHECK(r.code == 0);
  const json j = json::parse(slurp("cli_verify.json"));
  for (const char* key : {"K", "W", "t_max", "sup_error", "recurrence_time", "pass"})
    CHECK(j.contains(key));
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("K").get<int>() == 2000);
  CHECK(j.at("sup_error").get<double>() <= 1e-2);
  CHECK(j.at("volterra_psi").at("pass").get<bool>());
  CHECK(j.at("volterra_sigma").at("pass").get<bool>());
  CHECK(j.at("triple_point").at("pass").get<bool>());
  std::remove("cli_verify.json");
}

TEST_CASE("verify: recurrence guard rejects over-long horizons") {
  // K = 200, W = 40 gamma = 80 -> recurrence 0.625 < default t_max 2.5.
  const RunResult r = run_cli("verify --modes 200");
  CHECK(r.code == 2);
  CHECK(r.err.find("recurrence") != std::string::npos);
}
