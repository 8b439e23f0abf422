// test_io.cpp — CSV/JSON/SVG emission and the CSV reader: exact round-trips,
// schema checks, palette usage, and error handling.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "lbath/born.hpp"
#include "lbath/exact.hpp"
#include "lbath/io.hpp"
#include "lbath/model.hpp"
#include "lbath/redfield.hpp"

using namespace lbath;

namespace {

struct Fixture {
  ReservoirSpec reservoir{1.0, 2.0, 0.0};
  GlobalBasis basis;
  InitialState state;

  Fixture() {
    SystemSpec spec;
    spec.h_s = Eigen::MatrixXcd::Zero(2, 2);
    spec.h_s(0, 0) = 0.3;
    spec.h_s(1, 1) = -0.4;
    basis = diagonalize(spec, reservoir);
    state.psi0 = cplx(0.6, 0.0);
    state.psi = Eigen::VectorXcd::Zero(2);
    state.psi(0) = cplx(0.0, 0.48);
    state.psi(1) = cplx(0.64, 0.0);
    state.validate();
  }
};

}  // namespace

TEST_CASE("time-series CSV round-trips bit-exactly") {
  Fixture f;
  const std::vector<double> times{0.0, 0.37, 1.119};
  const auto states = evolve_exact(f.state, f.basis, f.reservoir, times);
  std::vector<Eigen::VectorXcd> psi;
  for (double t : times) psi.push_back(evolve_psi(f.state, f.basis, f.reservoir, t));

  std::ostringstream os;
  write_timeseries(os, "exact", f.reservoir, psi, states);
  const std::string text = os.str();

  std::istringstream is(text);
  const TimeSeries series = read_timeseries(is);

  // Header: t + 2 psi columns per level + 2 per upper-triangle sigma entry + rho00.
  REQUIRE(series.columns.size() == 1 + 4 + 6 + 1);
  CHECK(series.columns[0] == "t");
  CHECK(series.columns[1] == "psi_1_re");
  CHECK(series.columns[2] == "psi_1_im");
  CHECK(series.columns.back() == "rho00");

  REQUIRE(series.rows.size() == times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto& row = series.rows[k];
    REQUIRE(row.size() == series.columns.size());
    CHECK(row[0] == times[k]);  // %.17g writes doubles losslessly
    CHECK(row[1] == psi[k](0).real());
    CHECK(row[2] == psi[k](0).imag());
    CHECK(row.back() == states[k].rho(0, 0).real());
  }

  REQUIRE(series.metadata.size() >= 3);
  CHECK(series.metadata[0] == "method=exact");
  CHECK(series.metadata[1].find("n=2") == 0);
  CHECK(series.metadata[1].find("gamma=2") != std::string::npos);
  CHECK(series.metadata[2].find("version=") == 0);
}

TEST_CASE("read_timeseries rejects malformed rows") {
  std::istringstream is("t,psi_1_re\n0.0,1.0\n0.5\n");
  CHECK_THROWS_AS(read_timeseries(is), ValidationError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_timeseries(empty), ValidationError);
  std::istringstream bad_number("t,x\n0.0,abc\n");
  CHECK_THROWS_AS(read_timeseries(bad_number), ValidationError);
}

TEST_CASE("rates report JSON carries all four methods") {
  Fixture f;
  const RateTable exact = exact_rates(f.basis, f.reservoir);
  const RateTable born = born_rates(f.basis, f.reservoir);
  const RateTable gksl = gksl_rates(f.basis, f.reservoir);
  std::vector<RateTable> redfield;
  for (double t : {0.25, 0.5, 1.0}) redfield.push_back(redfield_rates(f.basis, f.reservoir, t));

  const std::string text = rates_report_json(exact, born, gksl, redfield);
  const nlohmann::json j = nlohmann::json::parse(text);

  CHECK(j.at("n").get<int>() == 2);
  REQUIRE(j.at("modes").is_array());
  REQUIRE(j.at("modes").size() == 2);
  const auto& mode = j.at("modes").at(0);
  CHECK(mode.at("alpha").get<int>() == 1);
  CHECK(mode.at("eta_exact").get<double>() == doctest::Approx(exact.eta_alpha(0)));
  CHECK(mode.at("eta_born").get<double>() == doctest::Approx(born.eta_alpha(0)));
  CHECK(mode.at("eta_gksl").get<double>() == doctest::Approx(gksl.eta_alpha(0)));
  CHECK(mode.at("eta_redfield_at").size() == 3);

  const auto& eta0 = j.at("eta_alpha0");
  REQUIRE(eta0.at("exact").size() == 2);
  CHECK(eta0.at("exact").at(0).get<double>() == doctest::Approx(exact.eta_alpha0(0)));
  const auto& etaab = j.at("eta_alphabeta");
  REQUIRE(etaab.at("exact").size() == 2);
  CHECK(etaab.at("exact").at(0).at(1).get<double>() ==
        doctest::Approx(exact.eta_alphabeta(0, 1)));
}

TEST_CASE("region CSV schema and the disagreement counter") {
  GridSpec grid;
  grid.n_de = 5;
  grid.n_gamma = 4;
  const auto cells = region_map(grid);

  std::ostringstream os;
  write_region_csv(os, cells);
  const std::string text = os.str();

  std::istringstream is(text);
  std::string header;
  std::getline(is, header);
  CHECK(header ==
        "dE_over_g,gamma_over_g,eta_exact,eta_born,eta_gksl,region_direct,region_predicate,agree");

  int rows = 0;
  std::string line;
  std::string trailer;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      trailer = line;
      continue;
    }
    ++rows;
  }
  CHECK(rows == static_cast<int>(cells.size()));
  CHECK(trailer.find("cells=20") != std::string::npos);
  const int disagreements = count_disagreements(cells);
  CHECK(trailer.find("disagree=" + std::to_string(disagreements)) != std::string::npos);

  // First data row corresponds to cells[0] with the region spelled out.
  std::istringstream again(text);
  std::getline(again, line);  // header
  std::getline(again, line);
  CHECK(line.find(to_string(cells[0].direct)) != std::string::npos);
}

TEST_CASE("region SVG uses the documented palette") {
  GridSpec grid;
  grid.n_de = 13;
  grid.n_gamma = 12;
  const auto cells = region_map(grid);

  std::ostringstream os;
  write_region_svg(os, grid, cells);
  const std::string svg = os.str();

  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("dE/g") != std::string::npos);
  CHECK(svg.find("gamma/g") != std::string::npos);

  // Regions present on this grid must appear with their palette color.
  const struct {
    Region region;
    const char* color;
  } palette[] = {
      {Region::I, "#4e79a7"},   {Region::II, "#59a14f"}, {Region::III, "#f28e2b"},
      {Region::IV, "#e15759"},  {Region::V, "#b07aa1"},  {Region::VI, "#edc948"},
      {Region::boundary, "#bab0ac"},
  };
  for (const auto& entry : palette) {
    bool present = false;
    for (const RegionCell& cell : cells)
      if (cell.direct == entry.region) present = true;
    if (present) CHECK(svg.find(entry.color) != std::string::npos);
  }
  // The legend always names the six regions.
  for (const char* label : {"I", "II", "III", "IV", "V", "VI"})
    CHECK(svg.find(label) != std::string::npos);
}

TEST_CASE("closeness CSV and SVG") {
  GridSpec grid;
  grid.n_de = 9;
  grid.n_gamma = 8;
  const auto cells = closeness_map(grid, 0.15, ClosenessPair::exact_born);

  std::ostringstream os;
  write_closeness_csv(os, cells, ClosenessPair::exact_born, 0.15);
  const std::string text = os.str();
  std::istringstream is(text);
  std::string header;
  std::getline(is, header);
  CHECK(header == "dE_over_g,gamma_over_g,eta_exact,eta_other,close");
  CHECK(text.find("# pair=exact-born tolerance=0.15") != std::string::npos);

  int filled = 0;
  for (const ClosenessCell& cell : cells) filled += cell.close;
  CHECK(text.find("filled=" + std::to_string(filled)) != std::string::npos);

  std::ostringstream svg_os;
  write_closeness_svg(svg_os, grid, cells, ClosenessPair::exact_born, 0.15);
  const std::string svg = svg_os.str();
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("exact-born") != std::string::npos);
  CHECK(svg.find("0.15") != std::string::npos);

  CHECK(std::string(to_string(ClosenessPair::exact_born)) == "exact-born");
  CHECK(std::string(to_string(ClosenessPair::exact_gksl)) == "exact-gksl");
}

TEST_CASE("oracle report JSON schema") {
  OracleReport report;
  report.k_modes = 2000;
  report.width = 80.0;
  report.t_max = 5.0;
  report.sup_error = 3.25e-4;
  report.recurrence_time = 6.25;
  report.pass = true;

  const nlohmann::json j = nlohmann::json::parse(oracle_report_json(report));
  CHECK(j.at("K").get<int>() == 2000);
  CHECK(j.at("W").get<double>() == doctest::Approx(80.0));
  CHECK(j.at("t_max").get<double>() == doctest::Approx(5.0));
  CHECK(j.at("sup_error").get<double>() == doctest::Approx(3.25e-4));
  CHECK(j.at("recurrence_time").get<double>() == doctest::Approx(6.25));
  CHECK(j.at("pass").get<bool>());
}

TEST_CASE("file writers refuse unwritable paths") {
  const std::vector<RegionCell> cells;
  CHECK_THROWS_AS(write_region_csv_file("/nonexistent_dir/out.csv", cells), ValidationError);
  OracleReport report;
  GridSpec grid;
  CHECK_THROWS_AS(write_region_svg_file("/nonexistent_dir/out.svg", grid, cells),
                  ValidationError);
}

TEST_CASE("time-series file round-trip") {
  Fixture f;
  const std::vector<double> times{0.0, 0.5};
  const auto states = evolve_exact(f.state, f.basis, f.reservoir, times);
  std::vector<Eigen::VectorXcd> psi;
  for (double t : times) psi.push_back(evolve_psi(f.state, f.basis, f.reservoir, t));

  const std::string path = "io_roundtrip_tmp.csv";
  write_timeseries_file(path, "exact", f.reservoir, psi, states);
  const TimeSeries series = read_timeseries_file(path);
  CHECK(series.rows.size() == 2);
  CHECK(series.rows[1][0] == 0.5);
  std::remove(path.c_str());

  CHECK_THROWS_AS(read_timeseries_file("missing_file.csv"), ValidationError);
}
