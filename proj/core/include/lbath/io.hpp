// io.hpp — artifact emission and ingestion: time-series CSV, rate-table JSON,
// region/closeness CSV + SVG, and the oracle report JSON.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lbath/classify.hpp"
#include "lbath/types.hpp"

namespace lbath {

// ---------------- time-series CSV ----------------
// Columns: t, psi_<a>_re, psi_<a>_im (a = 1..N), sigma_<a>_<b>_re,
// sigma_<a>_<b>_im (pairs a <= b, entry rho(a, b)), rho00. Doubles are written
// with 17 significant digits so re-reading reproduces them exactly. Trailing
// '#' comment lines carry method, parameters, and the library version.

void write_timeseries(std::ostream& os, const std::string& method, const ReservoirSpec& reservoir,
                      const std::vector<Eigen::VectorXcd>& psi,
                      const std::vector<ReducedState>& states);

void write_timeseries_file(const std::string& path, const std::string& method,
                           const ReservoirSpec& reservoir,
                           const std::vector<Eigen::VectorXcd>& psi,
                           const std::vector<ReducedState>& states);

struct TimeSeries {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> metadata;  // trailing comment lines, '#' stripped
};

TimeSeries read_timeseries(std::istream& is);
TimeSeries read_timeseries_file(const std::string& path);

// ---------------- rate tables ----------------
// JSON text with per-mode population rates, the eta_alpha0 and eta_alphabeta
// blocks for every method, and the time-dependent redfield tables keyed by
// their sampling times.
std::string rates_report_json(const RateTable& exact, const RateTable& born,
                              const RateTable& gksl, const std::vector<RateTable>& redfield);

// ---------------- region / closeness maps ----------------

int count_disagreements(const std::vector<RegionCell>& cells);

void write_region_csv(std::ostream& os, const std::vector<RegionCell>& cells);
void write_region_csv_file(const std::string& path, const std::vector<RegionCell>& cells);

// Fixed palette (documented in the README):
//   I #4e79a7, II #59a14f, III #f28e2b, IV #e15759, V #b07aa1, VI #edc948,
//   boundary #bab0ac, none white.
void write_region_svg(std::ostream& os, const GridSpec& grid,
                      const std::vector<RegionCell>& cells);
void write_region_svg_file(const std::string& path, const GridSpec& grid,
                           const std::vector<RegionCell>& cells);

void write_closeness_csv(std::ostream& os, const std::vector<ClosenessCell>& cells,
                         ClosenessPair pair, double tolerance);
void write_closeness_csv_file(const std::string& path, const std::vector<ClosenessCell>& cells,
                              ClosenessPair pair, double tolerance);

void write_closeness_svg(std::ostream& os, const GridSpec& grid,
                         const std::vector<ClosenessCell>& cells, ClosenessPair pair,
                         double tolerance);
void write_closeness_svg_file(const std::string& path, const GridSpec& grid,
                              const std::vector<ClosenessCell>& cells, ClosenessPair pair,
                              double tolerance);

const char* to_string(ClosenessPair pair);

// ---------------- oracle report ----------------

struct OracleReport {
  int k_modes = 0;
  double width = 0.0;
  double t_max = 0.0;
  double sup_error = 0.0;
  double recurrence_time = 0.0;
  bool pass = false;
};

// {"K":…, "W":…, "t_max":…, "sup_error":…, "recurrence_time":…, "pass":…}
std::string oracle_report_json(const OracleReport& report);

}  // namespace lbath
