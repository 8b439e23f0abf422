// io.cpp — CSV/JSON/SVG emitters and the time-series reader.
#include "lbath/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#ifndef LBATH_VERSION
#define LBATH_VERSION "0.0.0"
#endif

namespace lbath {

namespace {

// Shortest decimal string that parses back to the same double.
std::string fmt(double value) {
  char buffer[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
    if (std::strtod(buffer, nullptr) == value) break;
  }
  return buffer;
}

std::ofstream open_for_writing(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open for writing: " + path);
  return os;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

// ---------------- time-series CSV ----------------

void write_timeseries(std::ostream& os, const std::string& method, const ReservoirSpec& reservoir,
                      const std::vector<Eigen::VectorXcd>& psi,
                      const std::vector<ReducedState>& states) {
  if (psi.size() != states.size())
    throw ValidationError("write_timeseries: psi and state sequences differ in length");
  if (states.empty()) throw ValidationError("write_timeseries: empty sequence");
  const int n = states.front().n();

  os << "t";
  for (int a = 1; a <= n; ++a) os << ",psi_" << a << "_re,psi_" << a << "_im";
  for (int a = 1; a <= n; ++a)
    for (int b = a; b <= n; ++b) os << ",sigma_" << a << "_" << b << "_re,sigma_" << a << "_" << b << "_im";
  os << ",rho00\n";

  for (std::size_t row = 0; row < states.size(); ++row) {
    const ReducedState& state = states[row];
    os << fmt(state.time);
    for (int a = 0; a < n; ++a)
      os << ',' << fmt(psi[row](a).real()) << ',' << fmt(psi[row](a).imag());
    for (int a = 1; a <= n; ++a)
      for (int b = a; b <= n; ++b)
        os << ',' << fmt(state.rho(a, b).real()) << ',' << fmt(state.rho(a, b).imag());
    os << ',' << fmt(state.rho(0, 0).real()) << '\n';
  }

  os << "# method=" << method << '\n';
  os << "# n=" << n << " g=" << fmt(reservoir.g) << " gamma=" << fmt(reservoir.gamma)
     << " eps=" << fmt(reservoir.eps) << '\n';
  os << "# version=" << LBATH_VERSION << '\n';
}

void write_timeseries_file(const std::string& path, const std::string& method,
                           const ReservoirSpec& reservoir,
                           const std::vector<Eigen::VectorXcd>& psi,
                           const std::vector<ReducedState>& states) {
  auto os = open_for_writing(path);
  write_timeseries(os, method, reservoir, psi, states);
}

TimeSeries read_timeseries(std::istream& is) {
  TimeSeries series;
  std::string line;
  if (!std::getline(is, line)) throw ValidationError("read_timeseries: empty input");
  series.columns = split_csv(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::size_t start = 1;
      while (start < line.size() && line[start] == ' ') ++start;
      series.metadata.push_back(line.substr(start));
      continue;
    }
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != series.columns.size())
      throw ValidationError("read_timeseries: row with " + std::to_string(fields.size()) +
                            " fields, expected " + std::to_string(series.columns.size()));
    std::vector<double> row;
    row.reserve(fields.size());
    for (const std::string& field : fields) {
      double value = 0.0;
      std::size_t consumed = 0;
      try {
        value = std::stod(field, &consumed);
      } catch (const std::exception&) {
        throw ValidationError("read_timeseries: malformed number '" + field + "'");
      }
      if (consumed != field.size())
        throw ValidationError("read_timeseries: malformed number '" + field + "'");
      row.push_back(value);
    }
    series.rows.push_back(std::move(row));
  }
  return series;
}

TimeSeries read_timeseries_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open for reading: " + path);
  return read_timeseries(is);
}

// ---------------- rate tables ----------------

namespace {

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json vector_json(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

std::string rates_report_json(const RateTable& exact, const RateTable& born,
                              const RateTable& gksl, const std::vector<RateTable>& redfield) {
  const int n = exact.n();
  nlohmann::json j;
  j["n"] = n;

  nlohmann::json modes = nlohmann::json::array();
  for (int a = 0; a < n; ++a) {
    nlohmann::json mode;
    mode["alpha"] = a + 1;
    mode["eta_exact"] = exact.eta_alpha(a);
    mode["eta_born"] = born.eta_alpha(a);
    mode["eta_gksl"] = gksl.eta_alpha(a);
    nlohmann::json at;
    for (const RateTable& table : redfield) at[fmt(table.time)] = table.eta_alpha(a);
    mode["eta_redfield_at"] = std::move(at);
    modes.push_back(std::move(mode));
  }
  j["modes"] = std::move(modes);

  nlohmann::json alpha0;
  alpha0["exact"] = vector_json(exact.eta_alpha0);
  alpha0["born"] = vector_json(born.eta_alpha0);
  alpha0["gksl"] = vector_json(gksl.eta_alpha0);
  nlohmann::json alpha0_at;
  for (const RateTable& table : redfield) alpha0_at[fmt(table.time)] = vector_json(table.eta_alpha0);
  alpha0["redfield_at"] = std::move(alpha0_at);
  j["eta_alpha0"] = std::move(alpha0);

  nlohmann::json alphabeta;
  alphabeta["exact"] = matrix_json(exact.eta_alphabeta);
  alphabeta["born"] = matrix_json(born.eta_alphabeta);
  alphabeta["gksl"] = matrix_json(gksl.eta_alphabeta);
  nlohmann::json alphabeta_at;
  for (const RateTable& table : redfield)
    alphabeta_at[fmt(table.time)] = matrix_json(table.eta_alphabeta);
  alphabeta["redfield_at"] = std::move(alphabeta_at);
  j["eta_alphabeta"] = std::move(alphabeta);

  return j.dump(2) + "\n";
}

// ---------------- region / closeness maps ----------------

int count_disagreements(const std::vector<RegionCell>& cells) {
  int count = 0;
  for (const RegionCell& cell : cells)
    if (!cell.agree) ++count;
  return count;
}

void write_region_csv(std::ostream& os, const std::vector<RegionCell>& cells) {
  os << "dE_over_g,gamma_over_g,eta_exact,eta_born,eta_gksl,region_direct,region_predicate,agree\n";
  for (const RegionCell& cell : cells) {
    os << fmt(cell.de_over_g) << ',' << fmt(cell.gamma_over_g) << ',' << fmt(cell.eta_exact)
       << ',' << fmt(cell.eta_born) << ',' << fmt(cell.eta_gksl) << ',' << to_string(cell.direct)
       << ',' << to_string(cell.predicate) << ',' << (cell.agree ? 1 : 0) << '\n';
  }
  os << "# cells=" << cells.size() << " disagree=" << count_disagreements(cells) << '\n';
}

void write_region_csv_file(const std::string& path, const std::vector<RegionCell>& cells) {
  auto os = open_for_writing(path);
  write_region_csv(os, cells);
}

namespace {

const char* region_color(Region r) {
  switch (r) {
    case Region::I: return "#4e79a7";
    case Region::II: return "#59a14f";
    case Region::III: return "#f28e2b";
    case Region::IV: return "#e15759";
    case Region::V: return "#b07aa1";
    case Region::VI: return "#edc948";
    case Region::boundary: return "#bab0ac";
    case Region::none: return "#ffffff";
  }
  return "#ffffff";
}

struct SvgLayout {
  static constexpr double left = 70.0, top = 30.0, plot_w = 560.0, plot_h = 440.0;
  static constexpr double bottom_pad = 55.0;
  double legend_w;
  int n_de, n_gamma;

  double width() const { return left + plot_w + legend_w; }
  double height() const { return top + plot_h + bottom_pad; }
  double cell_w() const { return plot_w / n_de; }
  double cell_h() const { return plot_h / n_gamma; }
  double x(int i) const { return left + i * cell_w(); }
  double y(int j) const { return top + (n_gamma - 1 - j) * cell_h(); }
};

void svg_header(std::ostream& os, const SvgLayout& layout) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << layout.width() << "\" height=\""
     << layout.height() << "\" viewBox=\"0 0 " << layout.width() << ' ' << layout.height()
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
}

void svg_axes(std::ostream& os, const SvgLayout& layout, const GridSpec& grid) {
  const double x0 = layout.left, x1 = layout.left + layout.plot_w;
  const double y0 = layout.top, y1 = layout.top + layout.plot_h;
  os << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << layout.plot_w
     << "\" height=\"" << layout.plot_h << "\" fill=\"none\" stroke=\"#333333\"/>\n";
  const auto text = [&os](double x, double y, const std::string& s, const char* anchor) {
    os << "<text x=\"" << x << "\" y=\"" << y << "\" font-family=\"sans-serif\" font-size=\"13\""
       << " text-anchor=\"" << anchor << "\" fill=\"#333333\">" << s << "</text>\n";
  };
  text(x0, y1 + 18.0, fmt(grid.de_min), "middle");
  text(0.5 * (x0 + x1), y1 + 18.0, fmt(0.5 * (grid.de_min + grid.de_max)), "middle");
  text(x1, y1 + 18.0, fmt(grid.de_max), "middle");
  text(0.5 * (x0 + x1), y1 + 38.0, "dE/g", "middle");
  text(x0 - 8.0, y1 + 4.0, fmt(grid.gamma_at(0)), "end");
  text(x0 - 8.0, y0 + 4.0, fmt(grid.gamma_at(grid.n_gamma - 1)), "end");
  text(x0 - 8.0, y0 - 10.0, "gamma/g", "end");
}

}  // namespace

void write_region_svg(std::ostream& os, const GridSpec& grid,
                      const std::vector<RegionCell>& cells) {
  SvgLayout layout{150.0, grid.n_de, grid.n_gamma};
  svg_header(os, layout);
  for (std::size_t index = 0; index < cells.size(); ++index) {
    const int j = static_cast<int>(index) / grid.n_de;
    const int i = static_cast<int>(index) % grid.n_de;
    const char* color = region_color(cells[index].direct);
    os << "<rect x=\"" << layout.x(i) << "\" y=\"" << layout.y(j) << "\" width=\""
       << layout.cell_w() << "\" height=\"" << layout.cell_h() << "\" fill=\"" << color
       << "\" stroke=\"" << color << "\" stroke-width=\"0.4\"/>\n";
  }
  svg_axes(os, layout, grid);
  static constexpr Region kLegend[] = {Region::I,  Region::II, Region::III, Region::IV,
                                       Region::V,  Region::VI, Region::boundary};
  double y = layout.top + 10.0;
  const double x = layout.left + layout.plot_w + 20.0;
  for (Region r : kLegend) {
    os << "<rect x=\"" << x << "\" y=\"" << y - 11.0
       << "\" width=\"14\" height=\"14\" fill=\"" << region_color(r)
       << "\" stroke=\"#333333\" stroke-width=\"0.5\"/>\n";
    os << "<text x=\"" << x + 22.0 << "\" y=\"" << y
       << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#333333\">" << to_string(r)
       << "</text>\n";
    y += 22.0;
  }
  os << "</svg>\n";
}

void write_region_svg_file(const std::string& path, const GridSpec& grid,
                           const std::vector<RegionCell>& cells) {
  auto os = open_for_writing(path);
  write_region_svg(os, grid, cells);
}

const char* to_string(ClosenessPair pair) {
  return pair == ClosenessPair::exact_born ? "exact-born" : "exact-gksl";
}

void write_closeness_csv(std::ostream& os, const std::vector<ClosenessCell>& cells,
                         ClosenessPair pair, double tolerance) {
  os << "dE_over_g,gamma_over_g,eta_exact,eta_other,close\n";
  for (const ClosenessCell& cell : cells) {
    os << fmt(cell.de_over_g) << ',' << fmt(cell.gamma_over_g) << ',' << fmt(cell.eta_exact)
       << ',' << fmt(cell.eta_other) << ',' << (cell.close ? 1 : 0) << '\n';
  }
  std::size_t filled = 0;
  for (const ClosenessCell& cell : cells) filled += cell.close ? 1 : 0;
  os << "# pair=" << to_string(pair) << " tolerance=" << fmt(tolerance) << " filled=" << filled
     << " of=" << cells.size() << '\n';
}

void write_closeness_csv_file(const std::string& path, const std::vector<ClosenessCell>& cells,
                              ClosenessPair pair, double tolerance) {
  auto os = open_for_writing(path);
  write_closeness_csv(os, cells, pair, tolerance);
}

void write_closeness_svg(std::ostream& os, const GridSpec& grid,
                         const std::vector<ClosenessCell>& cells, ClosenessPair pair,
                         double tolerance) {
  SvgLayout layout{30.0, grid.n_de, grid.n_gamma};
  svg_header(os, layout);
  for (std::size_t index = 0; index < cells.size(); ++index) {
    if (!cells[index].close) continue;
    const int j = static_cast<int>(index) / grid.n_de;
    const int i = static_cast<int>(index) % grid.n_de;
    os << "<rect x=\"" << layout.x(i) << "\" y=\"" << layout.y(j) << "\" width=\""
       << layout.cell_w() << "\" height=\"" << layout.cell_h()
       << "\" fill=\"#4e79a7\" stroke=\"#4e79a7\" stroke-width=\"0.4\"/>\n";
  }
  svg_axes(os, layout, grid);
  os << "<text x=\"" << layout.left << "\" y=\"" << layout.top - 12.0
     << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#333333\">" << to_string(pair)
     << " within " << fmt(tolerance) << " * eta_exact</text>\n";
  os << "</svg>\n";
}

void write_closeness_svg_file(const std::string& path, const GridSpec& grid,
                              const std::vector<ClosenessCell>& cells, ClosenessPair pair,
                              double tolerance) {
  auto os = open_for_writing(path);
  write_closeness_svg(os, grid, cells, pair, tolerance);
}

// ---------------- oracle report ----------------

std::string oracle_report_json(const OracleReport& report) {
  nlohmann::json j;
  j["K"] = report.k_modes;
  j["W"] = report.width;
  j["t_max"] = report.t_max;
  j["sup_error"] = report.sup_error;
  j["recurrence_time"] = report.recurrence_time;
  j["pass"] = report.pass;
  return j.dump(2) + "\n";
}

}  // namespace lbath
