// classify.cpp — direct rate orderings, printed sign predicates, region and
// closeness maps, and the triple-point solver.
#include "lbath/classify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "lbath/born.hpp"
#include "lbath/exact.hpp"
#include "lbath/model.hpp"

namespace lbath {

const char* to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
    case Region::V: return "V";
    case Region::VI: return "VI";
    case Region::boundary: return "boundary";
    case Region::none: return "none";
  }
  return "none";
}

// ---------------- sign-condition polynomials ----------------

namespace {

struct Term {
  double coeff;
  int iu, iv;
};

// clang-format off
constexpr Term kF1[] = {
    {-24576, 3, 1}, {-10240, 2, 2}, {32768, 2, 1}, {-512, 1, 3},
    {128, 0, 4}, {-2048, 0, 3}, {8192, 0, 2}};
constexpr Term kF2[] = {
    {2304, 5, 0}, {6400, 4, 1}, {30720, 4, 0}, {2912, 3, 2}, {40448, 3, 1},
    {143104, 3, 0}, {400, 2, 3}, {-10112, 2, 2}, {35264, 2, 1}, {256000, 2, 0},
    {9, 1, 4}, {-480, 1, 3}, {9232, 1, 2}, {-67584, 1, 1}, {64512, 1, 0},
    {36, 0, 3}, {-1920, 0, 2}, {33984, 0, 1}, {-200704, 0, 0}};
constexpr Term kF3[] = {
    {256, 4, 0}, {256, 3, 1}, {-256, 3, 0}, {96, 2, 2}, {-704, 2, 1},
    {-1024, 2, 0}, {16, 1, 3}, {-304, 1, 2}, {1536, 1, 1},
    {1, 0, 4}, {-36, 0, 3}, {448, 0, 2}, {-2048, 0, 1}};
constexpr Term kF4[] = {{-16, 2, 0}, {-8, 0, 1}, {1, 0, 2}};
// clang-format on

double evaluate_terms(const Term* terms, std::size_t count, double u, double v) {
  double pu[6], pv[5];
  pu[0] = pv[0] = 1.0;
  for (int i = 1; i < 6; ++i) pu[i] = pu[i - 1] * u;
  for (int i = 1; i < 5; ++i) pv[i] = pv[i - 1] * v;
  double sum = 0.0, compensation = 0.0;  // Kahan summation
  for (std::size_t k = 0; k < count; ++k) {
    const double term = terms[k].coeff * pu[terms[k].iu] * pv[terms[k].iv];
    const double y = term - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

double poly_F(int k, double u, double v) {
  switch (k) {
    case 1: return evaluate_terms(kF1, std::size(kF1), u, v);
    case 2: return evaluate_terms(kF2, std::size(kF2), u, v);
    case 3: return evaluate_terms(kF3, std::size(kF3), u, v);
    case 4: return evaluate_terms(kF4, std::size(kF4), u, v);
    default: throw ValidationError("poly_F: k must be 1..4 (got " + std::to_string(k) + ")");
  }
}

bool routh_hurwitz_shifted(double a1, double a2, double a3, double x) {
  const double shifted0 = a3 + a2 * x + a1 * x * x + x * x * x;
  return a1 > -3.0 * x &&
         (a1 + 3.0 * x) * (a2 + 2.0 * a1 * x + 3.0 * x * x) > shifted0 && shifted0 > 0.0;
}

// ---------------- direct comparison ----------------

namespace {

enum class Ordering { less, equal, greater, indeterminate };

Ordering order_of(double lhs, double rhs, double tolerance) {
  if (std::abs(lhs - rhs) <= tolerance) return Ordering::equal;
  return lhs < rhs ? Ordering::less : Ordering::greater;
}

// exact_vs_born / exact_vs_gksl / born_vs_gksl -> region label
Region combine(Ordering eb, Ordering eg, Ordering bg) {
  if (eb == Ordering::indeterminate || eg == Ordering::indeterminate ||
      bg == Ordering::indeterminate)
    return Region::none;
  if (eb == Ordering::equal || eg == Ordering::equal || bg == Ordering::equal)
    return Region::boundary;
  const bool exact_above_born = (eb == Ordering::greater);
  const bool exact_above_gksl = (eg == Ordering::greater);
  const bool born_above_gksl = (bg == Ordering::greater);
  if (exact_above_born && exact_above_gksl) return born_above_gksl ? Region::II : Region::I;
  if (exact_above_born && !exact_above_gksl)
    return born_above_gksl ? Region::none : Region::III;  // cyclic if born > gksl here
  if (!exact_above_born && exact_above_gksl)
    return born_above_gksl ? Region::IV : Region::none;
  return born_above_gksl ? Region::VI : Region::V;
}

double born_population_rate(double detuning, const ReservoirSpec& reservoir) {
  const std::array<cplx, 3> roots = solve_cubic(char_poly(detuning, detuning, reservoir));
  double rate = std::numeric_limits<double>::infinity();
  for (const cplx& z : roots) rate = std::min(rate, std::abs(z.real()));
  return rate;
}

// Deterministic parallel-for: evaluates body(i) for i in [0, count) across
// `jobs` threads; each index writes only its own output slot.
template <class Body>
void parallel_cells(int count, int jobs, Body&& body) {
  jobs = std::clamp(jobs, 1, count > 0 ? count : 1);
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  for (int w = 0; w < jobs; ++w) {
    const int begin = static_cast<int>(static_cast<long>(count) * w / jobs);
    const int end = static_cast<int>(static_cast<long>(count) * (w + 1) / jobs);
    workers.emplace_back([&, w, begin, end] {
      try {
        for (int i = begin; i < end; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& worker : workers) worker.join();
  for (const auto& error : errors)
    if (error) std::rethrow_exception(error);
}

}  // namespace

DirectComparison compare_direct(double detuning, const ReservoirSpec& reservoir) {
  reservoir.validate();
  DirectComparison out;
  const cplx plus = block_eigenvalues(detuning, reservoir).first;
  out.eta0_exact = -plus.real();
  out.eta_exact = -2.0 * plus.real();
  out.eta_born = born_population_rate(detuning, reservoir);
  const double j = spectral_density(reservoir, reservoir.eps + detuning);
  out.eta0_gksl = 0.5 * j;
  out.eta_gksl = j;

  const double tolerance = 1e-9 * std::max({out.eta_exact, out.eta_born, out.eta_gksl});
  out.region = combine(order_of(out.eta_exact, out.eta_born, tolerance),
                       order_of(out.eta_exact, out.eta_gksl, tolerance),
                       order_of(out.eta_born, out.eta_gksl, tolerance));
  return out;
}

Region predicate_region(double detuning, const ReservoirSpec& reservoir) {
  reservoir.validate();
  const double g = reservoir.g;
  const double u = (detuning / g) * (detuning / g);
  const double v = (reservoir.gamma / g) * (reservoir.gamma / g);
  const double f1 = poly_F(1, u, v), f2 = poly_F(2, u, v);
  const double f3 = poly_F(3, u, v), f4 = poly_F(4, u, v);
  const double abs_de = std::abs(detuning);

  // exact vs born: sign of F2 (positive means exact < born)
  const Ordering eb =
      f2 > 0.0 ? Ordering::less : (f2 < 0.0 ? Ordering::greater : Ordering::equal);

  // exact vs gksl, branches in stated order
  Ordering eg = Ordering::indeterminate;
  if (f1 > 0.0 || reservoir.gamma < std::sqrt(8.0) * g) eg = Ordering::less;
  else if (f1 == 0.0) eg = Ordering::equal;
  else if (f1 < 0.0 && reservoir.gamma > std::sqrt(8.0) * g) eg = Ordering::greater;

  // born vs gksl, branches in stated order
  Ordering bg = Ordering::indeterminate;
  if (f3 > 0.0 && f4 > 0.0) bg = Ordering::less;
  else if ((f3 == 0.0 && abs_de <= 0.5 * std::sqrt(3.0) * g) ||
           (f4 == 0.0 && abs_de > 0.5 * std::sqrt(3.0) * g))
    bg = Ordering::equal;
  else if (f3 < 0.0 || f4 < 0.0) bg = Ordering::greater;

  return combine(eb, eg, bg);
}

void GridSpec::validate() const {
  if (n_de < 2 || n_gamma < 2)
    throw ValidationError("GridSpec: need at least 2 points per axis");
  if (!(de_max > de_min)) throw ValidationError("GridSpec: de range is empty");
  if (!(gamma_max > gamma_min)) throw ValidationError("GridSpec: gamma range is empty");
  if (!(gamma_at(0) > 0.0)) throw ValidationError("GridSpec: gamma must stay positive");
}

std::vector<RegionCell> region_map(const GridSpec& grid, int jobs) {
  grid.validate();
  std::vector<RegionCell> cells(static_cast<std::size_t>(grid.n_de) * grid.n_gamma);
  parallel_cells(static_cast<int>(cells.size()), jobs, [&](int index) {
    const int j = index / grid.n_de;  // gamma row
    const int i = index % grid.n_de;  // de column
    RegionCell& cell = cells[index];
    cell.de_over_g = grid.de_at(i);
    cell.gamma_over_g = grid.gamma_at(j);
    ReservoirSpec reservoir;
    reservoir.g = 1.0;
    reservoir.gamma = cell.gamma_over_g;
    reservoir.eps = 0.0;
    const DirectComparison direct = compare_direct(cell.de_over_g, reservoir);
    cell.eta_exact = direct.eta_exact;
    cell.eta_born = direct.eta_born;
    cell.eta_gksl = direct.eta_gksl;
    cell.direct = direct.region;
    cell.predicate = predicate_region(cell.de_over_g, reservoir);
    cell.agree = (cell.direct == cell.predicate);
  });
  return cells;
}

std::pair<TriplePoint, TriplePoint> triple_point(double g) {
  if (!(g > 0.0)) throw ValidationError("triple_point: g must be > 0");

  // Dimensionless residuals (relative rate differences) at (x, y) = (dE/g, gamma/g).
  auto residual = [&](double x, double y, double* r) {
    ReservoirSpec reservoir;
    reservoir.g = g;
    reservoir.gamma = y * g;
    reservoir.eps = 0.0;
    const DirectComparison c = compare_direct(x * g, reservoir);
    r[0] = (c.eta_exact - c.eta_born) / c.eta_exact;
    r[1] = (c.eta_exact - c.eta_gksl) / c.eta_exact;
  };

  double x = 0.55, y = 3.55;
  double r[2];
  residual(x, y, r);
  for (int iter = 0; iter < 100; ++iter) {
    const double size = std::max(std::abs(r[0]), std::abs(r[1]));
    if (size < 1e-12) {
      TriplePoint a{std::abs(x), y};
      TriplePoint b{-std::abs(x), y};
      return {a, b};
    }
    // forward-difference Jacobian
    const double h = 1e-6;
    double rx[2], ry[2];
    residual(x + h, y, rx);
    residual(x, y + h, ry);
    const double j00 = (rx[0] - r[0]) / h, j01 = (ry[0] - r[0]) / h;
    const double j10 = (rx[1] - r[1]) / h, j11 = (ry[1] - r[1]) / h;
    const double det = j00 * j11 - j01 * j10;
    if (std::abs(det) < 1e-14)
      throw NumericalError("triple_point: singular Jacobian at (" + std::to_string(x) + ", " +
                           std::to_string(y) + ")");
    const double dx = -(j11 * r[0] - j01 * r[1]) / det;
    const double dy = -(-j10 * r[0] + j00 * r[1]) / det;

    const double old_norm = std::hypot(r[0], r[1]);
    double damping = 1.0;
    bool accepted = false;
    for (int attempt = 0; attempt < 25; ++attempt, damping *= 0.5) {
      const double xn = x + damping * dx;
      const double yn = y + damping * dy;
      if (!(yn > 0.0)) continue;
      double rn[2];
      residual(xn, yn, rn);
      if (std::hypot(rn[0], rn[1]) < old_norm) {
        x = xn;
        y = yn;
        r[0] = rn[0];
        r[1] = rn[1];
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw NumericalError("triple_point: no descent step from (" + std::to_string(x) + ", " +
                           std::to_string(y) + "), residuals (" + std::to_string(r[0]) + ", " +
                           std::to_string(r[1]) + ")");
  }
  throw NumericalError("triple_point: no convergence; last iterate (" + std::to_string(x) +
                       ", " + std::to_string(y) + ")");
}

SufficientVerdict sufficient_conditions(double detuning, const ReservoirSpec& reservoir) {
  reservoir.validate();
  const double g = reservoir.g;
  // |dE|/g threshold: sqrt((-4 + cbrt(44 - 3 sqrt177) + cbrt(44 + 3 sqrt177)) / 3)
  const double s177 = 3.0 * std::sqrt(177.0);
  const double threshold = std::sqrt((-4.0 + std::cbrt(44.0 - s177) + std::cbrt(44.0 + s177)) / 3.0);
  if (reservoir.gamma > std::sqrt(64.0 / 3.0) * g || std::abs(detuning) > threshold * g)
    return SufficientVerdict::exact_less;
  const double s = 2.0 * g * g - 4.0 * detuning * detuning;
  if (s >= 0.0 && reservoir.gamma <= 3.0 * std::sqrt(s)) return SufficientVerdict::exact_greater;
  return SufficientVerdict::inconclusive;
}

std::vector<ClosenessCell> closeness_map(const GridSpec& grid, double tolerance,
                                         ClosenessPair pair, int jobs) {
  grid.validate();
  if (!(tolerance >= 0.0)) throw ValidationError("closeness_map: tolerance must be >= 0");
  std::vector<ClosenessCell> cells(static_cast<std::size_t>(grid.n_de) * grid.n_gamma);
  parallel_cells(static_cast<int>(cells.size()), jobs, [&](int index) {
    const int j = index / grid.n_de;
    const int i = index % grid.n_de;
    ClosenessCell& cell = cells[index];
    cell.de_over_g = grid.de_at(i);
    cell.gamma_over_g = grid.gamma_at(j);
    ReservoirSpec reservoir;
    reservoir.g = 1.0;
    reservoir.gamma = cell.gamma_over_g;
    reservoir.eps = 0.0;
    const DirectComparison direct = compare_direct(cell.de_over_g, reservoir);
    cell.eta_exact = direct.eta_exact;
    cell.eta_other = (pair == ClosenessPair::exact_born) ? direct.eta_born : direct.eta_gksl;
    cell.close = std::abs(cell.eta_exact - cell.eta_other) < tolerance * cell.eta_exact;
  });
  return cells;
}

}  // namespace lbath
