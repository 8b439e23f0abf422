// classify.hpp — parameter-space comparison of the population decay rates:
// direct numeric ordering (authoritative), closed-form sign predicates with a
// shifted Routh-Hurwitz criterion, region maps I-VI, the triple point, and
// closeness maps.
#pragma once

#include <utility>
#include <vector>

#include "lbath/types.hpp"

namespace lbath {

// The six strict orderings of (eta_exact, eta_born, eta_gksl):
//   I   exact > gksl  > born
//   II  exact > born  > gksl
//   III gksl  > exact > born
//   IV  born  > exact > gksl
//   V   gksl  > born  > exact
//   VI  born  > gksl  > exact
// `boundary` marks a tie (or a predicate equality branch); `none` marks an
// indeterminate or cyclic predicate outcome.
enum class Region { none, boundary, I, II, III, IV, V, VI };

const char* to_string(Region r);

// Evaluates the k-th sign-condition polynomial (k = 1..4) at
// u = (dE/g)^2, v = (gamma/g)^2, with exact integer coefficients and
// compensated (Kahan) term summation.
double poly_F(int k, double u, double v);

// True iff all roots of lambda^3 + a1 lambda^2 + a2 lambda + a3 (real
// coefficients) satisfy Re lambda < x:
//   a1 > -3x  AND  (a1+3x)(a2+2a1x+3x^2) > a3+a2x+a1x^2+x^3  AND  a3+a2x+a1x^2+x^3 > 0.
bool routh_hurwitz_shifted(double a1, double a2, double a3, double x);

// Authoritative numeric comparison at one detuning. Ties use tolerance
// 1e-9 * max(rates) and map to Region::boundary.
struct DirectComparison {
  double eta_exact = 0.0, eta_born = 0.0, eta_gksl = 0.0;  // population rates
  double eta0_exact = 0.0, eta0_gksl = 0.0;                // excited-ground rates
  Region region = Region::none;
};

DirectComparison compare_direct(double detuning, const ReservoirSpec& reservoir);

// Region label derived from the printed sign conditions (F1/F2 and F3/F4 with
// the gamma = sqrt(8) g and |dE| = (sqrt3/2) g side conditions), evaluated
// branch by branch in their stated order. Known to disagree with the direct
// ordering on parts of the parameter plane; report, never assert.
Region predicate_region(double detuning, const ReservoirSpec& reservoir);

// Rectangular parameter grid in (dE/g, gamma/g). The dE axis is an inclusive
// linspace; the gamma axis is left-open (gamma_min itself is excluded, so the
// default (0, 8] grid never evaluates gamma = 0).
struct GridSpec {
  double de_min = -3.0, de_max = 3.0;
  int n_de = 97;
  double gamma_min = 0.0, gamma_max = 8.0;
  int n_gamma = 96;

  void validate() const;
  double de_at(int i) const { return de_min + (de_max - de_min) * i / (n_de - 1); }
  double gamma_at(int j) const {
    return gamma_min + (gamma_max - gamma_min) * (j + 1) / n_gamma;
  }
};

struct RegionCell {
  double de_over_g = 0.0, gamma_over_g = 0.0;
  double eta_exact = 0.0, eta_born = 0.0, eta_gksl = 0.0;
  Region direct = Region::none;
  Region predicate = Region::none;
  bool agree = false;
};

// Row-major over the grid (gamma outer, dE inner), deterministic regardless of
// the number of worker threads.
std::vector<RegionCell> region_map(const GridSpec& grid, int jobs = 1);

// Both solutions of eta_exact = eta_born = eta_gksl, located by damped Newton
// iteration on the direct rates from the seed (0.55, 3.55); the second point is
// the dE -> -dE mirror. Throws NumericalError with the last iterate on
// non-convergence.
struct TriplePoint {
  double de_over_g = 0.0, gamma_over_g = 0.0;
};

std::pair<TriplePoint, TriplePoint> triple_point(double g = 1.0);

// Closed-form sufficient conditions for the exact-vs-born ordering; every
// non-inconclusive verdict matches compare_direct.
enum class SufficientVerdict { exact_less, exact_greater, inconclusive };

SufficientVerdict sufficient_conditions(double detuning, const ReservoirSpec& reservoir);

// Cells where the two population rates agree within tolerance * eta_exact.
enum class ClosenessPair { exact_born, exact_gksl };

struct ClosenessCell {
  double de_over_g = 0.0, gamma_over_g = 0.0;
  double eta_exact = 0.0, eta_other = 0.0;
  bool close = false;
};

std::vector<ClosenessCell> closeness_map(const GridSpec& grid, double tolerance,
                                         ClosenessPair pair, int jobs = 1);

}  // namespace lbath
