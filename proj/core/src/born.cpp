// born.cpp — Born-approximation dynamics: decay cubics, rates, and 3x3 evolution.
#include "lbath/born.hpp"

#include <algorithm>
#include <cmath>

#include "lbath/exact.hpp"
#include "lbath/linalg.hpp"

namespace lbath {

Eigen::Matrix3cd born_block(double de_a, double de_b, const ReservoirSpec& reservoir) {
  const cplx ig(0.0, reservoir.g);
  const double half = 0.5 * reservoir.gamma;
  Eigen::Matrix3cd m;
  m << cplx(0.0, 0.0), -ig, -ig,
       -ig, cplx(-half, -de_a), cplx(0.0, 0.0),
       -ig, cplx(0.0, 0.0), cplx(-half, de_b);
  return m;
}

CubicCoefficients char_poly(double de_a, double de_b, const ReservoirSpec& reservoir) {
  reservoir.validate();
  const double g2 = reservoir.g * reservoir.g;
  const double half = 0.5 * reservoir.gamma;
  const cplx width(reservoir.gamma, de_b - de_a);
  CubicCoefficients c;
  c.a1 = width;
  c.a2 = cplx(half * half + 2.0 * g2 + de_a * de_b, half * (de_b - de_a));
  c.a3 = g2 * width;

  // Independent route: characteristic coefficients of the 3x3 block via
  // trace / sum of principal 2x2 minors / determinant, then conjugated
  // (the block propagates the conjugated component, so its eigenvalues are
  // the conjugates of this cubic's roots).
  const Eigen::Matrix3cd m = born_block(de_a, de_b, reservoir);
  const cplx tr = m.trace();
  cplx minors(0.0, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) minors += m(i, i) * m(j, j) - m(i, j) * m(j, i);
  const cplx det = m.determinant();
  const cplx b1 = std::conj(-tr), b2 = std::conj(minors), b3 = std::conj(-det);

  const double scale = std::max({1.0, std::abs(c.a1), std::abs(c.a2), std::abs(c.a3)});
  if (std::abs(b1 - c.a1) > 1e-12 * scale || std::abs(b2 - c.a2) > 1e-12 * scale ||
      std::abs(b3 - c.a3) > 1e-12 * scale)
    throw NumericalError("char_poly: closed-form coefficients disagree with the 3x3 block");
  return c;
}

std::array<cplx, 3> solve_cubic(const CubicCoefficients& c) {
  const std::array<cplx, 3> roots = cubic_roots_cardano(c.a1, c.a2, c.a3);
  for (const cplx& z : roots) {
    const double residual = std::abs(((z + c.a1) * z + c.a2) * z + c.a3);
    const double bound = 1.0 + std::abs(z);
    if (residual > 1e-9 * bound * bound * bound)
      throw NumericalError("solve_cubic: residual " + std::to_string(residual) +
                           " exceeds tolerance at root " + std::to_string(z.real()) + "+" +
                           std::to_string(z.imag()) + "i");
  }
  const std::array<cplx, 3> check = cubic_roots_companion(c.a1, c.a2, c.a3);
  double extent = 0.0;
  for (const cplx& z : roots) extent = std::max(extent, std::abs(z));
  const double scale = 1.0 + extent;
  // An m-fold root is only determined to O(eps^(1/m)) by either route, so the
  // agreement tolerance is relaxed once the computed roots cluster: one close
  // pair means a double root (~1e-8 achievable), three close pairs a triple
  // root (~6e-6 achievable). Well-separated roots keep the strict bound.
  int close_pairs = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(roots[i] - roots[j]) < 1e-4 * scale) ++close_pairs;
  const double tolerance = (close_pairs == 0) ? 1e-10 : (close_pairs == 1) ? 3e-7 : 3e-5;
  if (match_roots_distance(roots, check) > tolerance * scale)
    throw NumericalError("solve_cubic: closed-form and companion-matrix roots disagree");
  return roots;
}

namespace {

double min_abs_real_root(double de_a, double de_b, const ReservoirSpec& reservoir,
                         std::vector<std::string>* warnings) {
  const std::array<cplx, 3> roots = solve_cubic(char_poly(de_a, de_b, reservoir));
  double rate = std::numeric_limits<double>::infinity();
  for (const cplx& z : roots) {
    rate = std::min(rate, std::abs(z.real()));
    if (z.real() > 1e-10 && warnings)
      warnings->push_back("born rate pair (" + std::to_string(de_a) + ", " + std::to_string(de_b) +
                          "): root with positive real part " + std::to_string(z.real()));
  }
  return rate;
}

}  // namespace

RateTable born_rates(const GlobalBasis& basis, const ReservoirSpec& reservoir,
                     std::vector<std::string>* warnings) {
  reservoir.validate();
  const int n = basis.n();
  RateTable table;
  table.method = Method::born;
  table.eta_alpha.resize(n);
  table.eta_alpha0.resize(n);
  table.eta_alphabeta.resize(n, n);
  for (int a = 0; a < n; ++a) {
    table.eta_alpha0(a) = -block_eigenvalues(basis.detunings(a), reservoir).first.real();
    for (int b = a; b < n; ++b) {
      const double rate = min_abs_real_root(basis.detunings(a), basis.detunings(b), reservoir, warnings);
      table.eta_alphabeta(a, b) = rate;
      table.eta_alphabeta(b, a) = rate;
    }
    table.eta_alpha(a) = table.eta_alphabeta(a, a);
  }
  return table;
}

std::vector<ReducedState> evolve_born(const InitialState& state, const GlobalBasis& basis,
                                      const ReservoirSpec& reservoir,
                                      const std::vector<double>& times,
                                      std::vector<std::string>* warnings) {
  state.validate();
  reservoir.validate();
  validate_times(times);
  if (state.n() != basis.n())
    throw ValidationError("evolve_born: state size does not match basis size");

  const int n = basis.n();
  const Eigen::VectorXcd psi0 = basis.unitary.adjoint() * state.psi;

  // One 3x3 propagator per pair a <= b, reused across all output times.
  std::vector<EigenPropagator> propagators;
  propagators.reserve(n * (n + 1) / 2);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      propagators.emplace_back(born_block(basis.detunings(a), basis.detunings(b), reservoir),
                               warnings);

  std::vector<ReducedState> out;
  out.reserve(times.size());
  for (double t : times) {
    Eigen::MatrixXcd sigma(n, n);
    int pair = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b, ++pair) {
        Eigen::Vector3cd w0 = Eigen::Vector3cd::Zero();
        w0(0) = std::conj(psi0(a)) * psi0(b);
        const cplx first = propagators[pair].apply(w0, t)(0);
        sigma(a, b) = std::conj(first);
        sigma(b, a) = first;
      }
    for (int a = 0; a < n; ++a) sigma(a, a) = cplx(sigma(a, a).real(), 0.0);
    const Eigen::VectorXcd psi = evolve_psi(state, basis, reservoir, t);
    out.push_back(assemble_reduced(state.psi0, psi, sigma, t));
  }
  return out;
}

}  // namespace lbath
