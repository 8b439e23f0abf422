// exact.cpp — pseudomode dynamics: closed-form per-mode evolution, exact rates,
// reduced-state assembly, and the GKSL dilation cross-check.
#include "lbath/exact.hpp"

#include <cmath>
#include <string>

#include "lbath/linalg.hpp"

namespace lbath {

namespace {

// Interaction-picture 2x2 generator for mode alpha acting on (psi_alpha, phi_alpha).
Eigen::Matrix2cd block_generator(double detuning, const ReservoirSpec& r) {
  Eigen::Matrix2cd m;
  m << cplx(0.0, 0.0), cplx(0.0, -r.g),
       cplx(0.0, -r.g), cplx(-0.5 * r.gamma, detuning);
  return m;
}

void check_basis_matches(const SystemSpec& spec, const GlobalBasis& basis) {
  if (basis.n() != spec.n())
    throw ValidationError("build_effective: basis size " + std::to_string(basis.n()) +
                          " does not match h_s size " + std::to_string(spec.n()));
  const Eigen::MatrixXcd rebuilt =
      basis.unitary * basis.energies.asDiagonal() * basis.unitary.adjoint();
  const double scale = std::max(1.0, spec.h_s.cwiseAbs().maxCoeff());
  if ((rebuilt - spec.h_s).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw ValidationError("build_effective: basis does not diagonalize h_s");
}

}  // namespace

EffectiveHamiltonian build_effective(const SystemSpec& spec, const GlobalBasis& basis,
                                     const ReservoirSpec& reservoir) {
  spec.validate();
  reservoir.validate();
  check_basis_matches(spec, basis);

  const int n = spec.n();
  const cplx pole(reservoir.eps, -0.5 * reservoir.gamma);
  const Eigen::MatrixXcd coupling = reservoir.g * Eigen::MatrixXcd::Identity(n, n);

  EffectiveHamiltonian out;
  out.matrix = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  out.matrix.topLeftCorner(n, n) = spec.h_s;
  out.matrix.topRightCorner(n, n) = coupling;
  out.matrix.bottomLeftCorner(n, n) = coupling;
  out.matrix.bottomRightCorner(n, n) = pole * Eigen::MatrixXcd::Identity(n, n);

  out.interaction_matrix = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  out.interaction_matrix.topRightCorner(n, n) = coupling;
  out.interaction_matrix.bottomLeftCorner(n, n) = coupling;
  out.interaction_matrix.bottomRightCorner(n, n) =
      -spec.h_s + pole * Eigen::MatrixXcd::Identity(n, n);
  return out;
}

std::pair<cplx, cplx> block_eigenvalues(double detuning, const ReservoirSpec& reservoir) {
  // lambda^2 - (i dE - gamma/2) lambda + g^2 = 0
  const cplx b(0.5 * reservoir.gamma, -detuning);
  const cplx c(reservoir.g * reservoir.g, 0.0);
  auto [r1, r2] = quadratic_roots(b, c);
  const bool first_is_plus =
      (r1.real() > r2.real()) || (r1.real() == r2.real() && r1.imag() >= r2.imag());
  return first_is_plus ? std::make_pair(r1, r2) : std::make_pair(r2, r1);
}

double block_eigenvalue_real(double detuning, const ReservoirSpec& reservoir, int sign) {
  // With u = (gamma/2)^2 - 4g^2 - dE^2, the product under the inner square root
  // equals u^2 + (gamma dE)^2, and the radicand is u + sqrt(u^2 + (gamma dE)^2).
  // For u < 0 that sum cancels (it vanishes on the resonant underdamped line),
  // so it is evaluated as (gamma dE)^2 / (sqrt(u^2 + (gamma dE)^2) - u), which
  // is exact at dE = 0 instead of leaving O(sqrt(eps)) noise.
  const double g = reservoir.g, half = 0.5 * reservoir.gamma;
  const double u = half * half - 4.0 * g * g - detuning * detuning;
  const double w = reservoir.gamma * detuning;
  const double inner = std::hypot(u, w);
  const double radicand = (u >= 0.0) ? u + inner : (w == 0.0 ? 0.0 : w * w / (inner - u));
  return -0.5 * half +
         (sign >= 0 ? 1.0 : -1.0) * (std::sqrt(2.0) / 4.0) * std::sqrt(radicand);
}

RateTable exact_rates(const GlobalBasis& basis, const ReservoirSpec& reservoir) {
  reservoir.validate();
  const int n = basis.n();
  RateTable table;
  table.method = Method::exact;
  table.eta_alpha.resize(n);
  table.eta_alpha0.resize(n);
  table.eta_alphabeta.resize(n, n);

  const double scale = std::max(1.0, 0.5 * reservoir.gamma + 2.0 * reservoir.g +
                                         basis.detunings.cwiseAbs().maxCoeff());
  for (int a = 0; a < n; ++a) {
    const cplx plus = block_eigenvalues(basis.detunings(a), reservoir).first;
    const double closed = block_eigenvalue_real(basis.detunings(a), reservoir, +1);
    if (std::abs(plus.real() - closed) > 1e-10 * scale)
      throw NumericalError("exact_rates: quadratic Re lambda_+ " + std::to_string(plus.real()) +
                           " disagrees with closed form " + std::to_string(closed));
    table.eta_alpha0(a) = -plus.real();
    table.eta_alpha(a) = -2.0 * plus.real();
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      table.eta_alphabeta(a, b) = table.eta_alpha0(a) + table.eta_alpha0(b);
  return table;
}

Eigen::VectorXcd evolve_psi(const InitialState& state, const GlobalBasis& basis,
                            const ReservoirSpec& reservoir, double t) {
  if (state.n() != basis.n())
    throw ValidationError("evolve_psi: state size does not match basis size");
  const Eigen::VectorXcd psi0 = basis.unitary.adjoint() * state.psi;
  Eigen::VectorXcd psi(basis.n());
  for (int a = 0; a < basis.n(); ++a) {
    const Eigen::Matrix2cd propagator =
        expm_2x2(t * block_generator(basis.detunings(a), reservoir));
    psi(a) = propagator(0, 0) * psi0(a);
  }
  return psi;
}

ReducedState assemble_reduced(cplx psi0_initial, const Eigen::VectorXcd& psi,
                              const Eigen::MatrixXcd& sigma, double time) {
  const int n = static_cast<int>(psi.size());
  ReducedState out;
  out.basis = Basis::global;
  out.picture = Picture::interaction;
  out.time = time;
  out.rho = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  out.rho.bottomRightCorner(n, n) = sigma;
  out.rho.col(0).tail(n) = std::conj(psi0_initial) * psi;
  out.rho.row(0).tail(n) = (psi0_initial * psi.conjugate()).transpose();
  out.rho(0, 0) = 1.0 - sigma.trace().real();
  return out;
}

std::vector<ReducedState> evolve_exact(const InitialState& state, const GlobalBasis& basis,
                                       const ReservoirSpec& reservoir,
                                       const std::vector<double>& times) {
  state.validate();
  reservoir.validate();
  validate_times(times);
  std::vector<ReducedState> out;
  out.reserve(times.size());
  for (double t : times) {
    const Eigen::VectorXcd psi = evolve_psi(state, basis, reservoir, t);
    out.push_back(assemble_reduced(state.psi0, psi, psi * psi.adjoint(), t));
  }
  return out;
}

double dilation_check(const InitialState& state, const GlobalBasis& basis,
                      const ReservoirSpec& reservoir, double t) {
  if (!(t >= 0.0)) throw ValidationError("dilation_check: t must be >= 0");
  state.validate();
  reservoir.validate();
  if (state.n() != basis.n())
    throw ValidationError("dilation_check: state size does not match basis size");

  const int n = basis.n();
  const int dim = 2 * n + 1;  // 0 = ground, 1..N = excited (global), N+1..2N = pseudomodes

  // Closed form: per mode, the Schroedinger-picture pair (psi_alpha, phi_alpha)
  // evolves under -i [[E_alpha, g], [g, eps - i gamma/2]].
  const Eigen::VectorXcd psi0 = basis.unitary.adjoint() * state.psi;
  auto closed_density = [&](double time) {
    Eigen::VectorXcd amps(2 * n);
    for (int a = 0; a < n; ++a) {
      Eigen::Matrix2cd h;
      h << cplx(basis.energies(a), 0.0), cplx(reservoir.g, 0.0),
           cplx(reservoir.g, 0.0), cplx(reservoir.eps, -0.5 * reservoir.gamma);
      const Eigen::Matrix2cd propagator = expm_2x2(cplx(0.0, -time) * h);
      amps(a) = propagator(0, 0) * psi0(a);
      amps(n + a) = propagator(1, 0) * psi0(a);
    }
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    rho.bottomRightCorner(2 * n, 2 * n) = amps * amps.adjoint();
    rho.col(0).tail(2 * n) = std::conj(state.psi0) * amps;
    rho.row(0).tail(2 * n) = (state.psi0 * amps.conjugate()).transpose();
    rho(0, 0) = 1.0 - amps.squaredNorm();
    return rho;
  };

  // GKSL side: H = 0 ⊕ (H_eff + H_eff^dagger)/2 in the global basis,
  // jump operators sqrt(gamma) |0><l~| for each pseudomode.
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < n; ++a) {
    h(1 + a, 1 + a) = basis.energies(a);
    h(1 + n + a, 1 + n + a) = reservoir.eps;
    h(1 + a, 1 + n + a) = reservoir.g;
    h(1 + n + a, 1 + a) = reservoir.g;
  }
  const double gamma = reservoir.gamma;
  auto rhs = [&](double, const Eigen::VectorXcd& y) {
    const Eigen::Map<const Eigen::MatrixXcd> rho(y.data(), dim, dim);
    Eigen::MatrixXcd drho = cplx(0.0, -1.0) * (h * rho - rho * h);
    cplx fed(0.0, 0.0);
    for (int a = 0; a < n; ++a) fed += rho(1 + n + a, 1 + n + a);
    drho(0, 0) += gamma * fed;
    drho.block(1 + n, 0, n, dim) -= 0.5 * gamma * rho.block(1 + n, 0, n, dim);
    drho.block(0, 1 + n, dim, n) -= 0.5 * gamma * rho.block(0, 1 + n, dim, n);
    return Eigen::VectorXcd(Eigen::Map<const Eigen::VectorXcd>(drho.data(), dim * dim));
  };

  const Eigen::MatrixXcd rho0 = closed_density(0.0);
  const Eigen::VectorXcd y0 = Eigen::Map<const Eigen::VectorXcd>(rho0.data(), dim * dim);
  const Eigen::VectorXcd yt = integrate_rk45(rhs, y0, 0.0, t, 1e-10, 1e-12);
  const Eigen::Map<const Eigen::MatrixXcd> rho_ode(yt.data(), dim, dim);
  return (closed_density(t) - rho_ode).norm();
}

}  // namespace lbath
