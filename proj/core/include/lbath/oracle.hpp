// oracle.hpp — independent brute-force references: a discretized-bath
// Schroedinger integration in the one-excitation sector, and direct Volterra
// quadrature of the memory-kernel equations for psi and for the excited block.
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lbath/types.hpp"

namespace lbath {

// Uniform midpoint discretization of the Lorentzian reservoir on
// [eps - width, eps + width]: K frequencies and couplings
// g_k = sqrt(J(omega_k) dOmega / (2 pi)). Couplings are symmetric about eps,
// and sum(g_k^2) approaches g^2 as K and width grow.
struct DiscretizedReservoir {
  Eigen::VectorXd omegas;
  Eigen::VectorXd couplings;
  double width = 0.0;

  int modes() const { return static_cast<int>(omegas.size()); }

  // Half the Poincare recurrence time of the discrete bath, 0.5 * K / (2 width);
  // comparisons against the continuum are only meaningful below it.
  double recurrence_time() const { return 0.25 * modes() / width; }

  static DiscretizedReservoir make(const ReservoirSpec& reservoir, int k_modes, double width);
};

// Norm-preserving split-step integration of the (N + N*K)-dimensional
// one-excitation Schroedinger equation: each excited level couples to its own
// copy of the discrete bath. Returns the N-component system block (local
// basis, Schroedinger picture) at each requested time. Every substep is an
// exact unitary (eigenbasis rotation of H_S, per-mode phases, per-level 2x2
// coupling rotation), so the total norm is conserved to round-off.
// dt <= 0 selects the default step 0.04 / width. Requires K*N <= 1e6.
std::vector<Eigen::VectorXcd> evolve_friedrichs(const InitialState& state, const SystemSpec& spec,
                                                const DiscretizedReservoir& disc,
                                                const std::vector<double>& times, double dt = 0.0);

// Second-order solution of d psi / dt = -i H_S psi - int_0^t G(t-s) psi(s) ds
// (global basis, Schroedinger picture) by trapezoidal kernel quadrature with a
// Heun predictor-corrector. Returns the nodes psi(j * dt), j = 0..ceil(t_max/dt).
std::vector<Eigen::VectorXcd> volterra_psi(const InitialState& state, const GlobalBasis& basis,
                                           const ReservoirSpec& reservoir, double t_max,
                                           double dt);

// Same scheme for the excited-block memory equation
//   d sigma / dt = -int_0^t [G(tau) e^{iH_S tau} sigma(s) + sigma(s) conj(G(tau)) e^{-iH_S tau}] ds,
// tau = t - s, from sigma(0) = psi(0) psi(0)^dagger (global basis, interaction
// picture). Entrywise the kernel is G(tau) e^{iE_a tau} + conj(G(tau) e^{iE_b tau}),
// so Hermiticity is preserved exactly by mirroring the a <= b entries.
std::vector<Eigen::MatrixXcd> volterra_sigma(const InitialState& state, const GlobalBasis& basis,
                                             const ReservoirSpec& reservoir, double t_max,
                                             double dt);

}  // namespace lbath
