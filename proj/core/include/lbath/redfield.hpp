// redfield.hpp — non-Markovian Redfield dynamics via the time-dependent
// per-mode generator Y_alpha(t), its closed-form solution, the associated
// time-dependent rates, and the Markovian (GKSL / secular) limit.
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lbath/types.hpp"

namespace lbath {

// Y_alpha(+inf) = gamma^{-1} J(E_alpha) (gamma/2 + i dE_alpha) = g^2 / (gamma/2 - i dE_alpha).
cplx y_infinity(double detuning, const ReservoirSpec& reservoir);

// Y_alpha(t) = Y_alpha(inf) (1 - e^{-(gamma/2 - i dE_alpha) t}); Y_alpha(0) = 0.
cplx y_at(double detuning, const ReservoirSpec& reservoir, double t);

// Time-dependent rates at t >= 0:
//   eta_alpha0(t) = Re Y_alpha(t)
//     = gamma^{-1} J(E_alpha) [(gamma/2)(1 - e^{-gamma t/2} cos dE t) + dE e^{-gamma t/2} sin dE t]
//   eta_alpha = 2 Re Y_alpha(t); eta_alphabeta = Re Y_alpha(t) + Re Y_beta(t).
// Transient rates can be negative off resonance; the table reports them as is.
RateTable redfield_rates(const GlobalBasis& basis, const ReservoirSpec& reservoir, double t);

// Constant t->inf limit: eta_alpha0 = J(E_alpha)/2, eta_alpha = J(E_alpha),
// eta_alphabeta = (J(E_alpha) + J(E_beta))/2.
RateTable gksl_rates(const GlobalBasis& basis, const ReservoirSpec& reservoir);

// Closed-form excited amplitudes in the global basis at time t:
//   markovian = false: psi_a(t) = psi_a(0) exp(-Y_a(inf) [t - (1 - e^{-z t})/z]),
//                      z = gamma/2 - i dE_a
//   markovian = true:  psi_a(t) = psi_a(0) e^{-Y_a(inf) t}
Eigen::VectorXcd redfield_psi(const InitialState& state, const GlobalBasis& basis,
                              const ReservoirSpec& reservoir, double t, bool markovian);

// Closed-form evolution; the excited block stays the rank-one projector
// psi(t) psi(t)^dagger in both variants.
std::vector<ReducedState> evolve_redfield(const InitialState& state, const GlobalBasis& basis,
                                          const ReservoirSpec& reservoir,
                                          const std::vector<double>& times, bool markovian);

}  // namespace lbath
