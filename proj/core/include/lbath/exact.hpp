// exact.hpp — pseudomode dynamics: the non-Hermitian effective Hamiltonian,
// per-mode 2x2 block evolution, exact decay/decoherence rates, reduced-state
// assembly, and a GKSL dilation consistency check.
#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lbath/types.hpp"

namespace lbath {

// 2N x 2N block matrices over (excited system levels, pseudomodes), local basis:
//   matrix             = [[H_S, gI], [gI, (eps - i gamma/2) I]]
//   interaction_matrix = [[0,   gI], [gI, -H_S + (eps - i gamma/2) I]]
struct EffectiveHamiltonian {
  Eigen::MatrixXcd matrix;
  Eigen::MatrixXcd interaction_matrix;
};

// Assembles both block matrices; `basis` is cross-checked against `spec`
// (it must be the eigendecomposition of the same h_s).
EffectiveHamiltonian build_effective(const SystemSpec& spec, const GlobalBasis& basis,
                                     const ReservoirSpec& reservoir);

// The two roots of lambda^2 - (i dE - gamma/2) lambda + g^2 = 0, computed without
// cancellation. First element is lambda_+: larger real part, ties broken by
// larger imaginary part. Re lambda_± <= 0 whenever gamma > 0.
std::pair<cplx, cplx> block_eigenvalues(double detuning, const ReservoirSpec& reservoir);

// Closed-form real part of lambda_± (sign = +1 or -1 selects the branch):
//   -gamma/4 ± (sqrt2/4) sqrt((gamma/2)^2 - 4g^2 - dE^2
//                             + sqrt(((gamma/2+2g)^2+dE^2)((gamma/2-2g)^2+dE^2)))
// Used as an independent cross-check of block_eigenvalues.
double block_eigenvalue_real(double detuning, const ReservoirSpec& reservoir, int sign);

// eta_alpha = -2 Re lambda_{alpha,+}; eta_alpha0 = -Re lambda_{alpha,+};
// eta_alphabeta = -Re lambda_{alpha,+} - Re lambda_{beta,+}.
// Throws NumericalError if the quadratic and closed-form real parts differ by
// more than 1e-10.
RateTable exact_rates(const GlobalBasis& basis, const ReservoirSpec& reservoir);

// Interaction-picture global-basis excited amplitudes psi_alpha(t): each pair
// (psi_alpha, phi_alpha) is propagated by the closed-form exponential of
// t * [[0, -ig], [-ig, i dE_alpha - gamma/2]] from (psi_alpha(0), 0), with
// psi_glob(0) = U^dagger psi_local(0).
Eigen::VectorXcd evolve_psi(const InitialState& state, const GlobalBasis& basis,
                            const ReservoirSpec& reservoir, double t);

// Builds the (N+1) x (N+1) reduced state (interaction picture, global basis):
// excited block sigma, ground-excited column rho(alpha,0) = conj(psi0) psi_alpha,
// rho(0,0) = 1 - tr sigma.
ReducedState assemble_reduced(cplx psi0_initial, const Eigen::VectorXcd& psi,
                              const Eigen::MatrixXcd& sigma, double time);

// Reduced states at the given strictly ascending times (t >= 0); the excited
// block is the rank-one projector psi(t) psi(t)^dagger.
std::vector<ReducedState> evolve_exact(const InitialState& state, const GlobalBasis& basis,
                                       const ReservoirSpec& reservoir,
                                       const std::vector<double>& times);

// Frobenius distance at time t between (a) the (2N+1)-level density matrix built
// from the closed-form 2N-amplitude solution and (b) an adaptive integration of
// the GKSL equation with H = 0 ⊕ (H_eff + H_eff^dagger)/2 and jump operators
// sqrt(gamma)|0><l~| from the same initial state.
double dilation_check(const InitialState& state, const GlobalBasis& basis,
                      const ReservoirSpec& reservoir, double t);

}  // namespace lbath
