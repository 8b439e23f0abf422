// born.hpp — Nakajima-Zwanzig dynamics in the Born approximation: per-pair 3x3
// auxiliary systems for the excited block, their characteristic cubics, Born
// rates, and full reduced-state evolution.
#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lbath/types.hpp"

namespace lbath {

// Monic cubic lambda^3 + a1 lambda^2 + a2 lambda + a3. Coefficients are real
// for the diagonal pairs (de_a == de_b).
struct CubicCoefficients {
  cplx a1, a2, a3;
};

// 3x3 generator for the ordered pair (alpha, beta), acting on the triple
// (w, X, -conj(X') ) whose first component propagates conj(sigma_alphabeta):
//   [[0, -ig, -ig], [-ig, -gamma/2 - i dE_a, 0], [-ig, 0, -gamma/2 + i dE_b]]
// Its eigenvalues are the conjugates of the roots of char_poly(de_a, de_b).
Eigen::Matrix3cd born_block(double de_a, double de_b, const ReservoirSpec& reservoir);

// Decay cubic for the pair (alpha, beta):
//   a1 = gamma + i(dE_b - dE_a)
//   a2 = (gamma/2)^2 + i(gamma/2)(dE_b - dE_a) + 2g^2 + dE_a dE_b
//   a3 = g^2 (gamma + i(dE_b - dE_a))
// Cross-checked to 1e-12 against the conjugated characteristic coefficients of
// born_block computed via trace / principal minors / determinant.
CubicCoefficients char_poly(double de_a, double de_b, const ReservoirSpec& reservoir);

// Roots of the monic cubic. Each root is verified by residual
// |f(lambda)| <= 1e-9 (1+|lambda|)^3, and the closed-form solver is
// cross-validated against companion-matrix eigenvalues on every call: to
// 1e-10 for well-separated roots, with a multiplicity-aware relaxation for
// clustered roots (an m-fold root is only determined to O(eps^(1/m))).
std::array<cplx, 3> solve_cubic(const CubicCoefficients& c);

// eta_alphabeta = min over the roots of the pair's cubic of |Re lambda|;
// eta_alpha = eta_alphaalpha; eta_alpha0 is the exact excited-ground rate
// (-Re lambda_{alpha,+}; the two master equations share that Cauchy problem).
// A root with Re lambda > 1e-10 appends a diagnostic to `warnings`.
RateTable born_rates(const GlobalBasis& basis, const ReservoirSpec& reservoir,
                     std::vector<std::string>* warnings = nullptr);

// The excited amplitudes psi follow the same closed form as the exact module;
// each excited-block entry is propagated by its pair's 3x3 exponential from
// (conj(psi_a(0)) psi_b(0), 0, 0), conjugated into rho(a, b) for a <= b, and
// filled Hermitian. rho(0,0) = 1 - tr sigma. Positivity is NOT guaranteed.
std::vector<ReducedState> evolve_born(const InitialState& state, const GlobalBasis& basis,
                                      const ReservoirSpec& reservoir,
                                      const std::vector<double>& times,
                                      std::vector<std::string>* warnings = nullptr);

}  // namespace lbath
