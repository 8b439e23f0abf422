// redfield.cpp — time-dependent Redfield generator, rates, and closed-form evolution.
#include "lbath/redfield.hpp"

#include <cmath>

#include "lbath/exact.hpp"
#include "lbath/model.hpp"

namespace lbath {

cplx y_infinity(double detuning, const ReservoirSpec& reservoir) {
  const double j = spectral_density(reservoir, reservoir.eps + detuning);
  return (j / reservoir.gamma) * cplx(0.5 * reservoir.gamma, detuning);
}

cplx y_at(double detuning, const ReservoirSpec& reservoir, double t) {
  const cplx z(0.5 * reservoir.gamma, -detuning);
  return y_infinity(detuning, reservoir) * (1.0 - std::exp(-z * t));
}

RateTable redfield_rates(const GlobalBasis& basis, const ReservoirSpec& reservoir, double t) {
  if (!(t >= 0.0)) throw ValidationError("redfield_rates: t must be >= 0");
  reservoir.validate();
  const int n = basis.n();
  RateTable table;
  table.method = Method::redfield;
  table.time = t;
  table.eta_alpha.resize(n);
  table.eta_alpha0.resize(n);
  table.eta_alphabeta.resize(n, n);
  for (int a = 0; a < n; ++a) {
    const double de = basis.detunings(a);
    const double j = spectral_density(reservoir, reservoir.eps + de);
    const double damp = std::exp(-0.5 * reservoir.gamma * t);
    table.eta_alpha0(a) = (j / reservoir.gamma) *
                          (0.5 * reservoir.gamma * (1.0 - damp * std::cos(de * t)) +
                           de * damp * std::sin(de * t));
    table.eta_alpha(a) = 2.0 * table.eta_alpha0(a);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      table.eta_alphabeta(a, b) = table.eta_alpha0(a) + table.eta_alpha0(b);
  return table;
}

RateTable gksl_rates(const GlobalBasis& basis, const ReservoirSpec& reservoir) {
  reservoir.validate();
  const int n = basis.n();
  RateTable table;
  table.method = Method::gksl;
  table.eta_alpha.resize(n);
  table.eta_alpha0.resize(n);
  table.eta_alphabeta.resize(n, n);
  for (int a = 0; a < n; ++a) {
    table.eta_alpha0(a) = 0.5 * spectral_density(reservoir, reservoir.eps + basis.detunings(a));
    table.eta_alpha(a) = 2.0 * table.eta_alpha0(a);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      table.eta_alphabeta(a, b) = table.eta_alpha0(a) + table.eta_alpha0(b);
  return table;
}

Eigen::VectorXcd redfield_psi(const InitialState& state, const GlobalBasis& basis,
                              const ReservoirSpec& reservoir, double t, bool markovian) {
  state.validate();
  reservoir.validate();
  if (state.n() != basis.n())
    throw ValidationError("redfield_psi: state size does not match basis size");

  const int n = basis.n();
  const Eigen::VectorXcd psi0 = basis.unitary.adjoint() * state.psi;
  Eigen::VectorXcd psi(n);
  for (int a = 0; a < n; ++a) {
    const cplx yinf = y_infinity(basis.detunings(a), reservoir);
    if (markovian) {
      psi(a) = psi0(a) * std::exp(-yinf * t);
    } else {
      const cplx z(0.5 * reservoir.gamma, -basis.detunings(a));
      psi(a) = psi0(a) * std::exp(-yinf * (t - (1.0 - std::exp(-z * t)) / z));
    }
  }
  return psi;
}

std::vector<ReducedState> evolve_redfield(const InitialState& state, const GlobalBasis& basis,
                                          const ReservoirSpec& reservoir,
                                          const std::vector<double>& times, bool markovian) {
  validate_times(times);
  std::vector<ReducedState> out;
  out.reserve(times.size());
  for (double t : times) {
    const Eigen::VectorXcd psi = redfield_psi(state, basis, reservoir, t, markovian);
    out.push_back(assemble_reduced(state.psi0, psi, psi * psi.adjoint(), t));
  }
  return out;
}

}  // namespace lbath
