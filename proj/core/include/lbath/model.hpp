// model.hpp — eigendecomposition into the global basis and the reservoir
// correlation function / Lorentzian spectral density.
#pragma once

#include "lbath/types.hpp"

namespace lbath {

// Diagonalize h_s into the global basis. Eigenvalues ascend; inside a degenerate
// cluster (|E_a - E_b| < 1e-10 * scale) columns are ordered by the index of their
// largest-magnitude component, and each column's phase is fixed so that component
// is real and non-negative (deterministic output for golden files).
GlobalBasis diagonalize(const SystemSpec& spec, const ReservoirSpec& reservoir);

// Reservoir correlation function G(t) = g^2 e^{-(gamma/2)|t| - i eps t}.
cplx correlation(const ReservoirSpec& reservoir, double t);

// Lorentzian spectral density J(omega) = gamma g^2 / ((gamma/2)^2 + (omega - eps)^2).
double spectral_density(const ReservoirSpec& reservoir, double omega);

}  // namespace lbath
