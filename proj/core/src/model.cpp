// model.cpp — global-basis eigendecomposition and reservoir functions.
#include "lbath/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace lbath {

const char* to_string(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::born: return "born";
    case Method::redfield: return "redfield";
    case Method::gksl: return "gksl";
  }
  return "unknown";
}

void validate_times(const std::vector<double>& times) {
  if (times.empty()) throw ValidationError("time grid is empty");
  if (!(times.front() >= 0.0)) throw ValidationError("time grid must start at t >= 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw ValidationError("time grid is not ascending at index " + std::to_string(i));
}

double hermiticity_defect(const Eigen::MatrixXcd& rho) {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double trace_defect(const Eigen::MatrixXcd& rho) {
  return std::abs(rho.trace() - cplx(1.0, 0.0));
}

double min_eigenvalue(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (rho + rho.adjoint()));
  return solver.eigenvalues().minCoeff();
}

// ---------------- picture / basis conversions ----------------

namespace {

// Multiply excited rows by phases and excited columns by their conjugates.
Eigen::MatrixXcd conjugate_excited_block(const Eigen::MatrixXcd& rho,
                                         const Eigen::VectorXcd& row_factors) {
  const int n = static_cast<int>(rho.rows()) - 1;
  Eigen::MatrixXcd out = rho;
  for (int a = 0; a < n; ++a) {
    out.row(a + 1) *= row_factors(a);
    out.col(a + 1) *= std::conj(row_factors(a));
  }
  return out;
}

}  // namespace

ReducedState to_schroedinger(const ReducedState& state, const GlobalBasis& basis) {
  if (state.picture == Picture::schroedinger) return state;
  if (state.basis != Basis::global)
    throw ValidationError("to_schroedinger: convert to the global basis first");
  Eigen::VectorXcd phases(basis.n());
  for (int a = 0; a < basis.n(); ++a)
    phases(a) = std::exp(cplx(0.0, -basis.energies(a) * state.time));
  ReducedState out = state;
  out.rho = conjugate_excited_block(state.rho, phases);
  out.picture = Picture::schroedinger;
  return out;
}

ReducedState to_interaction(const ReducedState& state, const GlobalBasis& basis) {
  if (state.picture == Picture::interaction) return state;
  if (state.basis != Basis::global)
    throw ValidationError("to_interaction: convert to the global basis first");
  Eigen::VectorXcd phases(basis.n());
  for (int a = 0; a < basis.n(); ++a)
    phases(a) = std::exp(cplx(0.0, basis.energies(a) * state.time));
  ReducedState out = state;
  out.rho = conjugate_excited_block(state.rho, phases);
  out.picture = Picture::interaction;
  return out;
}

ReducedState to_local(const ReducedState& state, const GlobalBasis& basis) {
  if (state.basis == Basis::local) return state;
  const int n = basis.n();
  ReducedState out = state;
  out.rho.block(1, 1, n, n) = basis.unitary * state.rho.block(1, 1, n, n) * basis.unitary.adjoint();
  out.rho.block(1, 0, n, 1) = basis.unitary * state.rho.block(1, 0, n, 1);
  out.rho.block(0, 1, 1, n) = state.rho.block(0, 1, 1, n) * basis.unitary.adjoint();
  out.basis = Basis::local;
  return out;
}

ReducedState to_global(const ReducedState& state, const GlobalBasis& basis) {
  if (state.basis == Basis::global) return state;
  const int n = basis.n();
  ReducedState out = state;
  out.rho.block(1, 1, n, n) = basis.unitary.adjoint() * state.rho.block(1, 1, n, n) * basis.unitary;
  out.rho.block(1, 0, n, 1) = basis.unitary.adjoint() * state.rho.block(1, 0, n, 1);
  out.rho.block(0, 1, 1, n) = state.rho.block(0, 1, 1, n) * basis.unitary;
  out.basis = Basis::global;
  return out;
}

// ---------------- diagonalize ----------------

GlobalBasis diagonalize(const SystemSpec& spec, const ReservoirSpec& reservoir) {
  spec.validate();
  reservoir.validate();
  const int n = spec.n();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(spec.h_s);
  if (solver.info() != Eigen::Success)
    throw NumericalError("diagonalize: eigensolver failed to converge");

  Eigen::VectorXd energies = solver.eigenvalues();  // ascending
  Eigen::MatrixXcd vectors = solver.eigenvectors();

  // Fix each column's phase: largest-magnitude component real and non-negative.
  std::vector<int> argmax(n);
  for (int c = 0; c < n; ++c) {
    int k = 0;
    double best = -1.0;
    for (int r = 0; r < n; ++r) {
      const double mag = std::abs(vectors(r, c));
      if (mag > best) { best = mag; k = r; }
    }
    argmax[c] = k;
    const cplx pivot = vectors(k, c);
    if (std::abs(pivot) > 0.0) vectors.col(c) *= std::conj(pivot) / std::abs(pivot);
  }

  // Order degenerate clusters by the argmax index (stable, deterministic).
  const double scale = std::max(1.0, energies.cwiseAbs().maxCoeff());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  int lo = 0;
  while (lo < n) {
    int hi = lo + 1;
    while (hi < n && energies(hi) - energies(hi - 1) < 1e-10 * scale) ++hi;
    std::stable_sort(order.begin() + lo, order.begin() + hi,
                     [&](int a, int b) { return argmax[a] < argmax[b]; });
    lo = hi;
  }

  GlobalBasis basis;
  basis.energies.resize(n);
  basis.unitary.resize(n, n);
  for (int c = 0; c < n; ++c) {
    basis.energies(c) = energies(order[c]);
    basis.unitary.col(c) = vectors.col(order[c]);
  }
  basis.detunings = basis.energies.array() - reservoir.eps;

  const double unitarity =
      (basis.unitary.adjoint() * basis.unitary - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  const double reconstruction =
      (basis.unitary * basis.energies.asDiagonal() * basis.unitary.adjoint() - spec.h_s)
          .cwiseAbs()
          .maxCoeff();
  if (unitarity > 1e-10 || reconstruction > 1e-10 * scale)
    throw NumericalError("diagonalize: eigendecomposition failed its round-trip check");
  return basis;
}

cplx correlation(const ReservoirSpec& reservoir, double t) {
  reservoir.validate();
  const double g2 = reservoir.g * reservoir.g;
  return g2 * std::exp(cplx(-0.5 * reservoir.gamma * std::abs(t), -reservoir.eps * t));
}

double spectral_density(const ReservoirSpec& reservoir, double omega) {
  reservoir.validate();
  const double half = 0.5 * reservoir.gamma;
  const double d = omega - reservoir.eps;
  return reservoir.gamma * reservoir.g * reservoir.g / (half * half + d * d);
}

}  // namespace lbath
