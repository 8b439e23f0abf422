// types.hpp — domain records shared by every module: system/reservoir parameters,
// initial states, reduced density matrices, and rate tables.
#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lbath {

using cplx = std::complex<double>;

// Thrown when user-supplied parameters or states violate their documented contracts.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when an internal numerical cross-check misses its tolerance
// (solver non-convergence, closed-form disagreement, ...).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------- parameter records ----------------

// Reservoir with Lorentzian spectral density: coupling g, width gamma, peak center eps.
// All energies are plain doubles in user-chosen units (hbar = 1).
// g = 0 is accepted as the decoupled (free-evolution) edge case.
struct ReservoirSpec {
  double g = 1.0;
  double gamma = 1.0;
  double eps = 0.0;

  void validate() const {
    if (!(g >= 0.0)) throw ValidationError("ReservoirSpec: g must be >= 0 (got " + std::to_string(g) + ")");
    if (!(gamma > 0.0)) throw ValidationError("ReservoirSpec: gamma must be > 0 (got " + std::to_string(gamma) + ")");
    if (!std::isfinite(eps)) throw ValidationError("ReservoirSpec: eps must be finite");
  }
};

// Excited-subspace Hamiltonian H_S: N x N Hermitian, local-basis entries
// (level energies on the diagonal, couplings off it).
struct SystemSpec {
  Eigen::MatrixXcd h_s;

  int n() const { return static_cast<int>(h_s.rows()); }

  // Hermiticity within 1e-12 relative to the largest entry; names the worst pair on failure.
  void validate() const {
    if (h_s.rows() < 1 || h_s.rows() != h_s.cols())
      throw ValidationError("SystemSpec: h_s must be square with N >= 1");
    const double scale = std::max(1.0, h_s.cwiseAbs().maxCoeff());
    double worst = 0.0;
    int wi = 0, wj = 0;
    for (int i = 0; i < h_s.rows(); ++i)
      for (int j = i; j < h_s.cols(); ++j) {
        const double defect = std::abs(h_s(i, j) - std::conj(h_s(j, i)));
        if (defect > worst) { worst = defect; wi = i; wj = j; }
      }
    if (worst > 1e-12 * scale)
      throw ValidationError("SystemSpec: h_s is not Hermitian; worst entry pair (" +
                            std::to_string(wi) + "," + std::to_string(wj) + ") vs (" +
                            std::to_string(wj) + "," + std::to_string(wi) + "), defect " +
                            std::to_string(worst));
  }
};

// Eigendecomposition of H_S: ascending energies E_alpha, eigenvector columns U
// (h_s = U diag(E) U^dagger), and detunings Delta E_alpha = E_alpha - eps.
struct GlobalBasis {
  Eigen::VectorXd energies;
  Eigen::MatrixXcd unitary;
  Eigen::VectorXd detunings;

  int n() const { return static_cast<int>(energies.size()); }
};

// One-excitation-sector initial state: ground amplitude psi0 and excited
// amplitudes psi in the local basis (the basis h_s is written in).
struct InitialState {
  cplx psi0{0.0, 0.0};
  Eigen::VectorXcd psi;

  int n() const { return static_cast<int>(psi.size()); }

  void validate() const {
    if (psi.size() < 1) throw ValidationError("InitialState: psi must have N >= 1 entries");
    const double norm2 = std::norm(psi0) + psi.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-12)
      throw ValidationError("InitialState: |psi0|^2 + ||psi||^2 = " + std::to_string(norm2) +
                            ", expected 1 within 1e-12");
  }
};

// ---------------- results ----------------

enum class Basis { global, local };
enum class Picture { interaction, schroedinger };

// (N+1) x (N+1) reduced density matrix; index 0 is the ground state,
// 1..N are the excited levels in the tagged basis.
struct ReducedState {
  Eigen::MatrixXcd rho;
  Basis basis = Basis::global;
  Picture picture = Picture::interaction;
  double time = 0.0;

  int n() const { return static_cast<int>(rho.rows()) - 1; }
};

enum class Method { exact, born, redfield, gksl };

const char* to_string(Method m);

// Population decay rates eta_alpha, excited-ground decoherence rates eta_alpha0,
// and the symmetric excited-excited decoherence matrix eta_alphabeta.
// `time` is the sampling time for the time-dependent redfield table (NaN otherwise).
struct RateTable {
  Method method = Method::exact;
  double time = std::numeric_limits<double>::quiet_NaN();
  Eigen::VectorXd eta_alpha;
  Eigen::VectorXd eta_alpha0;
  Eigen::MatrixXd eta_alphabeta;

  int n() const { return static_cast<int>(eta_alpha.size()); }
};

// ---------------- state helpers ----------------

// Requires a strictly ascending grid with times[0] >= 0; throws ValidationError.
void validate_times(const std::vector<double>& times);

// max |rho(i,j) - conj(rho(j,i))|
double hermiticity_defect(const Eigen::MatrixXcd& rho);

// |tr rho - 1|
double trace_defect(const Eigen::MatrixXcd& rho);

// smallest eigenvalue of the Hermitian part of rho
double min_eigenvalue(const Eigen::MatrixXcd& rho);

// Picture/basis conversions. Interaction -> Schroedinger multiplies the excited
// rows/columns by e^{-iE_alpha t} / e^{+iE_beta t} (the ground energy is 0);
// global -> local conjugates the excited block by U.
ReducedState to_schroedinger(const ReducedState& state, const GlobalBasis& basis);
ReducedState to_interaction(const ReducedState& state, const GlobalBasis& basis);
ReducedState to_local(const ReducedState& state, const GlobalBasis& basis);
ReducedState to_global(const ReducedState& state, const GlobalBasis& basis);

}  // namespace lbath
