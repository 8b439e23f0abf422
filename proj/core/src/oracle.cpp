// oracle.cpp — discretized-bath Schroedinger integration and Volterra quadrature.
#include "lbath/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lbath/model.hpp"

namespace lbath {

DiscretizedReservoir DiscretizedReservoir::make(const ReservoirSpec& reservoir, int k_modes,
                                                double width) {
  reservoir.validate();
  if (k_modes < 2) throw ValidationError("DiscretizedReservoir: need at least 2 modes");
  if (!(width > 0.0)) throw ValidationError("DiscretizedReservoir: width must be > 0");
  DiscretizedReservoir disc;
  disc.width = width;
  disc.omegas.resize(k_modes);
  disc.couplings.resize(k_modes);
  const double step = 2.0 * width / k_modes;
  for (int k = 0; k < k_modes; ++k) {
    disc.omegas(k) = reservoir.eps - width + (k + 0.5) * step;
    disc.couplings(k) =
        std::sqrt(spectral_density(reservoir, disc.omegas(k)) * step / (2.0 * std::numbers::pi));
  }
  return disc;
}

std::vector<Eigen::VectorXcd> evolve_friedrichs(const InitialState& state, const SystemSpec& spec,
                                                const DiscretizedReservoir& disc,
                                                const std::vector<double>& times, double dt) {
  state.validate();
  spec.validate();
  validate_times(times);
  const int n = spec.n();
  const int k_modes = disc.modes();
  if (state.n() != n)
    throw ValidationError("evolve_friedrichs: state size does not match h_s size");
  if (static_cast<long>(n) * k_modes > 1'000'000)
    throw ValidationError("evolve_friedrichs: K*N = " + std::to_string(static_cast<long>(n) * k_modes) +
                          " exceeds the desk-scale budget of 1e6");
  if (dt <= 0.0) dt = 0.04 / disc.width;

  // Exact substep generators.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eigen(spec.h_s);
  if (eigen.info() != Eigen::Success)
    throw NumericalError("evolve_friedrichs: H_S eigendecomposition failed");
  const Eigen::MatrixXcd q = eigen.eigenvectors();
  const Eigen::VectorXd energies = eigen.eigenvalues();
  const double coupling_norm = disc.couplings.norm();
  const Eigen::VectorXd unit_coupling =
      coupling_norm > 0.0 ? Eigen::VectorXd(disc.couplings / coupling_norm)
                          : Eigen::VectorXd(Eigen::VectorXd::Zero(k_modes));

  Eigen::VectorXcd sys = state.psi;
  Eigen::MatrixXcd bath = Eigen::MatrixXcd::Zero(k_modes, n);  // column i = modes of level i

  auto half_free = [&](double h) {  // exact e^{-i (H_S ⊕ omega) h}
    Eigen::VectorXcd phases(n);
    for (int a = 0; a < n; ++a) phases(a) = std::exp(cplx(0.0, -energies(a) * h));
    sys = q * phases.asDiagonal() * (q.adjoint() * sys);
    Eigen::VectorXcd mode_phases(k_modes);
    for (int k = 0; k < k_modes; ++k) mode_phases(k) = std::exp(cplx(0.0, -disc.omegas(k) * h));
    bath = mode_phases.asDiagonal() * bath;
  };
  auto full_coupling = [&](double h) {  // exact per-level rotation in span{|i>, |v_i>}
    if (coupling_norm == 0.0) return;
    const double angle = coupling_norm * h;
    const double c = std::cos(angle), s = std::sin(angle);
    for (int i = 0; i < n; ++i) {
      const cplx overlap = unit_coupling.transpose() * bath.col(i);
      const cplx new_sys = c * sys(i) - cplx(0.0, s) * overlap;
      const cplx new_overlap = c * overlap - cplx(0.0, s) * sys(i);
      bath.col(i) += (new_overlap - overlap) * unit_coupling;
      sys(i) = new_sys;
    }
  };

  std::vector<Eigen::VectorXcd> out;
  out.reserve(times.size());
  double now = 0.0;
  for (double target : times) {
    while (target - now > 1e-12 * (1.0 + target)) {
      const double h = std::min(dt, target - now);
      half_free(0.5 * h);
      full_coupling(h);
      half_free(0.5 * h);
      now += h;
    }
    out.push_back(sys);
  }
  return out;
}

namespace {

int node_count(double t_max, double dt) {
  if (!(dt > 0.0)) throw ValidationError("volterra: dt must be > 0");
  if (!(t_max > 0.0)) throw ValidationError("volterra: t_max must be > 0");
  return std::max(1, static_cast<int>(std::ceil(t_max / dt - 1e-12)));
}

}  // namespace

std::vector<Eigen::VectorXcd> volterra_psi(const InitialState& state, const GlobalBasis& basis,
                                           const ReservoirSpec& reservoir, double t_max,
                                           double dt) {
  state.validate();
  reservoir.validate();
  if (state.n() != basis.n())
    throw ValidationError("volterra_psi: state size does not match basis size");
  const int n = basis.n();
  const int steps = node_count(t_max, dt);

  Eigen::VectorXcd kernel(steps + 1);  // G(j dt)
  for (int j = 0; j <= steps; ++j) kernel(j) = correlation(reservoir, j * dt);

  std::vector<Eigen::VectorXcd> psi(steps + 1);
  psi[0] = basis.unitary.adjoint() * state.psi;
  const Eigen::VectorXcd minus_ih =
      (cplx(0.0, -1.0) * basis.energies.cast<cplx>().array()).matrix();

  // trapezoidal memory integral at node j, optionally overriding the endpoint value
  auto memory = [&](int j, const Eigen::VectorXcd& endpoint) {
    Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(n);
    if (j == 0) return sum;
    sum = 0.5 * kernel(j) * psi[0] + 0.5 * kernel(0) * endpoint;
    for (int m = 1; m < j; ++m) sum += kernel(j - m) * psi[m];
    return Eigen::VectorXcd(dt * sum);
  };
  auto rhs = [&](const Eigen::VectorXcd& value, const Eigen::VectorXcd& mem) {
    return Eigen::VectorXcd(minus_ih.cwiseProduct(value) - mem);
  };

  for (int j = 0; j < steps; ++j) {
    const Eigen::VectorXcd f0 = rhs(psi[j], memory(j, psi[j]));
    const Eigen::VectorXcd predictor = psi[j] + dt * f0;
    const Eigen::VectorXcd f1 = rhs(predictor, memory(j + 1, predictor));
    psi[j + 1] = psi[j] + 0.5 * dt * (f0 + f1);
  }
  return psi;
}

std::vector<Eigen::MatrixXcd> volterra_sigma(const InitialState& state, const GlobalBasis& basis,
                                             const ReservoirSpec& reservoir, double t_max,
                                             double dt) {
  state.validate();
  reservoir.validate();
  if (state.n() != basis.n())
    throw ValidationError("volterra_sigma: state size does not match basis size");
  const int n = basis.n();
  const int steps = node_count(t_max, dt);

  // Entrywise kernels K_ab(j dt) for a <= b; K_ba = conj(K_ab).
  std::vector<Eigen::MatrixXcd> kernel(steps + 1, Eigen::MatrixXcd(n, n));
  for (int j = 0; j <= steps; ++j) {
    const cplx g = correlation(reservoir, j * dt);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const cplx left = g * std::exp(cplx(0.0, basis.energies(a) * j * dt));
        const cplx right = std::conj(g * std::exp(cplx(0.0, basis.energies(b) * j * dt)));
        kernel[j](a, b) = left + right;
      }
  }

  std::vector<Eigen::MatrixXcd> sigma(steps + 1);
  const Eigen::VectorXcd psi0 = basis.unitary.adjoint() * state.psi;
  sigma[0] = psi0 * psi0.adjoint();

  auto memory = [&](int j, const Eigen::MatrixXcd& endpoint) {
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
    if (j == 0) return sum;
    sum = 0.5 * kernel[j].cwiseProduct(sigma[0]) + 0.5 * kernel[0].cwiseProduct(endpoint);
    for (int m = 1; m < j; ++m) sum += kernel[j - m].cwiseProduct(sigma[m]);
    return Eigen::MatrixXcd(dt * sum);
  };

  for (int j = 0; j < steps; ++j) {
    const Eigen::MatrixXcd f0 = -memory(j, sigma[j]);
    const Eigen::MatrixXcd predictor = sigma[j] + dt * f0;
    const Eigen::MatrixXcd f1 = -memory(j + 1, predictor);
    Eigen::MatrixXcd next = sigma[j] + 0.5 * dt * (f0 + f1);
    for (int a = 0; a < n; ++a) {  // exact Hermitian mirror of the a <= b entries
      next(a, a) = cplx(next(a, a).real(), 0.0);
      for (int b = a + 1; b < n; ++b) next(b, a) = std::conj(next(a, b));
    }
    sigma[j + 1] = next;
  }
  return sigma;
}

}  // namespace lbath
