// linalg.hpp — small dense numerics shared by the dynamics modules:
// closed-form 2x2 exponentials, stable quadratic/cubic root solvers,
// an eigendecomposition propagator, and an adaptive RK45 integrator.
#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lbath/types.hpp"

namespace lbath {

// sinh(z)/z, series-guarded near z = 0 (covers the Jordan/critically-damped case).
inline cplx sinhc(cplx z) {
  if (std::abs(z) < 1e-4) {
    const cplx z2 = z * z;
    return 1.0 + z2 / 6.0 * (1.0 + z2 / 20.0);
  }
  return std::sinh(z) / z;
}

// Closed-form exponential of a 2x2 complex matrix:
// e^M = e^mu (cosh(d) I + sinhc(d) (M - mu I)), mu = tr/2, d^2 = mu^2 - det.
inline Eigen::Matrix2cd expm_2x2(const Eigen::Matrix2cd& m) {
  const cplx mu = 0.5 * m.trace();
  const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const cplx d = std::sqrt(mu * mu - det);
  const cplx scale = std::exp(mu);
  Eigen::Matrix2cd out = sinhc(d) * (m - mu * Eigen::Matrix2cd::Identity());
  out(0, 0) += std::cosh(d);
  out(1, 1) += std::cosh(d);
  return scale * out;
}

// Roots of the monic quadratic z^2 + b z + c, computed without cancellation:
// the larger-magnitude root from the formula, the other from the product c.
inline std::pair<cplx, cplx> quadratic_roots(cplx b, cplx c) {
  const cplx d = std::sqrt(b * b - 4.0 * c);
  // pick the sign that maximizes |b + sign*d|
  const cplx s = (std::real(std::conj(b) * d) >= 0.0) ? d : -d;
  const cplx big = -0.5 * (b + s);
  if (std::abs(big) == 0.0) return {cplx(0.0), cplx(0.0)};  // b = c = 0
  return {big, c / big};
}

// Roots of the monic cubic z^3 + a1 z^2 + a2 z + a3 by the complex Cardano
// formula (branch chosen to avoid cancellation), polished by two Newton steps.
inline std::array<cplx, 3> cubic_roots_cardano(cplx a1, cplx a2, cplx a3) {
  const cplx p = a2 - a1 * a1 / 3.0;
  const cplx q = 2.0 * a1 * a1 * a1 / 27.0 - a1 * a2 / 3.0 + a3;

  std::array<cplx, 3> roots;
  const double scale = std::max({std::abs(p), std::abs(q), 1e-300});
  if (std::abs(p) / scale < 1e-30 && std::abs(q) / scale < 1e-30) {
    roots = {cplx(0.0), cplx(0.0), cplx(0.0)};  // triple root of the depressed cubic
  } else {
    const cplx s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    const cplx w3 = (std::abs(-q / 2.0 + s) >= std::abs(-q / 2.0 - s)) ? -q / 2.0 + s : -q / 2.0 - s;
    const cplx w = std::pow(w3, 1.0 / 3.0);
    const cplx omega(-0.5, std::sqrt(3.0) / 2.0);
    cplx wk = w;
    for (int k = 0; k < 3; ++k) {
      roots[k] = wk - p / (3.0 * wk);
      wk *= omega;
    }
  }

  for (auto& z : roots) {
    z -= a1 / 3.0;
    for (int iter = 0; iter < 2; ++iter) {  // Newton polish on the original cubic
      const cplx f = ((z + a1) * z + a2) * z + a3;
      const cplx df = (3.0 * z + 2.0 * a1) * z + a2;
      if (std::abs(df) < 1e-300) break;
      z -= f / df;
    }
  }
  return roots;
}

// Same roots via the companion-matrix eigenvalues (independent route).
inline std::array<cplx, 3> cubic_roots_companion(cplx a1, cplx a2, cplx a3) {
  Eigen::Matrix3cd companion = Eigen::Matrix3cd::Zero();
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  companion(0, 2) = -a3;
  companion(1, 2) = -a2;
  companion(2, 2) = -a1;
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("cubic_roots_companion: eigensolver failed");
  return {solver.eigenvalues()(0), solver.eigenvalues()(1), solver.eigenvalues()(2)};
}

// Minimum over root pairings of the largest per-root distance (3 elements).
inline double match_roots_distance(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b) {
  static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  double best = std::numeric_limits<double>::infinity();
  for (const auto& perm : perms) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  }
  return best;
}

// Propagates v(t) = e^{Mt} v0 through the eigendecomposition of M. If two
// eigenvalues are closer than 1e-9 * scale the matrix diagonal is perturbed by
// multiples of 1e-12 * scale and a warning is recorded (grids can hit the
// measure-zero degenerate sets).
class EigenPropagator {
 public:
  explicit EigenPropagator(const Eigen::MatrixXcd& m, std::vector<std::string>* warnings = nullptr) {
    const double scale = std::max(1e-300, m.cwiseAbs().maxCoeff());
    Eigen::MatrixXcd work = m;
    for (int attempt = 0; attempt < 4; ++attempt) {
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(work);
      if (solver.info() != Eigen::Success) throw NumericalError("EigenPropagator: eigensolver failed");
      values_ = solver.eigenvalues();
      vectors_ = solver.eigenvectors();
      double gap = std::numeric_limits<double>::infinity();
      for (int i = 0; i < values_.size(); ++i)
        for (int j = i + 1; j < values_.size(); ++j)
          gap = std::min(gap, std::abs(values_(i) - values_(j)));
      if (gap >= 1e-9 * scale) {
        lu_.compute(vectors_);
        return;
      }
      if (warnings)
        warnings->push_back("EigenPropagator: eigenvalue gap " + std::to_string(gap) +
                            " below 1e-9*scale; perturbing diagonal");
      for (int i = 0; i < work.rows(); ++i)
        work(i, i) += cplx(0.0, 1e-12 * scale * static_cast<double>(i + 1) * static_cast<double>(attempt + 1));
    }
    lu_.compute(vectors_);  // proceed with the last perturbation
  }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v0, double t) const {
    Eigen::VectorXcd coeffs = lu_.solve(v0);
    for (int i = 0; i < coeffs.size(); ++i) coeffs(i) *= std::exp(values_(i) * t);
    return vectors_ * coeffs;
  }

  const Eigen::VectorXcd& eigenvalues() const { return values_; }

 private:
  Eigen::VectorXcd values_;
  Eigen::MatrixXcd vectors_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
};

// Adaptive Dormand-Prince 5(4) integrator for dy/dt = rhs(t, y), y complex.
// Returns y(t1). Throws NumericalError if the step count explodes.
template <class Rhs>
Eigen::VectorXcd integrate_rk45(Rhs&& rhs, Eigen::VectorXcd y, double t0, double t1,
                                double rtol = 1e-10, double atol = 1e-12) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  if (t1 == t0) return y;
  if (t1 < t0) throw ValidationError("integrate_rk45: t1 < t0");

  double t = t0;
  double h = (t1 - t0) / 16.0;
  Eigen::VectorXcd k1 = rhs(t, y);
  for (long steps = 0; steps < 2'000'000; ++steps) {
    if (t >= t1) return y;
    h = std::min(h, t1 - t);

    const Eigen::VectorXcd k2 = rhs(t + c2 * h, y + h * (a21 * k1));
    const Eigen::VectorXcd k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Eigen::VectorXcd k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::VectorXcd k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::VectorXcd k6 =
        rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Eigen::VectorXcd y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::VectorXcd k7 = rhs(t + h, y5);
    const Eigen::VectorXcd err_vec =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      const double tol = atol + rtol * std::max(std::abs(y(i)), std::abs(y5(i)));
      err = std::max(err, std::abs(err_vec(i)) / tol);
    }

    if (err <= 1.0) {
      t += h;
      y = y5;
      k1 = k7;  // FSAL
    }
    const double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
    if (!(h > 0.0) || !std::isfinite(h))
      throw NumericalError("integrate_rk45: step size underflow at t = " + std::to_string(t));
  }
  throw NumericalError("integrate_rk45: step budget exhausted before reaching t1");
}

}  // namespace lbath
