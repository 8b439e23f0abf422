// test_model.cpp — parameter records, eigendecomposition, reservoir functions,
// picture/basis conversions, and JSON config round-trips.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#ifdef LBATH_HAVE_BOOST_QUADRATURE
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#endif

#include "lbath/config.hpp"
#include "lbath/model.hpp"
#include "lbath/types.hpp"

using namespace lbath;

namespace {

Eigen::MatrixXcd random_hermitian(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(dist(rng), dist(rng));
  return 0.5 * (m + m.adjoint().eval());
}

}  // namespace

TEST_CASE("reservoir validation") {
  ReservoirSpec r{1.0, 2.0, 0.0};
  CHECK_NOTHROW(r.validate());
  r.g = 0.0;  // decoupled edge case is legal
  CHECK_NOTHROW(r.validate());
  r.g = -1.0;
  CHECK_THROWS_AS(r.validate(), ValidationError);
  r = ReservoirSpec{1.0, 0.0, 0.0};
  CHECK_THROWS_AS(r.validate(), ValidationError);
  r = ReservoirSpec{1.0, 1.0, std::nan("")};
  CHECK_THROWS_AS(r.validate(), ValidationError);
}

TEST_CASE("system validation names the worst entry pair") {
  SystemSpec spec;
  spec.h_s = Eigen::MatrixXcd::Zero(2, 2);
  spec.h_s(0, 1) = cplx(0.0, 1.0);
  spec.h_s(1, 0) = cplx(0.0, 1.0);  // not the conjugate
  try {
    spec.validate();
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("(0,1)") != std::string::npos);
  }
  spec.h_s = Eigen::MatrixXcd();
  CHECK_THROWS_AS(spec.validate(), ValidationError);
}

TEST_CASE("initial state normalization") {
  InitialState state;
  state.psi0 = 0.6;
  state.psi = Eigen::VectorXcd::Constant(1, 0.8);
  CHECK_NOTHROW(state.validate());
  state.psi(0) = 0.9;
  CHECK_THROWS_AS(state.validate(), ValidationError);
  state.psi.resize(0);
  CHECK_THROWS_AS(state.validate(), ValidationError);
}

TEST_CASE("time grid validation") {
  CHECK_NOTHROW(validate_times({0.0, 0.5, 1.0}));
  CHECK_THROWS_AS(validate_times({}), ValidationError);
  CHECK_THROWS_AS(validate_times({-1.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(validate_times({0.0, 1.0, 1.0}), ValidationError);
}

TEST_CASE("correlation function closed forms") {
  CHECK(std::abs(correlation({1.0, 2.0, 0.0}, 0.0) - 1.0) < 1e-15);
  CHECK(std::abs(correlation({1.0, 2.0, 0.0}, 1.0) - std::exp(-1.0)) < 1e-15);

  // (g=2, gamma=1, eps=3, t=pi): 4 e^{-pi/2} e^{-3 pi i}; phase -3pi == pi.
  const cplx value = correlation({2.0, 1.0, 3.0}, std::numbers::pi);
  CHECK(std::abs(std::abs(value) - 4.0 * std::exp(-std::numbers::pi / 2)) < 1e-12);
  CHECK(std::abs(value - cplx(-4.0 * std::exp(-std::numbers::pi / 2), 0.0)) < 1e-12);

  // |G(t)| monotone non-increasing.
  const ReservoirSpec r{0.7, 1.3, 2.0};
  double prev = std::abs(correlation(r, 0.0));
  for (double t = 0.1; t < 5.0; t += 0.1) {
    const double cur = std::abs(correlation(r, t));
    CHECK(cur <= prev + 1e-15);
    prev = cur;
  }
}

TEST_CASE("spectral density peak and half-width") {
  const ReservoirSpec r{1.5, 0.8, -2.0};
  const double peak = 4.0 * r.g * r.g / r.gamma;
  CHECK(spectral_density(r, r.eps) == doctest::Approx(peak).epsilon(1e-14));
  CHECK(spectral_density(r, r.eps + 0.5 * r.gamma) == doctest::Approx(0.5 * peak).epsilon(1e-14));
  CHECK(spectral_density(r, r.eps - 0.5 * r.gamma) == doctest::Approx(0.5 * peak).epsilon(1e-14));
  CHECK(spectral_density(r, 100.0) > 0.0);
}

#ifdef LBATH_HAVE_BOOST_QUADRATURE
TEST_CASE("spectral density integrates to g^2 over 2 pi") {
  const ReservoirSpec r{1.3, 0.7, 5.0};
  const auto f = [&](double w) { return spectral_density(r, w); };
  const double lo = r.eps - 1e4 * r.gamma, hi = r.eps + 1e4 * r.gamma;
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 10) /
      (2.0 * std::numbers::pi);
  CHECK(integral == doctest::Approx(r.g * r.g).epsilon(1e-4));
}

TEST_CASE("correlation is the Fourier transform of the spectral density") {
  // (1/2pi) Int J(w) e^{-iwt} dw = e^{-i eps t} (1/pi) Int_0^inf Jc(x) cos(xt) dx
  // with Jc(x) = gamma g^2 / ((gamma/2)^2 + x^2); compare against G(t).
  for (const ReservoirSpec r : {ReservoirSpec{1.0, 2.0, 0.0}, ReservoirSpec{0.6, 0.9, 3.0},
                                ReservoirSpec{2.0, 4.0, -1.0}}) {
    boost::math::quadrature::ooura_fourier_cos<double> cos_rule;
    const auto centered = [&](double x) {
      return r.gamma * r.g * r.g / (0.25 * r.gamma * r.gamma + x * x);
    };
    for (double t : {0.3, 1.0, 2.5}) {
      const double transform = cos_rule.integrate(centered, t).first / std::numbers::pi;
      const double expected = std::abs(correlation(r, t));
      CHECK(std::abs(transform - expected) < 1e-6 * expected);
    }
  }
}
#endif

TEST_CASE("diagonalize: known small systems") {
  SystemSpec one;
  one.h_s = Eigen::MatrixXcd::Constant(1, 1, 2.0);
  const GlobalBasis b1 = diagonalize(one, {1.0, 1.0, 1.0});
  CHECK(b1.energies(0) == doctest::Approx(2.0));
  CHECK(std::abs(b1.unitary(0, 0) - 1.0) < 1e-14);
  CHECK(b1.detunings(0) == doctest::Approx(1.0));

  SystemSpec diagonal;
  diagonal.h_s = Eigen::MatrixXcd::Zero(2, 2);
  diagonal.h_s(0, 0) = 1.0;
  diagonal.h_s(1, 1) = 3.0;
  const GlobalBasis b2 = diagonalize(diagonal, {1.0, 1.0, 0.0});
  CHECK(b2.energies(0) == doctest::Approx(1.0));
  CHECK(b2.energies(1) == doctest::Approx(3.0));
  CHECK((b2.unitary - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

  SystemSpec flip;
  flip.h_s = Eigen::MatrixXcd::Zero(2, 2);
  flip.h_s(0, 1) = 1.0;
  flip.h_s(1, 0) = 1.0;
  const GlobalBasis b3 = diagonalize(flip, {1.0, 1.0, 0.0});
  CHECK(b3.energies(0) == doctest::Approx(-1.0));
  CHECK(b3.energies(1) == doctest::Approx(1.0));
  const double inv = 1.0 / std::sqrt(2.0);
  // Columns are (1,-1)/sqrt2 and (1,1)/sqrt2 up to the pivot phase convention:
  // entries real, the antisymmetric column has opposite signs, the symmetric
  // column is made entrywise positive by the convention.
  CHECK(std::abs(std::abs(b3.unitary(0, 0)) - inv) < 1e-12);
  CHECK(std::abs(b3.unitary(1, 0) + b3.unitary(0, 0)) < 1e-12);
  CHECK(std::abs(b3.unitary(0, 1) - inv) < 1e-12);
  CHECK(std::abs(b3.unitary(1, 1) - inv) < 1e-12);
  CHECK(std::abs(b3.unitary(0, 0).imag()) < 1e-13);
}

TEST_CASE("diagonalize: round trip and unitarity on random Hermitian input") {
  for (unsigned seed : {11u, 22u, 33u}) {
    SystemSpec spec;
    spec.h_s = random_hermitian(5, seed);
    const GlobalBasis basis = diagonalize(spec, {1.0, 1.0, 0.3});
    const Eigen::MatrixXcd rebuilt =
        basis.unitary * basis.energies.asDiagonal() * basis.unitary.adjoint();
    CHECK((rebuilt - spec.h_s).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((basis.unitary.adjoint() * basis.unitary - Eigen::MatrixXcd::Identity(5, 5))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    for (int a = 0; a + 1 < 5; ++a) CHECK(basis.energies(a) <= basis.energies(a + 1));
    for (int a = 0; a < 5; ++a)
      CHECK(basis.detunings(a) == basis.energies(a) - 0.3);
  }
}

TEST_CASE("diagonalize: deterministic on degenerate spectra") {
  SystemSpec spec;
  spec.h_s = Eigen::MatrixXcd::Identity(3, 3) * 2.0;
  const GlobalBasis a = diagonalize(spec, {1.0, 1.0, 0.0});
  const GlobalBasis b = diagonalize(spec, {1.0, 1.0, 0.0});
  CHECK((a.unitary - b.unitary).cwiseAbs().maxCoeff() == 0.0);
  // Identity input: the argmax tie-break keeps the identity column order.
  CHECK((a.unitary - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("state helpers") {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
  rho(0, 0) = 0.25;
  rho(1, 1) = 0.75;
  rho(0, 1) = cplx(0.1, 0.2);
  rho(1, 0) = std::conj(rho(0, 1));
  CHECK(hermiticity_defect(rho) < 1e-15);
  CHECK(trace_defect(rho) < 1e-15);
  CHECK(min_eigenvalue(rho) > 0.0);

  rho(1, 0) = cplx(0.1, 0.2);  // break Hermiticity: defect |rho01 - conj(rho10)| = 0.4
  CHECK(hermiticity_defect(rho) == doctest::Approx(0.4));
  rho(1, 1) = 0.5;
  CHECK(trace_defect(rho) == doctest::Approx(0.25));
}

TEST_CASE("picture and basis conversions round-trip") {
  SystemSpec spec;
  spec.h_s = random_hermitian(3, 7u);
  const GlobalBasis basis = diagonalize(spec, {1.0, 1.0, 0.2});

  ReducedState state;
  state.rho = Eigen::MatrixXcd::Random(4, 4);
  state.rho = 0.5 * (state.rho + state.rho.adjoint().eval());
  state.basis = Basis::global;
  state.picture = Picture::interaction;
  state.time = 1.7;

  const ReducedState s = to_schroedinger(state, basis);
  CHECK(s.picture == Picture::schroedinger);
  // Populations are picture-invariant; coherences pick up known phases.
  for (int a = 0; a < 4; ++a)
    CHECK(std::abs(s.rho(a, a) - state.rho(a, a)) < 1e-14);
  const cplx phase = std::exp(cplx(0.0, -basis.energies(0) * state.time));
  CHECK(std::abs(s.rho(1, 0) - phase * state.rho(1, 0)) < 1e-14);

  const ReducedState back = to_interaction(s, basis);
  CHECK((back.rho - state.rho).cwiseAbs().maxCoeff() < 1e-13);

  const ReducedState local = to_local(state, basis);
  CHECK(local.basis == Basis::local);
  CHECK(std::abs(local.rho(0, 0) - state.rho(0, 0)) < 1e-14);         // ground untouched
  CHECK(std::abs(local.rho.trace() - state.rho.trace()) < 1e-13);     // unitary on block
  const ReducedState global = to_global(local, basis);
  CHECK((global.rho - state.rho).cwiseAbs().maxCoeff() < 1e-13);

  // Schroedinger conversion demands the global basis.
  ReducedState wrong = local;
  wrong.picture = Picture::interaction;
  CHECK_THROWS_AS(to_schroedinger(wrong, basis), ValidationError);
}

TEST_CASE("config JSON round-trip") {
  ModelConfig config;
  config.system.h_s = random_hermitian(2, 99u);
  config.reservoir = {0.8, 1.7, -0.4};
  config.initial.psi0 = cplx(0.5, 0.0);
  config.initial.psi = Eigen::VectorXcd::Zero(2);
  config.initial.psi(0) = cplx(0.0, 0.5);
  config.initial.psi(1) = cplx(0.5, 0.5);

  const std::string text = serialize_model_config(config);
  const ModelConfig parsed = parse_model_config(text);
  CHECK((parsed.system.h_s - config.system.h_s).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(parsed.reservoir.g == config.reservoir.g);
  CHECK(parsed.reservoir.gamma == config.reservoir.gamma);
  CHECK(parsed.reservoir.eps == config.reservoir.eps);
  CHECK(std::abs(parsed.initial.psi0 - config.initial.psi0) < 1e-15);
  CHECK((parsed.initial.psi - config.initial.psi).cwiseAbs().maxCoeff() < 1e-15);

  const std::string path = "config_roundtrip_tmp.json";
  save_model_config(config, path);
  const ModelConfig loaded = load_model_config(path);
  CHECK((loaded.system.h_s - config.system.h_s).cwiseAbs().maxCoeff() < 1e-15);
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_model_config("no_such_file.json"), ValidationError);
  CHECK_THROWS_AS(parse_model_config("{not json"), ValidationError);
  CHECK_THROWS_AS(parse_model_config("{\"n\": 1}"), ValidationError);
}
