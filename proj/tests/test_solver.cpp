#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vml/errors.hpp"
#include "vml/solver.hpp"

#include <cmath>
#include <numbers>

using namespace vml;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
const Model& maxwell() {
  static const Model m = make_model(Equilibrium::maxwellian());
  return m;
}
}  // namespace

TEST_CASE("free-streaming source") {
  const Model& m = maxwell();
  const auto d = make_mode_data(m, 0.7, Profile::kappa, Profile::q);
  double mass = 0.0;
  for (int i = 0; i < m.table.n; ++i) mass += m.table.w[i] * m.table.kappa[i];
  CHECK(std::abs(source_S(d, 0.0) - mass) <= 1e-12 * std::abs(mass));
  // uniform-grid Fourier sum as the oracle: kappa is flat to all orders at +-1
  const int n = 4096;
  for (double t : {0.0, 1.0, 7.5, 40.0, 300.0}) {
    cplx ref = 0.0;
    for (int j = 1; j < n; ++j) {
      const double u = -1.0 + 2.0 * j / n;
      ref += std::exp(cplx(0.0, -0.7 * u * t)) * kappa(m.eq, u);
    }
    ref *= 2.0 / n;
    const cplx s = source_S(d, t);
    CHECK(std::abs(s - ref) <= 1e-6);
    CHECK(std::abs(s.imag()) <= 1e-12);
  }
  CHECK_THROWS_AS(parse_profile("triangle"), ValidationError);
}

TEST_CASE("density mode") {
  const Model& m = maxwell();
  const double k = 0.5;
  const TimeGrid g = make_grid(5e-3, 50.0);
  const auto d = make_mode_data(m, k, Profile::kappa, Profile::q);
  const ModeSolution sol = solve_phi_mode(m, d, g);
  CHECK(sol.route_gap <= 1e-5);
  double bin = 0.0;
  CHECK(std::abs(spectral_peak(sol.rho, g.dt, &bin) - tau_star(m, k)) <= bin);
  const OracleResult o = kinetic_oracle_elec(m, d, g);
  CHECK((sol.rho - o.values).cwiseAbs().maxCoeff() <= 1e-3);
  CHECK_FALSE(o.recurrence);
}

TEST_CASE("oracle with the coupling off streams freely") {
  const Model& m = maxwell();
  const double k = 1.0;
  const TimeGrid g = make_grid(1e-2, 30.0);
  const auto d = make_mode_data(m, k, Profile::gaussian, Profile::q);
  const OracleResult o = kinetic_oracle_elec(m, d, g, 512, false);
  const Eigen::VectorXcd s = source_trace(d.h0, k, g, false);
  CHECK((o.values - s).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(recurrence_time(k, 1024) / recurrence_time(k, 512) == Approx(2.0).epsilon(0.01));
}

TEST_CASE("vector potential mode") {
  const Model& m = maxwell();
  SUBCASE("memory off, no source") {
    const double k = 0.9, w = std::sqrt(k * k + m.c.tau0_sq);
    const auto d = make_mode_data(m, k, Profile::zero, Profile::zero, 1.0, 0.0);
    ModeSolution sol;
    sol.k = k;
    sol.grid = make_grid(1e-3, 20.0);
    solve_A_mode(m, d, sol, false);
    double err = 0.0;
    for (int i = 0; i <= sol.grid.n_steps; ++i) err = std::max(err, std::abs(sol.A[i] - std::cos(w * sol.grid.t(i))));
    CHECK(err <= 1e-6);
  }
  SUBCASE("initial data") {
    const auto d = make_mode_data(m, 0.4, Profile::kappa, Profile::q, cplx(0.3, 0.1), cplx(-0.2, 0.5));
    const ModeSolution sol = solve_mode(m, d, make_grid(1e-3, 1.0));
    CHECK(std::abs(sol.A[0] - d.A0) <= 1e-14);
    CHECK(std::abs(sol.dA[0] - d.A1) <= 1e-14);
  }
  SUBCASE("against the kinetic oracle") {
    const double k = 1.0;
    const TimeGrid g = make_grid(5e-3, 50.0);
    const auto d = make_mode_data(m, k, Profile::kappa, Profile::q, 1.0, 0.5);
    ModeSolution sol;
    sol.k = k;
    sol.grid = g;
    solve_A_mode(m, d, sol);
    const OracleResult o = kinetic_oracle_mag(m, d, g);
    CHECK((sol.A - o.values).cwiseAbs().maxCoeff() <= 1e-3);
    double bin = 0.0;
    CHECK(std::abs(spectral_peak(sol.A, g.dt, &bin) - nu_star(m, k)) <= bin);
  }
}

TEST_CASE("magnetic oracle without coupling") {
  const Model& m = maxwell();
  const double k = 0.7, w2 = k * k + m.c.tau0_sq;
  const TimeGrid g = make_grid(1e-2, 40.0);
  SUBCASE("undriven oscillator keeps its energy") {
    const auto d = make_mode_data(m, k, Profile::zero, Profile::zero, 1.0, 0.3);
    const OracleResult o = kinetic_oracle_mag(m, d, g, 256, false);
    const double e0 = std::norm(o.values[0]) + std::norm(o.derivative[0]) / w2;
    for (int i = 0; i <= g.n_steps; ++i) {
      const double e = std::norm(o.values[i]) + std::norm(o.derivative[i]) / w2;
      CHECK(e / e0 <= 1.01);
      CHECK(e / e0 >= 1.0 / 1.01);
    }
  }
  SUBCASE("driven by the free-streamed current") {
    const auto d = make_mode_data(m, k, Profile::zero, Profile::q, 0.0, 0.0);
    const OracleResult o = kinetic_oracle_mag(m, d, g, 512, false);
    ModeSolution sol;
    sol.k = k;
    sol.grid = g;
    solve_A_mode(m, d, sol, false);
    CHECK((sol.A - o.values).cwiseAbs().maxCoeff() <= 1e-4);
  }
}

TEST_CASE("no secular growth of the vector potential") {
  const Model& m = maxwell();
  const double k = 1.0;
  const auto d = make_mode_data(m, k, Profile::zero, Profile::q, 1.0, 0.0);
  ModeSolution sol;
  sol.k = k;
  sol.grid = make_grid(1e-2, 200.0);
  solve_A_mode(m, d, sol);
  double early = 0.0, late = 0.0;
  for (int i = 0; i <= sol.grid.n_steps; ++i) {
    const double t = sol.grid.t(i), a = std::abs(sol.A[i]);
    if (t <= 50.0) early = std::max(early, a);
    if (t >= 150.0) late = std::max(late, a);
  }
  CHECK(late <= 1.05 * early);
}

TEST_CASE("free transport in physical space") {
  const auto chi = Equilibrium::maxwellian(1.0);
  const double sigma = 1.0;
  for (double r : {0.0, 0.5, 2.0}) {
    const double rho0 = std::exp(-r * r / 2.0) / std::pow(2.0 * kPi, 1.5);
    CHECK(free_transport_density(chi, sigma, 0.0, r) == Approx(rho0).epsilon(1e-10));
  }
  const double m0 = free_transport_mass(chi, sigma, 0.0);
  CHECK(m0 == Approx(1.0).epsilon(1e-8));
  CHECK(free_transport_mass(chi, sigma, 8.0) == Approx(m0).epsilon(1e-6));
  const double a = std::pow(10.0, 3) * free_transport_sup(chi, sigma, 10.0);
  const double b = std::pow(30.0, 3) * free_transport_sup(chi, sigma, 30.0);
  CHECK(b / a < 10.0);
  CHECK(a / b < 10.0);
}
