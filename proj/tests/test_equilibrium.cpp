#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vml/errors.hpp"
#include "vml/kernels.hpp"

#include <cmath>
#include <numbers>

using namespace vml;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
// reference values from 30-digit quadrature (mpmath)
constexpr double kMaxwellTau0Sq = 0.451510268827105100684;
constexpr double kMaxwellTau1Sq = 0.202877814245131189;
constexpr double kMaxwellKappa0Sq = 1.01438907122565594625;
constexpr double kMaxwellQ0Sq = 0.564890847245658219;
constexpr double kPowerTau0Sq = 0.689839837994077561;
constexpr double kPowerKappa0Sq = 1.03475975699111634;
}  // namespace

TEST_CASE("maxwellian value at rest") {
  const auto eq = Equilibrium::maxwellian(1.0);
  CHECK(eq.phi(1.0) == Approx(1.0 / std::pow(2.0 * kPi, 1.5)).epsilon(1e-14));
  CHECK(eq.phi(1.0) == Approx(0.0634936).epsilon(1e-6));
}

TEST_CASE("power law value at rest is the normalisation constant") {
  const auto eq = Equilibrium::power_law(1.0, 4.0);
  const double c0 = 1.0 / (kPi * std::sqrt(kPi) * std::tgamma(2.5) / std::tgamma(4.0));
  CHECK(eq.phi(1.0) == Approx(c0).epsilon(1e-12));
  CHECK(eq.normalization() == Approx(c0).epsilon(1e-12));
  CHECK(eq.newton_steps() == 1);
}

TEST_CASE("mass normalisation for the built-ins") {
  for (double n0 : {0.5, 1.0, 2.0}) {
    CHECK(mass(Equilibrium::maxwellian(n0)) == Approx(n0).epsilon(1e-8));
    CHECK(mass(Equilibrium::power_law(n0, 4.0)) == Approx(n0).epsilon(1e-8));
    CHECK(mass(Equilibrium::power_law(n0, 6.5)) == Approx(n0).epsilon(1e-8));
  }
}

TEST_CASE("phi is non-increasing and dphi matches differences") {
  for (const auto& eq : {Equilibrium::maxwellian(), Equilibrium::power_law()}) {
    for (double s = 1.0; s < 12.0; s += 0.37) {
      CHECK(eq.dphi(s) <= 0.0);
      const double h = 1e-5;
      const double fd = (eq.phi(s + h) - eq.phi(s - h)) / (2 * h);
      CHECK(eq.dphi(s) == Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(Equilibrium::power_law(1.0, 2.0), ValidationError);
  CHECK_THROWS_AS(Equilibrium::maxwellian(-1.0), ValidationError);
  CHECK_THROWS_AS(Equilibrium::from_config(parse_equilibrium_json(R"({"kind":"powerlaw","M":2})")),
                  ValidationError);
  CHECK_THROWS_AS(parse_equilibrium_json(R"({"kind":"juttner"})"), ValidationError);
  CHECK_THROWS_AS(parse_equilibrium_json("{not json"), ValidationError);
  CHECK_THROWS_AS(Equilibrium::tabulated({1.0, 2.0, 1.5, 3.0}, {1.0, 0.5, 0.2, 0.1}), ValidationError);
  try {
    Equilibrium::power_law(1.0, 2.0);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("M") != std::string::npos);
  }
}

TEST_CASE("json config") {
  const auto cfg = parse_equilibrium_json(R"({"kind":"power_law","n0":2.5,"M":5})");
  CHECK(cfg.kind == EquilibriumKind::power_law);
  CHECK(cfg.n0 == 2.5);
  CHECK(cfg.M == 5.0);
  CHECK(parse_equilibrium_json("{}").kind == EquilibriumKind::maxwellian);
}

TEST_CASE("tabulated profile is rescaled to n0") {
  std::vector<double> s, phi;
  for (int i = 0; i <= 400; ++i) {
    s.push_back(1.0 + 29.0 * i / 400.0);
    phi.push_back(std::exp(-2.0 * (s.back() - 1.0)));
  }
  const auto eq = Equilibrium::tabulated(s, phi, 1.5);
  CHECK(mass(eq) == Approx(1.5).epsilon(1e-8));
  CHECK_FALSE(eq.analytic());
  CHECK_FALSE(eq.non_monotone_warning());
  CHECK(eq.phi(40.0) == 0.0);
}

TEST_CASE("tau0^2 routes and reference values") {
  const Model m = make_model(Equilibrium::maxwellian());
  CHECK(m.c.spread() <= 1e-8);
  CHECK(m.c.tau0_sq == Approx(kMaxwellTau0Sq).epsilon(1e-12));
  CHECK(m.c.tau0_sq_q == Approx(kMaxwellTau0Sq).epsilon(1e-10));
  CHECK(m.c.tau0_sq_velocity == Approx(kMaxwellTau0Sq).epsilon(1e-10));
  CHECK(m.c.tau1_sq == Approx(kMaxwellTau1Sq).epsilon(1e-10));
  CHECK(m.c.kappa0_sq == Approx(kMaxwellKappa0Sq).epsilon(1e-10));
  CHECK(m.c.q0_sq == Approx(kMaxwellQ0Sq).epsilon(1e-10));

  const Model p = make_model(Equilibrium::power_law(1.0, 4.0));
  CHECK(p.c.tau0_sq == Approx(kPowerTau0Sq).epsilon(1e-10));
  CHECK(p.c.kappa0_sq == Approx(kPowerKappa0Sq).epsilon(1e-10));
  CHECK(p.c.tau1_sq > 0.0);
}

TEST_CASE("tau0^2 is linear in the density") {
  const Model a = make_model(Equilibrium::maxwellian(1.0));
  const Model b = make_model(Equilibrium::maxwellian(2.0));
  CHECK(b.c.tau0_sq == Approx(2.0 * a.c.tau0_sq).epsilon(1e-12));
}
