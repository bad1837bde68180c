#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vml/errors.hpp"
#include "vml/green.hpp"

#include <cmath>
#include <numbers>

using namespace vml;
using doctest::Approx;

namespace {
const Model& maxwell() {
  static const Model m = make_model(Equilibrium::maxwellian());
  return m;
}

double max_abs(const Eigen::VectorXd& v, int i0, int i1) {
  double r = 0.0;
  for (int i = i0; i <= i1; ++i) r = std::max(r, std::abs(v[i]));
  return r;
}
}  // namespace

TEST_CASE("time grid and resolution rule") {
  const Model& m = maxwell();
  const TimeGrid g = make_grid(1e-3, 2.0);
  CHECK(g.n_steps == 2000);
  CHECK(g.t_max() == Approx(2.0));
  CHECK_NOTHROW(check_resolution(m, 1.0, g));
  CHECK_THROWS_AS(check_resolution(m, 1.0, make_grid(0.2, 2.0)), ValidationError);
}

TEST_CASE("electric green function") {
  const Model& m = maxwell();
  const double k = 0.5;
  const GreenTrace r1 = electric_green(m, k, make_grid(1e-3, 10.0));
  CHECK(r1.values[0] == 0.0);
  const std::vector<double> ts{1.0, 5.0, 10.0};
  const auto br = bromwich_invert(m, Channel::electric, k, ts);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(r1.values[1000 * static_cast<int>(ts[j])] - br[j]) <= 1e-4);

  // residual of the defining identity, second order in dt
  const TimeGrid g1 = make_grid(2e-3, 4.0), g2 = make_grid(1e-3, 4.0);
  const GreenTrace a = electric_green(m, k, g1), b = electric_green(m, k, g2);
  const double e1 = electric_residual(a.values, memory_samples(m, Channel::electric, k, g1), g1.dt).cwiseAbs().maxCoeff();
  const double e2 = electric_residual(b.values, memory_samples(m, Channel::electric, k, g2), g2.dt).cwiseAbs().maxCoeff();
  CHECK(e2 <= 1e-6);
  CHECK(e1 / e2 == Approx(4.0).epsilon(0.1));
}

TEST_CASE("magnetic green function") {
  const Model& m = maxwell();
  SUBCASE("memory off is the bare oscillator") {
    const double k = 0.8, w = std::sqrt(k * k + m.c.tau0_sq);
    const TimeGrid g = make_grid(1e-3, 20.0);
    const GreenTrace h = magnetic_green(m, k, g, false);
    double err = 0.0;
    for (int i = 0; i <= g.n_steps; ++i) err = std::max(err, std::abs(h.values[i] - std::sin(w * g.t(i)) / w));
    CHECK(err <= 1e-6);
  }
  SUBCASE("initial data and contour inversion") {
    const double k = 1.0;
    const TimeGrid g = make_grid(1e-3, 10.0);
    const GreenTrace h = magnetic_green(m, k, g);
    CHECK(h.values[0] == 0.0);
    CHECK(h.derivative[0] == 1.0);
    const std::vector<double> ts{0.0, 1.0, 5.0, 10.0};
    const auto br = bromwich_invert(m, Channel::magnetic, k, ts);
    CHECK(std::abs(br[0]) <= 1e-5);
    for (int j = 1; j < 4; ++j) CHECK(std::abs(h.values[1000 * static_cast<int>(ts[j])] - br[j]) <= 1e-4);
    const auto br3 = bromwich_invert(m, Channel::magnetic, k, ts, 0.3);
    for (int j = 0; j < 4; ++j) CHECK(std::abs(br3[j] - br[j]) <= 1e-5);
    const auto res = magnetic_residual(h.values, memory_samples(m, Channel::magnetic, k, g), k * k + m.c.tau0_sq, g.dt);
    CHECK(res.cwiseAbs().maxCoeff() <= 1e-5);
  }
  CHECK_THROWS_AS(bromwich_invert(m, Channel::magnetic, 1.0, {1.0}, 2.0), ValidationError);
}

TEST_CASE("oscillatory / regular split") {
  const Model& m = maxwell();
  const double k0 = m.kappa0(), d = default_delta(m);
  SUBCASE("no electric poles far past kappa0") {
    const double k = k0 + 2 * d;
    GreenTrace tr = electric_green(m, k, make_grid(5e-3, 5.0));
    decompose(m, tr);
    CHECK(tr.roots.empty());
    CHECK((tr.regular - tr.values).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("magnetic oscillation has constant amplitude") {
    const double k = 0.6;
    const TimeGrid g = make_grid(2e-3, 60.0);
    GreenTrace tr = magnetic_green(m, k, g);
    decompose(m, tr);
    REQUIRE(tr.roots.size() == 2);
    const int per = static_cast<int>(2 * std::numbers::pi / nu_star(m, k) / g.dt) + 1;
    const double amp = 2.0 * std::abs(tr.residues[0]);
    CHECK(max_abs(tr.osc, 0, per) == Approx(amp).epsilon(1e-4));
    CHECK(max_abs(tr.osc, g.n_steps - per, g.n_steps) == Approx(amp).epsilon(1e-4));
  }
  SUBCASE("damped electric oscillation inside the continuation range") {
    const double k = k0 * 1.08;
    const TimeGrid g = make_grid(5e-3, 80.0);
    GreenTrace tr = electric_green(m, k, g);
    decompose(m, tr);
    REQUIRE(tr.roots.size() == 2);
    const double re = tr.roots[0].real();
    CHECK(re < 0.0);
    const int per = static_cast<int>(2 * std::numbers::pi / std::abs(tr.roots[0].imag()) / g.dt) + 1;
    const double early = max_abs(tr.osc, 0, per), late = max_abs(tr.osc, g.n_steps - per, g.n_steps);
    const double expect = std::exp(re * (g.t_max() - per * g.dt));
    CHECK(late / early == Approx(expect).epsilon(1e-2));
  }
}

TEST_CASE("decay fits") {
  std::vector<double> t, f;
  const double k = 0.5;
  for (int i = 0; i <= 4000; ++i) {
    t.push_back(0.1 * i);
    f.push_back(std::pow(1.0 + k * t.back(), -3.0));
  }
  const DecayFit a = fit_decay(t, f, k, Scaling::kt, 100.0, 400.0);
  CHECK(a.slope == Approx(-3.0).epsilon(0.05 / 3));
  CHECK(a.r2 > 0.999);
  // oscillating envelope: the local maxima carry the fit
  for (std::size_t i = 0; i < t.size(); ++i) f[i] *= std::cos(3.0 * t[i]);
  CHECK(fit_decay(t, f, k, Scaling::kt, 100.0, 400.0).slope == Approx(-3.0).epsilon(0.05 / 3));
}

TEST_CASE("spectral peak") {
  const int n = 4096;
  const double dt = 0.01;
  Eigen::VectorXcd x(n);
  for (int i = 0; i < n; ++i) x[i] = std::exp(cplx(0.0, 2.0 * i * dt)) + 0.3;
  double bin = 0.0;
  const double p = spectral_peak(x, dt, &bin);
  CHECK(bin == Approx(2 * std::numbers::pi / (n * dt)));
  CHECK(std::abs(p - 2.0) <= bin);
}
