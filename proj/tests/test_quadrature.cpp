#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vml/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace vml;
using doctest::Approx;

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1") {
  const GaussRule& g = gauss_legendre(16);
  CHECK(g.w.sum() == Approx(2.0).epsilon(1e-15));
  double s = 0.0;
  for (int i = 0; i < 16; ++i) s += g.w[i] * std::pow(g.x[i], 30);
  CHECK(s == Approx(2.0 / 31.0).epsilon(1e-14));
  CHECK(&gauss_legendre(16) == &g);  // cached
}

TEST_CASE("adaptive kronrod on finite and semi-infinite ranges") {
  auto r = integrate<double>([](double x) { return std::sqrt(x); }, 0.0, 1.0, 0.0, 1e-12);
  CHECK(r.converged);
  CHECK(r.value == Approx(2.0 / 3.0).epsilon(1e-12));

  auto e = integrate_to_inf<double>([](double x) { return std::exp(-x); }, 0.0);
  CHECK(e.value == Approx(1.0).epsilon(1e-12));
  // a > 0 uses the s = a / (1 - xi) map
  auto p = integrate_to_inf<double>([](double x) { return 1.0 / (x * x * x); }, 2.0);
  CHECK(p.value == Approx(0.125).epsilon(1e-12));

  auto c = integrate<cplx>([](double x) { return std::exp(cplx(0.0, 3.0 * x)); }, 0.0, 1.0);
  const cplx exact = (std::exp(cplx(0.0, 3.0)) - 1.0) / cplx(0.0, 3.0);
  CHECK(std::abs(c.value - exact) < 1e-13);
}

TEST_CASE("gregory weights are exact for cubics") {
  for (int n : {5, 8, 13}) {
    const auto w = gregory_weights(n);
    REQUIRE(static_cast<int>(w.size()) == n + 1);
    double s = 0.0;
    for (int i = 0; i <= n; ++i) s += w[i] * std::pow(static_cast<double>(i), 3);
    CHECK(s == Approx(std::pow(n, 4) / 4.0).epsilon(1e-12));
  }
}

TEST_CASE("oscillatory moments against direct quadrature") {
  for (double theta : {0.0, 1e-3, 0.7, 25.0}) {
    cplx m[6];
    oscillatory_moments(theta, 5, m);
    for (int j = 0; j <= 5; ++j) {
      auto d = integrate<cplx>([&](double s) { return std::pow(s, j) * std::exp(cplx(0.0, theta * s)); }, -1.0, 1.0,
                               1e-15, 1e-14);
      CHECK(std::abs(m[j] - d.value) < 1e-12);
    }
  }
}

TEST_CASE("panel fourier transform of a smooth amplitude") {
  auto amp = [](double x) { return cplx(std::exp(-x), 0.0); };
  const auto ps = build_panels(amp, {0.0, 1.0, 3.0}, 1e-14);
  for (double w : {0.0, 2.0, 40.0}) {
    const cplx exact = (std::exp(cplx(-1.0, w) * 3.0) - 1.0) / cplx(-1.0, w);
    CHECK(std::abs(panels_fourier(ps, w) - exact) < 1e-12);
  }
  for (const auto& p : ps)
    if (p.a <= 0.1 && 0.1 <= p.b) CHECK(std::abs(eval_panel(p, 0.1) - std::exp(-0.1)) < 1e-13);
}
