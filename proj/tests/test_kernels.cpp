#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vml/kernels.hpp"

#include <cmath>
#include <numbers>

using namespace vml;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
const double kC = std::exp(0.5) / std::pow(2.0 * kPi, 1.5);  // maxwellian, n0 = 1

double maxwell_kappa(double u) {
  const double a2 = 1.0 / (1.0 - u * u);
  return -2.0 * kPi * kC * (a2 + 2.0) * std::exp(-0.5 * a2);
}

const Model& maxwell() {
  static const Model m = make_model(Equilibrium::maxwellian());
  return m;
}
}  // namespace

TEST_CASE("kappa and q are even, non-positive, and vanish at the ends") {
  const auto& eq = maxwell().eq;
  CHECK(kappa(eq, 0.37) == Approx(kappa(eq, -0.37)).epsilon(1e-12));
  const GaussRule& g = gauss_legendre(64);
  for (int i = 0; i < 64; ++i) {
    CHECK(kappa(eq, g.x[i]) <= 0.0);
    CHECK(q_kernel(eq, g.x[i]) <= 0.0);
    CHECK(std::abs(q_kernel(eq, g.x[i]) - q_kernel(eq, -g.x[i])) <= 1e-10);
  }
  CHECK(std::abs(q_kernel(eq, 1.0 - 1e-6)) <= 1e-8);
  CHECK(std::abs(q_kernel(eq, -1.0 + 1e-6)) <= 1e-8);
}

TEST_CASE("closed forms") {
  const auto& eq = maxwell().eq;
  for (double u : {0.0, 0.3, 0.5, 0.9, 0.99}) {
    CHECK(kappa(eq, u) == Approx(maxwell_kappa(u)).epsilon(1e-10));
    const double om = 1.0 - u * u;
    CHECK(q_kernel(eq, u) == Approx(-4.0 * kPi * om * kC * std::exp(-0.5 / om)).epsilon(1e-10));
  }
  const auto pl = Equilibrium::power_law(1.0, 4.0);
  const double c0 = pl.normalization(), M = 4.0;
  for (double u : {0.0, 0.5, 0.9}) {
    const double om = 1.0 - u * u;
    CHECK(kappa(pl, u) == Approx(-2.0 * kPi * M * c0 * std::pow(om, M - 1.0) / (M - 1.0)).epsilon(1e-10));
    CHECK(q_kernel(pl, u) == Approx(-2.0 * kPi * c0 * std::pow(om, M) / (M - 1.0)).epsilon(1e-10));
  }
}

TEST_CASE("table integrals reproduce the constants") {
  const Model& m = maxwell();
  const auto& t = m.table;
  double half_q = 0.0, k0 = 0.0;
  for (int i = 0; i < t.n; ++i) {
    half_q -= 0.5 * t.w[i] * t.q[i];
    k0 -= t.w[i] * t.u[i] * t.u[i] * t.kappa[i] / (1.0 - t.u[i] * t.u[i]);
  }
  CHECK(half_q == Approx(m.c.tau0_sq).epsilon(1e-8));
  CHECK(k0 == Approx(m.c.kappa0_sq).epsilon(1e-8));
  CHECK(t.value_at(KernelKind::kappa, 0.4321) == Approx(maxwell_kappa(0.4321)).epsilon(1e-9));
}

TEST_CASE("power-law kappa0^2 by direct quadrature of the closed form") {
  const Model p = make_model(Equilibrium::power_law(1.0, 4.0));
  const double c0 = p.eq.normalization();
  auto f = [&](double u) { return 2.0 * kPi * 4.0 * c0 * u * u * std::pow(1.0 - u * u, 2.0) / 3.0; };
  const double ref = integrate<double>(f, -1.0, 1.0, 0.0, 1e-14).value;
  CHECK(p.c.kappa0_sq == Approx(ref).epsilon(1e-9));
}

TEST_CASE("continuation of kappa") {
  const auto& eq = maxwell().eq;
  CHECK(std::abs(kappa_analytic(eq, 0.4) - kappa(eq, 0.4)) <= 1e-12);
  const cplx z(0.9, 0.1), zeta = 1.0 / (1.0 - z * z);
  const cplx ref = -2.0 * kPi * kC * (zeta + 2.0) * std::exp(-0.5 * zeta);
  CHECK(std::abs(kappa_analytic(eq, z) - ref) <= 1e-10 * std::abs(ref));
  const cplx w(0.3, -0.2);
  CHECK(std::abs(kappa_analytic(eq, std::conj(w)) - std::conj(kappa_analytic(eq, w))) <= 1e-13);
}

TEST_CASE("memory kernels near t = 0") {
  const Model& m = maxwell();
  for (double k : {0.1, 0.5, 3.0}) {
    CHECK(memory_K(m, k, 0.0) == 0.0);
    CHECK(memory_N(m, k, 0.0) == 0.0);
  }
  // odd in t, so the one-sided quotient is already second order
  const double h = 1e-4, k = 0.5;
  CHECK(memory_K(m, k, h) / h == Approx(m.c.tau0_sq).epsilon(1e-6));
  double u2q = 0.0;
  for (int i = 0; i < m.table.n; ++i) u2q += m.table.w[i] * m.table.u[i] * m.table.u[i] * m.table.q[i];
  const double dN = memory_N(m, k, h) / h;
  CHECK(dN <= 0.0);
  CHECK(dN == Approx(0.5 * k * k * u2q).epsilon(1e-6));
}

TEST_CASE("memory kernel decay envelope") {
  // k K_k(t) depends on k t only, so the fitted constant is the same for every k
  const Model& m = maxwell();
  std::vector<double> cs;
  for (double k : {0.3, 1.0, 3.0}) {
    double C = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double t = 200.0 / k * i / 400.0, kt = k * t;
      C = std::max(C, std::abs(memory_K(m, k, t)) * k * std::pow(1.0 + kt * kt, 1.5));
    }
    CHECK(std::isfinite(C));
    cs.push_back(C);
  }
  CHECK(cs[1] == Approx(cs[0]).epsilon(1e-8));
  CHECK(cs[2] == Approx(cs[0]).epsilon(1e-8));
}

TEST_CASE("laplace transform against time quadrature") {
  const Model& m = maxwell();
  for (auto [lam, k] : {std::pair{1.0, 1.0}, std::pair{0.3, 0.5}, std::pair{2.0, 2.0}}) {
    auto f = [&](double t) { return std::exp(-lam * t) * memory_K(m, k, t); };
    double ref = 0.0;
    for (int j = 0; j < 200; ++j) ref += integrate<double>(f, 0.5 * j, 0.5 * (j + 1), 1e-16, 1e-13).value;
    ref += integrate_to_inf<double>(f, 100.0, 1e-16).value;
    CHECK(std::abs(laplace_K(m, k, lam) - ref) <= 1e-8);
  }
  const cplx l(0.4, 0.7);
  CHECK(std::abs(laplace_K(m, 0.6, std::conj(l)) - std::conj(laplace_K(m, 0.6, l))) <= 1e-14);
}

TEST_CASE("cauchy integral off the real axis") {
  const Model& m = maxwell();
  const cplx z(0.5, -0.3);
  auto f = [&](double u) { return u * maxwell_kappa(u) / (u + z); };
  const cplx ref = integrate<cplx>(f, -1.0, 1.0, 1e-15, 1e-13).value;
  CHECK(std::abs(cauchy(m, KernelKind::kappa, z) - ref) <= 1e-8);
  // approaching the segment from below
  const cplx on = cauchy(m, KernelKind::kappa, 0.5);
  const cplx below = cauchy(m, KernelKind::kappa, cplx(0.5, -1e-7));
  const cplx above = cauchy(m, KernelKind::kappa, cplx(0.5, 1e-7), true);
  CHECK(std::abs(on - below) <= 1e-6);
  CHECK(std::abs(on - above) <= 1e-6);
}
