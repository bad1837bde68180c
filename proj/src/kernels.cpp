#include "vml/kernels.hpp"

#include "vml/errors.hpp"
#include "vml/parallel.hpp"

#include <numbers>

namespace vml {

namespace {

constexpr double kPi = std::numbers::pi;

// int_a^inf g(s) ds for the profile, splitting at table knots when needed
template <class G>
double profile_tail(const Equilibrium& eq, G&& g, double a) {
  if (eq.kind() != EquilibriumKind::tabulated) {
    auto r = integrate_to_inf<double>(g, a, 0.0, 1e-14, 4000);
    return r.value;
  }
  const double end = eq.support_end();
  if (a >= end) return 0.0;
  std::vector<double> br{a};
  for (double s : eq.knots())
    if (s > a && s < end) br.push_back(s);
  br.push_back(end);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i)
    total += integrate<double>(g, br[i], br[i + 1], 0.0, 1e-13).value;
  return total;
}

double one_minus_sq(double u) { return (1.0 - u) * (1.0 + u); }

bool pl_entire(const Equilibrium& eq) {
  return eq.kind() == EquilibriumKind::power_law && eq.M() == std::floor(eq.M());
}

// continuation domain of the built-in kernels: Re zeta > 0, or anywhere for an
// integer power law where the kernels are polynomials
bool in_domain(const Equilibrium& eq, cplx z) {
  if (!eq.analytic()) return false;
  if (pl_entire(eq)) return true;
  return 1.0 - z.real() * z.real() + z.imag() * z.imag() > 0.0;
}

std::size_t panel_index(const std::vector<ChebPanel>& ps, double u) {
  std::size_t lo = 0, hi = ps.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (u < ps[mid].a) hi = mid;
    else lo = mid;
  }
  return lo;
}

double panel_slope(const ChebPanel& p, double x) {
  const double m = 0.5 * (p.a + p.b), h = 0.5 * (p.b - p.a);
  const double s = (x - m) / h;
  double acc = 0.0;
  for (int j = ChebPanel::N - 1; j >= 1; --j) acc = acc * s + j * p.mono[j].real();
  return acc / h;
}

}  // namespace

double kappa(const Equilibrium& eq, double u) {
  const double om = one_minus_sq(u);
  if (!(om > 0.0)) return 0.0;
  const double a = 1.0 / std::sqrt(om);
  return 2.0 * kPi * profile_tail(eq, [&](double s) { return eq.dphi(s) * s * s; }, a);
}

double q_kernel(const Equilibrium& eq, double u) {
  const double om = one_minus_sq(u);
  if (!(om > 0.0)) return 0.0;
  const double a = 1.0 / std::sqrt(om);
  return -4.0 * kPi * om * profile_tail(eq, [&](double s) { return eq.phi(s) * s; }, a);
}

cplx kappa_analytic(const Equilibrium& eq, cplx z) {
  if (!in_domain(eq, z)) throw ValidationError("kappa continuation requested outside its domain");
  const cplx zeta = 1.0 / ((1.0 - z) * (1.0 + z));
  auto g = [&](double s) { return eq.dF(zeta * (s * s)) * (zeta * zeta) * (s * s * s); };
  auto r = integrate_to_inf<cplx>(g, 1.0, 0.0, 1e-14, 4000);
  return 4.0 * kPi * r.value;
}

cplx q_analytic(const Equilibrium& eq, cplx z) {
  if (!in_domain(eq, z)) throw ValidationError("q continuation requested outside its domain");
  const cplx zeta = 1.0 / ((1.0 - z) * (1.0 + z));
  auto g = [&](double s) { return eq.F(zeta * (s * s)) * s; };
  auto r = integrate_to_inf<cplx>(g, 1.0, 0.0, 1e-14, 4000);
  return -4.0 * kPi * r.value;
}

double KernelTable::value_at(KernelKind which, double u) const {
  if (!(std::abs(u) < 1.0)) return 0.0;
  const auto& ps = which == KernelKind::kappa ? panels_kappa : panels_q;
  return eval_panel(ps[panel_index(ps, u)], u).real();
}

double KernelTable::slope_at(KernelKind which, double u) const {
  if (!(std::abs(u) < 1.0)) return 0.0;
  const auto& ps = which == KernelKind::kappa ? panels_ukappa : panels_uq;
  return panel_slope(ps[panel_index(ps, u)], u);
}

KernelTable build_kernel_table(const Equilibrium& eq, int n, int panels) {
  KernelTable t;
  t.n = n;
  const GaussRule& g = gauss_legendre(n);
  t.u = g.x;
  t.w = g.w;
  t.kappa.resize(n);
  t.q.resize(n);
  parallel_for(n, [&](int i) {
    t.kappa[i] = kappa(eq, t.u[i]);
    t.q[i] = q_kernel(eq, t.u[i]);
  });
  // panels graded toward +-1 where the kernels flatten out
  std::vector<double> br(panels + 1);
  for (int i = 0; i <= panels; ++i) br[i] = -std::cos(kPi * i / panels);
  br.front() = -1.0;
  br.back() = 1.0;
  const auto& s = lobatto_nodes();
  t.panels_kappa.resize(panels);
  t.panels_q.resize(panels);
  t.panels_ukappa.resize(panels);
  t.panels_uq.resize(panels);
  parallel_for(panels, [&](int p) {
    const double a = br[p], b = br[p + 1], m = 0.5 * (a + b), h = 0.5 * (b - a);
    std::array<cplx, ChebPanel::N> vk, vq, vuk, vuq;
    for (int i = 0; i < ChebPanel::N; ++i) {
      const double u = (i == 0) ? b : (i == ChebPanel::N - 1 ? a : m + h * s[i]);
      const double kk = kappa(eq, u), qq = q_kernel(eq, u);
      vk[i] = kk;
      vq[i] = qq;
      vuk[i] = u * kk;
      vuq[i] = u * qq;
    }
    t.panels_kappa[p] = make_panel(a, b, vk);
    t.panels_q[p] = make_panel(a, b, vq);
    t.panels_ukappa[p] = make_panel(a, b, vuk);
    t.panels_uq[p] = make_panel(a, b, vuq);
  });
  return t;
}

double ModelConstants::spread() const {
  const double lo = std::min({tau0_sq, tau0_sq_q, tau0_sq_velocity});
  const double hi = std::max({tau0_sq, tau0_sq_q, tau0_sq_velocity});
  return (hi - lo) / std::abs(tau0_sq);
}

ModelConstants compute_constants(const Equilibrium& eq, const KernelTable& t) {
  ModelConstants c;
  const auto& u = t.u;
  const auto& w = t.w;
  for (int i = 0; i < t.n; ++i) {
    const double u2 = u[i] * u[i];
    c.tau0_sq -= w[i] * u2 * t.kappa[i];
    c.tau0_sq_q -= 0.5 * w[i] * t.q[i];
    c.tau1_sq -= w[i] * u2 * u2 * t.kappa[i];
    c.kappa0_sq -= w[i] * u2 * t.kappa[i] / ((1.0 - u[i]) * (1.0 + u[i]));
    c.q0_sq -= 0.5 * w[i] * t.q[i] / ((1.0 - u[i]) * (1.0 + u[i]));
  }
  auto vel = [&](double r) {
    const double r2 = r * r, s2 = 1.0 + r2;
    return (1.0 + 2.0 * r2 / 3.0) / (s2 * std::sqrt(s2)) * eq.phi(std::sqrt(s2)) * r2;
  };
  double v = 0.0;
  if (eq.kind() == EquilibriumKind::tabulated) {
    std::vector<double> br{0.0};
    for (double s : eq.knots())
      if (s > 1.0) br.push_back(std::sqrt(s * s - 1.0));
    for (std::size_t i = 0; i + 1 < br.size(); ++i)
      v += integrate<double>(vel, br[i], br[i + 1], 0.0, 1e-13).value;
  } else {
    v = integrate_to_inf<double>(vel, 0.0, 0.0, 1e-14, 4000).value;
  }
  c.tau0_sq_velocity = 4.0 * kPi * v;
  return c;
}

Model make_model(const Equilibrium& eq, int n) {
  Model m{eq, build_kernel_table(eq, n), {}};
  m.c = compute_constants(eq, m.table);
  while (m.c.spread() > 1e-8 && m.table.n < 4096) {
    m.table = build_kernel_table(eq, 2 * m.table.n);
    m.c = compute_constants(eq, m.table);
  }
  return m;
}

double omega_fn(const Model& m, double y, int deriv) {
  const auto& t = m.table;
  double acc = 0.0;
  for (int i = 0; i < t.n; ++i) {
    const double u2 = t.u[i] * t.u[i];
    const double den = 1.0 - y * u2;
    const double term = t.w[i] * u2 * t.kappa[i];
    if (deriv == 0) acc -= term / den;
    else if (deriv == 1) acc -= term * u2 / (den * den);
    else acc -= 2.0 * term * u2 * u2 / (den * den * den);
  }
  return acc;
}

double psi_fn(const Model& m, double y, int deriv) {
  const auto& t = m.table;
  double acc = 0.0;
  for (int i = 0; i < t.n; ++i) {
    const double u2 = t.u[i] * t.u[i];
    const double den = 1.0 - y * u2;
    const double term = t.w[i] * t.q[i];
    if (deriv == 0) acc -= 0.5 * term / den;
    else if (deriv == 1) acc -= 0.5 * term * u2 / (den * den);
    else acc -= term * u2 * u2 / (den * den * den);
  }
  return acc;
}

namespace {

double odd_sine_moment(const Model& m, KernelKind which, double omega) {
  const auto& t = m.table;
  if (std::abs(omega) <= 50.0) {
    const auto& g = t.values(which);
    double acc = 0.0;
    for (int i = 0; i < t.n; ++i) acc += t.w[i] * t.u[i] * g[i] * std::sin(omega * t.u[i]);
    return acc;
  }
  const auto& ps = which == KernelKind::kappa ? t.panels_ukappa : t.panels_uq;
  return panels_fourier(ps, omega).imag();
}

}  // namespace

double memory_K(const Model& m, double k, double t) {
  if (k == 0.0) return m.c.tau0_sq * t;  // limit of the sine moment over k
  return -odd_sine_moment(m, KernelKind::kappa, k * t) / k;
}

double memory_N(const Model& m, double k, double t) {
  return 0.5 * k * odd_sine_moment(m, KernelKind::q, k * t);
}

cplx cauchy(const Model& m, KernelKind which, cplx z, bool continued) {
  const auto& t = m.table;
  const auto& g = t.values(which);
  const double x = z.real(), y = z.imag();
  const double dist = std::abs(x) <= 1.0 ? std::abs(y) : std::hypot(std::abs(x) - 1.0, y);
  const cplx I(0.0, 1.0);

  auto direct = [&]() {
    cplx acc = 0.0;
    for (int i = 0; i < t.n; ++i) acc += t.w[i] * t.u[i] * g[i] / (t.u[i] + z);
    return acc;
  };
  // int [f(u) - f(-z)]/(u+z) du + f(-z) L, with f = u g
  auto subtract = [&](cplx gz, cplx L) {
    const cplx fz = -z * gz;
    cplx acc = 0.0;
    for (int i = 0; i < t.n; ++i) {
      const cplx d = t.u[i] + z;
      if (std::abs(d) < 1e-7) acc += t.w[i] * t.slope_at(which, -x);
      else acc += t.w[i] * (t.u[i] * g[i] - fz) / d;
    }
    return acc + fz * L;
  };
  auto g_complex = [&](cplx zz) {
    return which == KernelKind::kappa ? kappa_analytic(m.eq, zz) : q_analytic(m.eq, zz);
  };

  if (continued && y > 0.0) {
    if (!in_domain(m.eq, z)) throw ValidationError("continuation outside the kernel domain");
    const cplx L = std::log(1.0 + z) - std::log(z - 1.0) + 2.0 * kPi * I;
    return subtract(g_complex(z), L);
  }
  if (y == 0.0 && std::abs(x) < 1.0) {
    const cplx L = std::log((1.0 + x) / (1.0 - x)) + kPi * I;
    // pointwise quadrature keeps relative accuracy where g is tiny near +-1
    const double gx = which == KernelKind::kappa ? kappa(m.eq, x) : q_kernel(m.eq, x);
    return subtract(gx, L);
  }
  if (dist >= 0.1 || y == 0.0) return direct();
  if (in_domain(m.eq, z) && (std::abs(x) < 1.0 || pl_entire(m.eq))) {
    const cplx L = std::log(1.0 + z) - std::log(z - 1.0);
    return subtract(g_complex(z), L);
  }
  if (std::abs(x) >= 1.0) return direct();
  // tabulated profile close to the cut: adaptive quadrature on the interpolant
  auto f = [&](double u) { return cplx(u * t.value_at(which, u)) / (u + z); };
  const double mid = std::clamp(-x, -1.0, 1.0);
  return integrate<cplx>(f, -1.0, mid, 1e-15, 1e-12, 8000).value +
         integrate<cplx>(f, mid, 1.0, 1e-15, 1e-12, 8000).value;
}

cplx laplace_K(const Model& m, double k, cplx lambda) {
  if (k == 0.0) return m.c.tau0_sq / (lambda * lambda);
  const cplx z = cplx(0.0, -1.0) * lambda / k;
  return -cauchy(m, KernelKind::kappa, z) / (k * k);
}

cplx laplace_N(const Model& m, double k, cplx lambda) {
  if (k == 0.0) return 0.0;
  const cplx z = cplx(0.0, -1.0) * lambda / k;
  return 0.5 * cauchy(m, KernelKind::q, z);
}

}  // namespace vml
