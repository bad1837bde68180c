#include "vml/dispersion.hpp"

#include "vml/errors.hpp"

#include <limits>
#include <numbers>

namespace vml {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);
const double kNaN = std::numeric_limits<double>::quiet_NaN();

cplx phi_cont(const Model& m, cplx z) { return cauchy(m, KernelKind::kappa, z, true); }

// derivative of the continued Cauchy transform, five-point stencil
cplx phi_cont_prime(const Model& m, cplx z) {
  const double h = std::min(1e-4, 1e-2 * (1.0 - z.real()));
  const cplx a = phi_cont(m, z + h), b = phi_cont(m, z - h);
  const cplx c = phi_cont(m, z + 2.0 * h), d = phi_cont(m, z - 2.0 * h);
  return (8.0 * (a - b) - (c - d)) / (12.0 * h);
}
}  // namespace

cplx D_axis(const Model& m, double tau, double k) {
  if (k == 0.0) return 1.0 - m.c.tau0_sq / (tau * tau);
  if (std::abs(tau) > k) {
    const double y = (k * k) / (tau * tau);
    return 1.0 - omega_fn(m, y) / (tau * tau);
  }
  return 1.0 - cauchy(m, KernelKind::kappa, cplx(tau / k, 0.0)) / (k * k);
}

cplx M_axis(const Model& m, double tau, double k) {
  if (k == 0.0) return -tau * tau + m.c.tau0_sq;
  if (std::abs(tau) > k) {
    const double y = (k * k) / (tau * tau);
    return -tau * tau + k * k + psi_fn(m, y);
  }
  return -tau * tau + k * k + m.c.tau0_sq + 0.5 * cauchy(m, KernelKind::q, cplx(tau / k, 0.0));
}

cplx D_fn(const Model& m, cplx lambda, double k, bool continued) {
  if (k == 0.0) return 1.0 + m.c.tau0_sq / (lambda * lambda);
  if (lambda.real() == 0.0) return D_axis(m, lambda.imag(), k);
  if (lambda.real() > 0.0) return 1.0 + laplace_K(m, k, lambda);
  if (!continued) throw ValidationError("D is defined for Re lambda >= 0 unless continued");
  const cplx z = -kI * lambda / k;
  return 1.0 - phi_cont(m, z) / (k * k);
}

cplx M_fn(const Model& m, cplx lambda, double k) {
  if (lambda.real() == 0.0) return M_axis(m, lambda.imag(), k);
  if (lambda.real() < 0.0) throw ValidationError("M is evaluated for Re lambda >= 0");
  return lambda * lambda + k * k + m.c.tau0_sq + laplace_N(m, k, lambda);
}

double tau_star(const Model& m, double k) {
  k = std::abs(k);
  const double t2 = m.c.tau0_sq, k2max = m.c.kappa0_sq;
  if (k == 0.0) return std::sqrt(t2);
  if (k * k > k2max * (1.0 + 1e-14)) throw ValidationError("tau_star needs k <= kappa0");
  if (k * k >= k2max) return std::sqrt(k2max);
  // g(x) = x - omega(k^2/x) is increasing on [max(tau0^2, k^2), kappa0^2]
  auto g = [&](double x) { return x - omega_fn(m, k * k / x); };
  double lo = std::max(t2, k * k), hi = k2max;
  double x = std::clamp(t2 + m.c.tau1_sq * k * k / t2, lo, hi);
  for (int it = 0; it < 200; ++it) {
    const double y = k * k / x;
    const double gx = x - omega_fn(m, y);
    if (gx == 0.0) return std::sqrt(x);
    if (gx < 0.0) lo = x;
    else hi = x;
    const double dg = 1.0 + omega_fn(m, y, 1) * y / x;
    double xn = x - gx / dg;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    const double dx = std::abs(xn - x);
    x = xn;
    if (dx <= 2e-16 * x || hi - lo <= 2e-16 * x) {
      // settle on whichever neighbour has the smaller residual
      const double r = std::abs(g(x));
      if (std::abs(g(lo)) < r) x = lo;
      if (std::abs(g(hi)) < std::min(r, std::abs(g(lo)))) x = hi;
      return std::sqrt(x);
    }
  }
  throw ConvergenceError("tau_star Newton iteration did not converge");
}

double default_delta(const Model& m) { return 0.1 * m.kappa0(); }

ContinuedRoot continue_root(const Model& m, double k) {
  if (!m.eq.analytic()) throw ValidationError("continuation is disabled for tabulated profiles");
  k = std::abs(k);
  const double k2 = k * k;
  if (k2 <= m.c.kappa0_sq) throw ValidationError("continue_root needs k > kappa0");
  // bracket the real part of the root just inside z = 1
  auto pv = [&](double x) { return cauchy(m, KernelKind::kappa, cplx(x, 0.0)).real() - k2; };
  double eps_lo = 0.0, eps_hi = 0.0;
  for (double eps = 1e-13; eps < 0.7; eps *= 1.5) {
    if (pv(1.0 - eps) >= 0.0) {
      eps_hi = eps;
      break;
    }
    eps_lo = eps;
  }
  if (eps_hi == 0.0) throw ConvergenceError("no continued root near z = 1 for this k");
  for (int it = 0; it < 200 && eps_hi - eps_lo > 1e-16 * eps_hi; ++it) {
    const double mid = 0.5 * (eps_lo + eps_hi);
    if (pv(1.0 - mid) >= 0.0) eps_hi = mid;
    else eps_lo = mid;
  }
  ContinuedRoot r;
  cplx z(1.0 - 0.5 * (eps_lo + eps_hi), 0.0);
  // complex Newton; relative accuracy of the tiny imaginary part matters
  for (int it = 0; it < 60; ++it) {
    const cplx f = phi_cont(m, z) - k2;
    const cplx df = phi_cont_prime(m, z);
    cplx dz = -f / df;
    cplx zn = z + dz;
    if (zn.imag() < 0.0) zn.imag(0.0);
    r.iterations = it + 1;
    const bool re_ok = std::abs(dz.real()) <= 1e-15 * std::abs(z);
    const bool im_ok = std::abs(zn.imag() - z.imag()) <= 1e-11 * std::abs(zn.imag()) ||
                       (zn.imag() == 0.0 && z.imag() == 0.0);
    z = zn;
    if (re_ok && im_ok && it > 0) break;
    if (it == 59) {
      if (std::abs(phi_cont(m, z) - k2) > 1e-12 * k2)
        throw ConvergenceError("continued root Newton iteration did not converge");
    }
  }
  r.z = z;
  r.lambda = kI * k * z;
  return r;
}

cplx electric_root(const Model& m, double k) {
  k = std::abs(k);
  if (k * k <= m.c.kappa0_sq) return cplx(0.0, tau_star(m, k));
  return continue_root(m, k).lambda;
}

double nu_star(const Model& m, double k) {
  k = std::abs(k);
  const double k2 = k * k;
  double x = k2 + m.c.tau0_sq;
  for (int it = 0; it < 200; ++it) {
    const double y = k2 / x;
    const double P = -x + k2 + psi_fn(m, y);
    const double dP = -1.0 - psi_fn(m, y, 1) * y / x;
    const double dx = -P / dP;
    x += dx;
    if (std::abs(dx) <= 2e-16 * x) return std::sqrt(x);
  }
  throw ConvergenceError("nu_star Newton iteration did not converge");
}

double nu_star_prime(const Model& m, double k) {
  const double nu = nu_star(m, k), x = nu * nu, y = k * k / x;
  const double p1 = psi_fn(m, y, 1);
  const double dx = 2.0 * k * (1.0 + p1 / x) / (1.0 + y * p1 / x);
  return dx / (2.0 * nu);
}

cplx residue_a(const Model& m, double k) {
  k = std::abs(k);
  if (k * k <= m.c.kappa0_sq) {
    const double t = tau_star(m, k);
    const double y = k * k / (t * t);
    const double dOmega = omega_fn(m, y) + y * omega_fn(m, y, 1);
    return kI * (t * t * t) / (2.0 * dOmega);
  }
  const ContinuedRoot r = continue_root(m, k);
  return -kI * (k * k * k) / phi_cont_prime(m, r.z);
}

cplx residue_a_numeric(const Model& m, double k) {
  k = std::abs(k);
  const double t = tau_star(m, k);
  const double h = std::min(2e-4 * t, 0.1 * (t - k));
  auto d = [&](double tau) { return D_axis(m, tau, k); };
  const cplx dD = (8.0 * (d(t + h) - d(t - h)) - (d(t + 2 * h) - d(t - 2 * h))) / (12.0 * h);
  // d/dlambda = -i d/dtau
  return 1.0 / (-kI * dD);
}

cplx residue_b(const Model& m, double k) {
  const double nu = nu_star(m, k);
  const double y = k * k / (nu * nu);
  return -kI / (2.0 * nu + 2.0 * k * k * psi_fn(m, y, 1) / (nu * nu * nu));
}

cplx dlaplace_N(const Model& m, double k) {
  const double nu = nu_star(m, k);
  const auto& t = m.table;
  double s = 0.0;
  for (int i = 0; i < t.n; ++i) {
    const double u2 = t.u[i] * t.u[i];
    const double den = k * k * u2 - nu * nu;
    s += t.w[i] * u2 * t.q[i] / (den * den);
  }
  return -k * k * kI * nu * s;
}

cplx dlaplace_N_fd(const Model& m, double k) {
  const double nu = nu_star(m, k);
  const double h = 1e-3 * std::min(nu, nu - std::abs(k));
  auto L = [&](double tau) { return laplace_N(m, k, cplx(0.0, tau)); };
  const cplx d = (8.0 * (L(nu + h) - L(nu - h)) - (L(nu + 2 * h) - L(nu - 2 * h))) / (12.0 * h);
  return -kI * d;
}

cplx residue_b_direct(const Model& m, double k) {
  const double nu = nu_star(m, k);
  return 1.0 / (2.0 * kI * nu + dlaplace_N(m, k));
}

int winding_number(const std::function<cplx(cplx)>& f, const Rect& r) {
  const cplx corners[5] = {{r.re0, r.im0}, {r.re1, r.im0}, {r.re1, r.im1}, {r.re0, r.im1}, {r.re0, r.im0}};
  auto eval = [&](cplx z) {
    const cplx v = f(z);
    if (std::abs(v) == 0.0 || !std::isfinite(std::abs(v)))
      throw ConvergenceError("dispersion function vanishes on the contour");
    return v;
  };
  // bisect until the argument moves by less than 0.4 rad per step
  std::function<double(cplx, cplx, cplx, cplx, int)> seg = [&](cplx z0, cplx f0, cplx z1, cplx f1,
                                                               int depth) -> double {
    const double d = std::arg(f1 / f0);
    if (std::abs(d) > 0.4) {
      if (depth > 50) throw ConvergenceError("winding number: contour passes through a zero");
      const cplx zm = 0.5 * (z0 + z1), fm = eval(zm);
      return seg(z0, f0, zm, fm, depth + 1) + seg(zm, fm, z1, f1, depth + 1);
    }
    return d;
  };
  double total = 0.0;
  for (int side = 0; side < 4; ++side) {
    const cplx a = corners[side], b = corners[side + 1];
    const int n0 = 64;
    cplx z0 = a, f0 = eval(a);
    for (int j = 1; j <= n0; ++j) {
      const cplx z1 = a + (b - a) * (double(j) / n0), f1 = eval(z1);
      total += seg(z0, f0, z1, f1, 0);
      z0 = z1;
      f0 = f1;
    }
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

DispersionRow dispersion_row(const Model& m, double k, double delta) {
  k = std::abs(k);
  DispersionRow row;
  row.k = k;
  row.tau_star = (k * k <= m.c.kappa0_sq) ? tau_star(m, k) : kNaN;
  row.nu_star = nu_star(m, k);
  row.b = residue_b(m, k);
  row.lambda = row.a = cplx(kNaN, kNaN);
  const bool on_axis = k * k <= m.c.kappa0_sq;
  if (!on_axis && (!m.eq.analytic() || k > m.kappa0() + delta * (1.0 + 1e-12))) return row;
  try {
    row.lambda = electric_root(m, k);
    row.a = residue_a(m, k);
  } catch (const ConvergenceError&) {
    row.continuation_failed = true;
    row.lambda = row.a = cplx(kNaN, kNaN);
  }
  return row;
}

}  // namespace vml
