#include "vml/green.hpp"

#include "vml/errors.hpp"
#include "vml/parallel.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <numbers>

namespace vml {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

double omega0_sq(const Model& m, double k) { return k * k + m.c.tau0_sq; }

struct Poles {
  std::vector<cplx> roots, residues;
};

Poles poles_for(const Model& m, Channel ch, double k) {
  Poles p;
  k = std::abs(k);
  if (ch == Channel::magnetic) {
    const double nu = nu_star(m, k);
    const cplx b = residue_b(m, k);
    p.roots = {cplx(0.0, nu), cplx(0.0, -nu)};
    p.residues = {b, std::conj(b)};
    return p;
  }
  const double k2 = k * k;
  const bool on_axis = k2 <= m.c.kappa0_sq;
  const bool continued = !on_axis && m.eq.analytic() && k < m.kappa0() + default_delta(m);
  if (!on_axis && !continued) return p;
  const cplx l = electric_root(m, k);
  const cplx a = residue_a(m, k);
  p.roots = {l, std::conj(l)};
  p.residues = {a, std::conj(a)};
  return p;
}

// geometric breakpoints from lo to hi plus the listed features
std::vector<double> breakpoints(double lo, double hi, std::initializer_list<double> features) {
  std::vector<double> br{0.0};
  for (double b = lo; b < hi; b *= 2.0) br.push_back(b);
  for (double f : features)
    if (f > 0.0 && f < hi) br.push_back(f);
  br.push_back(hi);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  return br;
}

std::vector<double> fourier_real(const std::vector<ChebPanel>& ps, const std::vector<double>& t) {
  std::vector<double> out(t.size());
  parallel_for(static_cast<int>(t.size()), [&](int i) { out[i] = panels_fourier(ps, t[i]).real() / kPi; });
  return out;
}
}  // namespace

TimeGrid make_grid(double dt, double t_max) {
  if (!(dt > 0.0) || !(t_max > 0.0)) throw ValidationError("time grid needs dt > 0 and t_max > 0");
  TimeGrid g;
  g.dt = dt;
  g.n_steps = static_cast<int>(std::ceil(t_max / dt - 1e-9));
  return g;
}

double max_dt(const Model& m, double k) {
  return std::min(0.05 / std::max(1.0, std::abs(k)), 0.05 / nu_star(m, k));
}

void check_resolution(const Model& m, double k, const TimeGrid& g) {
  const double lim = max_dt(m, k);
  if (g.dt > lim * (1.0 + 1e-12))
    throw ValidationError("dt = " + std::to_string(g.dt) + " violates the resolution rule dt <= " +
                          std::to_string(lim) + " for k = " + std::to_string(k));
}

Eigen::VectorXd memory_samples(const Model& m, Channel ch, double k, const TimeGrid& g) {
  Eigen::VectorXd v(g.n_steps + 1);
  parallel_for(g.n_steps + 1, [&](int i) {
    v[i] = ch == Channel::electric ? memory_K(m, k, g.t(i)) : memory_N(m, k, g.t(i));
  });
  v[0] = 0.0;
  return v;
}

GreenTrace electric_green(const Model& m, double k, const TimeGrid& g) {
  if (!(k > 0.0)) throw ValidationError("electric Green function needs k > 0");
  check_resolution(m, k, g);
  GreenTrace tr;
  tr.channel = Channel::electric;
  tr.k = k;
  tr.grid = g;
  const Eigen::VectorXd K = memory_samples(m, Channel::electric, k, g);
  const int n = g.n_steps;
  Eigen::VectorXd R = Eigen::VectorXd::Zero(n + 1);
  for (int i = 1; i <= n; ++i) {
    double acc = 0.0;
    for (int j = 1; j < i; ++j) acc += K[i - j] * R[j];
    R[i] = -K[i] - g.dt * acc;
  }
  tr.values = std::move(R);
  return tr;
}

GreenTrace magnetic_green(const Model& m, double k, const TimeGrid& g, bool with_memory) {
  if (!(k >= 0.0)) throw ValidationError("magnetic Green function needs k >= 0");
  check_resolution(m, k, g);
  GreenTrace tr;
  tr.channel = Channel::magnetic;
  tr.k = k;
  tr.grid = g;
  const int n = g.n_steps;
  const double dt = g.dt;
  Eigen::VectorXd N = with_memory ? memory_samples(m, Channel::magnetic, k, g) : Eigen::VectorXd::Zero(n + 1);
  Eigen::VectorXd H = Eigen::VectorXd::Zero(n + 1), V = Eigen::VectorXd::Zero(n + 1);
  V[0] = 1.0;
  const double w2 = omega0_sq(m, k), w = std::sqrt(w2);
  const double c = std::cos(w * dt), s = std::sin(w * dt);
  double mem = 0.0;  // (N*H)(t_i)
  for (int i = 0; i < n; ++i) {
    double next = 0.0;
    for (int j = 1; j <= i; ++j) next += N[i + 1 - j] * H[j];
    next *= dt;
    const double a = mem, b = (next - mem) / dt;
    const double C = H[i] + a / w2, D = (V[i] + b / w2) / w;
    H[i + 1] = -(a + b * dt) / w2 + C * c + D * s;
    V[i + 1] = -b / w2 - C * w * s + D * w * c;
    mem = next;
  }
  tr.values = std::move(H);
  tr.derivative = std::move(V);
  return tr;
}

void decompose(const Model& m, GreenTrace& tr) {
  const Poles p = poles_for(m, tr.channel, tr.k);
  tr.roots = p.roots;
  tr.residues = p.residues;
  const int n = static_cast<int>(tr.values.size());
  tr.osc = Eigen::VectorXd::Zero(n);
  for (std::size_t r = 0; r < p.roots.size(); ++r)
    for (int i = 0; i < n; ++i) tr.osc[i] += (p.residues[r] * std::exp(p.roots[r] * tr.grid.t(i))).real();
  tr.regular = tr.values - tr.osc;
}

Eigen::VectorXd electric_residual(const Eigen::VectorXd& R, const Eigen::VectorXd& K, double dt) {
  const int n = static_cast<int>(R.size()) - 1;
  Eigen::VectorXd res = Eigen::VectorXd::Zero(n + 1);
  parallel_for(n, [&](int i0) {
    const int i = i0 + 1;
    const std::vector<double> w = gregory_weights(i);
    double acc = 0.0;
    for (int j = 0; j <= i; ++j) acc += w[j] * K[i - j] * R[j];
    res[i] = R[i] + K[i] + dt * acc;
  });
  return res;
}

Eigen::VectorXd magnetic_residual(const Eigen::VectorXd& H, const Eigen::VectorXd& N, double omega0_sq,
                                  double dt) {
  const int n = static_cast<int>(H.size()) - 1;
  Eigen::VectorXd res = Eigen::VectorXd::Zero(n + 1);
  if (n < 4) return res;
  parallel_for(n - 3, [&](int i0) {
    const int i = i0 + 2;
    const double d2 = (-H[i - 2] + 16.0 * H[i - 1] - 30.0 * H[i] + 16.0 * H[i + 1] - H[i + 2]) / (12.0 * dt * dt);
    const std::vector<double> w = gregory_weights(i);
    double acc = 0.0;
    for (int j = 0; j <= i; ++j) acc += w[j] * N[i - j] * H[j];
    res[i] = d2 + omega0_sq * H[i] + dt * acc;
  });
  return res;
}

std::vector<double> regular_part_spectral(const Model& m, Channel ch, double k, const std::vector<double>& t,
                                          double tol) {
  k = std::abs(k);
  if (!(k > 0.0)) throw ValidationError("regular part needs k > 0");
  const Poles p = poles_for(m, ch, k);
  double axis_root = -1.0;  // a pole sitting on the axis, removed by subtraction
  for (const cplx& r : p.roots)
    if (r.real() == 0.0 && r.imag() > 0.0) axis_root = r.imag();
  auto raw = [&](double tau) -> cplx {
    cplx f = ch == Channel::electric ? 1.0 / D_axis(m, tau, k) - 1.0 : 1.0 / M_axis(m, tau, k);
    for (std::size_t r = 0; r < p.roots.size(); ++r) f -= p.residues[r] / (kI * tau - p.roots[r]);
    return f;
  };
  auto amp = [&](double tau) -> cplx {
    if (axis_root > 0.0 && std::abs(tau - axis_root) < 1e-7 * axis_root) {
      const double h = 1e-5 * axis_root;
      return 0.5 * (raw(axis_root - h) + raw(axis_root + h));
    }
    return raw(tau);
  };
  const double scale = std::max({1.0, nu_star(m, k), m.tau0()});
  const double T = 1e4 * scale;
  const double lo = std::min(1e-2 * k * k * k, 1e-3);
  const auto br = breakpoints(lo, T, {k, axis_root});
  const auto ps = build_panels(amp, br, tol, 200000);
  return fourier_real(ps, t);
}

std::vector<double> bromwich_invert(const Model& m, Channel ch, double k, const std::vector<double>& t,
                                    double gamma0, double T) {
  k = std::abs(k);
  if (!(gamma0 >= 0.05 && gamma0 <= 1.0)) throw ValidationError("bromwich: gamma0 must lie in [0.05, 1]");
  const double nu = nu_star(m, k);
  const double Tmin = 50.0 * std::max(1.0, nu);
  if (T == 0.0) T = Tmin;
  if (T < Tmin) throw ValidationError("bromwich: truncation below 50 max(1, nu_*)");
  const double t2 = m.c.tau0_sq, w2 = omega0_sq(m, k);
  auto F = [&](double tau) -> cplx {
    const cplx l(gamma0, tau);
    if (ch == Channel::electric) return 1.0 / D_fn(m, l, k) - 1.0 + t2 / (l * l + t2);
    return 1.0 / M_fn(m, l, k) - 1.0 / (l * l + w2);
  };
  const double tstar = k * k <= m.c.kappa0_sq ? tau_star(m, k) : 0.0;
  const auto br = breakpoints(0.05, T, {k, nu, tstar});
  const auto ps = build_panels(F, br, 1e-13, 200000);
  // the remainder decays like tau^-4 (G) or tau^-6 (H); estimate the dropped tail
  const double p = ch == Channel::electric ? 3.0 : 5.0;
  const double tail = std::abs(F(T)) * T / p / kPi;
  std::vector<double> out = fourier_real(ps, t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double g = std::exp(gamma0 * t[i]);
    if (tail * g > 1e-5) throw ConvergenceError("bromwich: truncation error estimate above 1e-5");
    out[i] *= g;
    if (ch == Channel::electric) out[i] -= std::sqrt(t2) * std::sin(std::sqrt(t2) * t[i]);
    else out[i] += std::sin(std::sqrt(w2) * t[i]) / std::sqrt(w2);
  }
  return out;
}

DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& f, double k, Scaling s, double t1,
                   double t2, double noise_floor) {
  if (t.size() != f.size()) throw ValidationError("fit_decay: t and f differ in length");
  const double kp = s == Scaling::kt ? k : k * k * k;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= t1 && t[i] <= t2) idx.push_back(i);
  if (idx.size() < 3) throw ValidationError("fit_decay: window holds fewer than three samples");
  DecayFit fit;
  std::vector<std::size_t> pick;
  for (std::size_t q = 1; q + 1 < idx.size(); ++q) {
    const double a = std::abs(f[idx[q - 1]]), b = std::abs(f[idx[q]]), c = std::abs(f[idx[q + 1]]);
    if (b >= a && b >= c) pick.push_back(idx[q]);
  }
  if (pick.size() < 4) pick = idx;
  std::vector<double> x, y;
  for (std::size_t i : pick) {
    const double v = std::abs(f[i]);
    if (!(v > noise_floor)) {
      fit.partial = true;
      continue;
    }
    x.push_back(std::log1p(kp * t[i]));
    y.push_back(std::log(v));
  }
  if (x.size() < 2) throw ConvergenceError("fit_decay: signal below the noise floor across the window");
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    A(i, 0) = x[i];
    A(i, 1) = 1.0;
    b[i] = y[i];
  }
  const Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
  const double mean = b.mean();
  const double ss_tot = (b.array() - mean).square().sum();
  const double ss_res = (A * c - b).squaredNorm();
  fit.slope = c[0];
  fit.constant = std::exp(c[1]);
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.points = n;
  return fit;
}

Collapse magnetic_collapse(const Model& m, const std::vector<double>& ks, double s1, double s2, int ns) {
  Collapse c;
  c.s.resize(ns);
  for (int i = 0; i < ns; ++i) c.s[i] = s1 + (s2 - s1) * i / (ns - 1);
  for (double k : ks) {
    std::vector<double> t(ns);
    for (int i = 0; i < ns; ++i) t[i] = c.s[i] / (k * k * k);
    const auto h = regular_part_spectral(m, Channel::magnetic, k, t);
    std::vector<double> curve(ns);
    for (int i = 0; i < ns; ++i) curve[i] = std::log(std::abs(h[i]) / k);
    c.curves.push_back(std::move(curve));
  }
  for (std::size_t a = 0; a < c.curves.size(); ++a)
    for (std::size_t b = a + 1; b < c.curves.size(); ++b)
      for (int i = 0; i < ns; ++i)
        c.sup_distance = std::max(c.sup_distance, std::abs(c.curves[a][i] - c.curves[b][i]));
  return c;
}

double spectral_peak(const Eigen::VectorXcd& x, double dt, double* bin) {
  const int n = static_cast<int>(x.size());
  if (n < 4) throw ValidationError("spectral_peak needs at least four samples");
  const cplx mean = x.mean();
  std::vector<cplx> in(n), out;
  for (int i = 0; i < n; ++i) in[i] = x[i] - mean;
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  int best = 1;
  for (int j = 1; j < n; ++j)
    if (std::abs(out[j]) > std::abs(out[best])) best = j;
  const double w = 2.0 * kPi / (n * dt);
  if (bin) *bin = w;
  return w * (best <= n / 2 ? best : n - best);
}

}  // namespace vml
