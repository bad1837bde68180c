#include "vml/solver.hpp"

#include "vml/errors.hpp"
#include "vml/parallel.hpp"

#include <numbers>

namespace vml {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

// int_{-1}^{1} e^{-i omega u} f(u) du for a smooth real f, panel Filon
std::vector<ChebPanel> source_panels(const std::function<double(double)>& f) {
  auto amp = [&](double u) { return cplx(f(u), 0.0); };
  std::vector<double> br(17);
  for (int i = 0; i <= 16; ++i) br[i] = -std::cos(kPi * i / 16);
  br.front() = -1.0;
  br.back() = 1.0;
  return build_panels(amp, br, 1e-16, 4000);
}

cplx source_at(const std::function<double(double)>& f, double k, double t,
               const std::vector<ChebPanel>* panels) {
  const double w = k * t;
  if (std::abs(w) <= 50.0) {
    const GaussRule& g = gauss_legendre(256);
    cplx acc = 0.0;
    for (int i = 0; i < g.x.size(); ++i) acc += g.w[i] * f(g.x[i]) * std::exp(cplx(0.0, -w * g.x[i]));
    return acc;
  }
  if (panels) return panels_fourier(*panels, -w);
  return panels_fourier(source_panels(f), -w);
}

std::function<double(double)> weighted(const std::function<double(double)>& f) {
  return [f](double u) { return u * f(u); };
}

// envelope over a trailing window, flagged when it climbs 10x above its running minimum
bool detect_recurrence(const Eigen::VectorXcd& v, double dt, double window) {
  const int n = static_cast<int>(v.size());
  const int w = std::max(1, static_cast<int>(window / dt));
  double run_min = std::numeric_limits<double>::infinity();
  for (int i = w; i < n; ++i) {
    double env = 0.0;
    for (int j = i - w; j <= i; ++j) env = std::max(env, std::abs(v[j]));
    if (env > 10.0 * run_min) return true;
    run_min = std::min(run_min, env);
  }
  return false;
}
}  // namespace

Profile parse_profile(const std::string& name) {
  if (name == "kappa") return Profile::kappa;
  if (name == "q") return Profile::q;
  if (name == "gaussian") return Profile::gaussian;
  if (name == "zero") return Profile::zero;
  throw ValidationError("unknown profile '" + name + "' (kappa, q, gaussian, zero)");
}

std::function<double(double)> profile_fn(const Model& m, Profile p) {
  const Equilibrium eq = m.eq;
  switch (p) {
    case Profile::kappa: return [eq](double u) { return kappa(eq, u); };
    case Profile::q: return [eq](double u) { return q_kernel(eq, u); };
    case Profile::gaussian: return [](double u) { return std::exp(-u * u / (2.0 * 0.09)); };
    case Profile::zero: break;
  }
  return [](double) { return 0.0; };
}

ModeInitialData make_mode_data(const Model& m, double k, Profile elec, Profile mag, cplx A0, cplx A1) {
  if (!(k > 0.0)) throw ValidationError("mode data needs k > 0");
  ModeInitialData d;
  d.k = k;
  d.h0 = profile_fn(m, elec);
  d.h0_mag = profile_fn(m, mag);
  d.A0 = A0;
  d.A1 = A1;
  return d;
}

cplx source_S(const ModeInitialData& d, double t) { return source_at(d.h0, d.k, t, nullptr); }

cplx source_Sj(const ModeInitialData& d, double t) { return source_at(weighted(d.h0_mag), d.k, t, nullptr); }

Eigen::VectorXcd source_trace(const std::function<double(double)>& h, double k, const TimeGrid& g,
                              bool u_weighted) {
  const auto f = u_weighted ? weighted(h) : h;
  const GaussRule& gl = gauss_legendre(256);
  Eigen::VectorXd fv(gl.x.size());
  for (int i = 0; i < gl.x.size(); ++i) fv[i] = gl.w[i] * f(gl.x[i]);
  std::vector<ChebPanel> panels;
  if (k * g.t_max() > 50.0) panels = source_panels(f);
  Eigen::VectorXcd out(g.n_steps + 1);
  parallel_for(g.n_steps + 1, [&](int n) {
    const double w = k * g.t(n);
    if (w <= 50.0) {
      cplx acc = 0.0;
      for (int i = 0; i < gl.x.size(); ++i) acc += fv[i] * std::exp(cplx(0.0, -w * gl.x[i]));
      out[n] = acc;
    } else {
      out[n] = panels_fourier(panels, -w);
    }
  });
  return out;
}

Eigen::VectorXcd convolve(const Eigen::VectorXd& a, const Eigen::VectorXcd& b, double dt) {
  const int n = static_cast<int>(std::min(a.size(), b.size()));
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n);
  parallel_for(n - 1, [&](int i0) {
    const int i = i0 + 1;
    cplx acc = 0.5 * (a[i] * b[0] + a[0] * b[i]);
    for (int j = 1; j < i; ++j) acc += a[i - j] * b[j];
    c[i] = dt * acc;
  });
  return c;
}

ModeSolution solve_phi_mode(const Model& m, const ModeInitialData& d, const TimeGrid& g) {
  ModeSolution sol;
  sol.k = d.k;
  sol.grid = g;
  sol.S = source_trace(d.h0, d.k, g, false);
  const GreenTrace R = electric_green(m, d.k, g);
  sol.rho = sol.S + convolve(R.values, sol.S, g.dt);
  const Eigen::VectorXd K = memory_samples(m, Channel::electric, d.k, g);
  const int n = g.n_steps;
  Eigen::VectorXcd r(n + 1);
  r[0] = sol.S[0];
  for (int i = 1; i <= n; ++i) {
    cplx acc = 0.5 * K[i] * r[0];
    for (int j = 1; j < i; ++j) acc += K[i - j] * r[j];
    r[i] = sol.S[i] - g.dt * acc;
  }
  sol.rho_direct = std::move(r);
  sol.route_gap = (sol.rho - sol.rho_direct).cwiseAbs().maxCoeff();
  if (sol.route_gap > 1e-5)
    throw ConvergenceError("resolvent and direct Volterra routes differ by " + std::to_string(sol.route_gap));
  return sol;
}

void solve_A_mode(const Model& m, const ModeInitialData& d, ModeSolution& sol, bool with_memory) {
  const TimeGrid& g = sol.grid;
  sol.Sj = source_trace(d.h0_mag, d.k, g, true);
  const GreenTrace H = magnetic_green(m, d.k, g, with_memory);
  const Eigen::VectorXd N = with_memory ? memory_samples(m, Channel::magnetic, d.k, g)
                                        : Eigen::VectorXd::Zero(g.n_steps + 1);
  const double w2 = d.k * d.k + m.c.tau0_sq;
  const Eigen::VectorXcd NH = convolve(N, H.values.cast<cplx>(), g.dt);
  const Eigen::VectorXcd H2 = -w2 * H.values.cast<cplx>() - NH;
  sol.A = d.A0 * H.derivative.cast<cplx>() + d.A1 * H.values.cast<cplx>() + convolve(H.values, sol.Sj, g.dt);
  sol.dA = d.A0 * H2 + d.A1 * H.derivative.cast<cplx>() + convolve(H.derivative, sol.Sj, g.dt);
}

ModeSolution solve_mode(const Model& m, const ModeInitialData& d, const TimeGrid& g) {
  ModeSolution sol = solve_phi_mode(m, d, g);
  solve_A_mode(m, d, sol);
  return sol;
}

double recurrence_time(double k, int n_u) {
  const GaussRule& g = gauss_legendre(n_u);
  const int c = n_u / 2;
  const double du = std::abs(g.x[c] - g.x[c - 1]);
  return 2.0 * kPi / (k * du);
}

OracleResult kinetic_oracle_elec(const Model& m, const ModeInitialData& d, const TimeGrid& g, int n_u,
                                 bool coupling) {
  const double k = d.k, dt = g.dt;
  const GaussRule& gl = gauss_legendre(n_u);
  Eigen::VectorXcd h(n_u), E(n_u), cpl(n_u);
  for (int j = 0; j < n_u; ++j) {
    const double u = gl.x[j];
    h[j] = d.h0(u);
    E[j] = std::exp(cplx(0.0, -k * u * dt));
    // g_j = i k u kappa phi, phi = rho / k^2
    cpl[j] = coupling ? kI * u * kappa(m.eq, u) / k : 0.0;
  }
  const cplx self = 0.5 * dt * (gl.w.cast<cplx>().array() * cpl.array()).sum();
  OracleResult out;
  out.values.resize(g.n_steps + 1);
  cplx rho = (gl.w.cast<cplx>().array() * h.array()).sum();
  out.values[0] = rho;
  for (int n = 0; n < g.n_steps; ++n) {
    const Eigen::VectorXcd pre = (E.array() * (h.array() + 0.5 * dt * cpl.array() * rho)).matrix();
    const cplx x = (gl.w.cast<cplx>().array() * pre.array()).sum();
    rho = x / (1.0 - self);
    h = pre + 0.5 * dt * cpl * rho;
    out.values[n + 1] = rho;
  }
  out.t_recurrence = recurrence_time(k, n_u);
  out.recurrence = detect_recurrence(out.values, dt, 2.0 * kPi / k);
  return out;
}

OracleResult kinetic_oracle_mag(const Model& m, const ModeInitialData& d, const TimeGrid& g, int n_u,
                                bool coupling) {
  const double k = d.k, dt = g.dt;
  const GaussRule& gl = gauss_legendre(n_u);
  Eigen::VectorXcd h(n_u), E(n_u), c(n_u), wu(n_u);
  for (int j = 0; j < n_u; ++j) {
    const double u = gl.x[j];
    h[j] = d.h0_mag(u);
    E[j] = std::exp(cplx(0.0, -k * u * dt));
    c[j] = coupling ? -0.5 * kI * k * q_kernel(m.eq, u) : 0.0;
    wu[j] = gl.w[j] * u;
  }
  const cplx gamma = 0.5 * dt * (wu.array() * c.array()).sum();
  const double w2 = k * k + m.c.tau0_sq, w = std::sqrt(w2);
  const double cs = std::cos(w * dt), sn = std::sin(w * dt);
  const double beta = (dt / w2 - sn / (w2 * w)) / dt;  // dA_{n+1} / dj_{n+1}
  auto step = [&](cplx A, cplx V, cplx ja, cplx jb, cplx& An, cplx& Vn) {
    const cplx b = (jb - ja) / dt;
    const cplx C = A - ja / w2, D = (V - b / w2) / w;
    An = (ja + b * dt) / w2 + C * cs + D * sn;
    Vn = b / w2 - C * w * sn + D * w * cs;
  };
  OracleResult out;
  out.values.resize(g.n_steps + 1);
  out.derivative.resize(g.n_steps + 1);
  cplx A = d.A0, V = d.A1;
  cplx j = (wu.array() * h.array()).sum();
  out.values[0] = A;
  out.derivative[0] = V;
  for (int n = 0; n < g.n_steps; ++n) {
    const Eigen::VectorXcd pre = (E.array() * (h.array() + 0.5 * dt * c.array() * A)).matrix();
    const cplx Y = (wu.array() * pre.array()).sum();
    cplx An, Vn;
    step(A, V, j, Y, An, Vn);
    An = An / (1.0 - beta * gamma);
    const cplx jn = Y + gamma * An;
    step(A, V, j, jn, An, Vn);
    h = pre + 0.5 * dt * c * An;
    A = An;
    V = Vn;
    j = jn;
    out.values[n + 1] = A;
    out.derivative[n + 1] = V;
  }
  out.t_recurrence = recurrence_time(k, n_u);
  out.recurrence = detect_recurrence(out.values, dt, 2.0 * kPi / k);
  return out;
}

double free_transport_density(const Equilibrium& chi, double sigma, double t, double r) {
  if (!(sigma > 0.0) || t < 0.0 || r < 0.0) throw ValidationError("free transport needs sigma > 0, t, r >= 0");
  const double s2 = sigma * sigma;
  const double norm = 4.0 * kPi / std::pow(2.0 * kPi * s2, 1.5);
  // spherical mean of the Gaussian at distance p from x
  auto mean = [&](double p) {
    const double a = r * p / s2;
    if (a < 1e-8) return std::exp(-(r * r + p * p) / (2.0 * s2));
    return std::exp(-(r - p) * (r - p) / (2.0 * s2)) * (-std::expm1(-2.0 * a)) / (2.0 * a);
  };
  auto f = [&](double eta) {
    if (eta > 200.0) return 0.0;  // sinh^2 cosh phi(cosh) is far below double range here
    const double sh = std::sinh(eta), ch = std::cosh(eta);
    return sh * sh * ch * chi.phi(ch) * mean(t * std::tanh(eta));
  };
  // the spherical mean peaks where t tanh(eta) = r; split there
  std::vector<double> br{0.0};
  if (t > 0.0 && r < t) br.push_back(std::atanh(r / t));
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) total += integrate<double>(f, br[i], br[i + 1], 0.0, 1e-12).value;
  total += integrate_to_inf<double>(f, br.back(), 0.0, 1e-12).value;
  return norm * total;
}

double free_transport_mass(const Equilibrium& chi, double sigma, double t) {
  auto f = [&](double r) { return 4.0 * kPi * r * r * free_transport_density(chi, sigma, t, r); };
  const double rmax = t + 14.0 * sigma;
  std::vector<double> br{0.0};
  const int pieces = 8 + static_cast<int>(rmax / sigma);
  for (int i = 1; i <= pieces; ++i) br.push_back(rmax * i / pieces);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) total += integrate<double>(f, br[i], br[i + 1], 0.0, 1e-10).value;
  return total;
}

double free_transport_sup(const Equilibrium& chi, double sigma, double t) {
  const double rmax = t + 5.0 * sigma;
  const int n = 200;
  double best = -1.0, rb = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double r = rmax * i / n;
    const double v = free_transport_density(chi, sigma, t, r);
    if (v > best) {
      best = v;
      rb = r;
    }
  }
  double a = std::max(0.0, rb - rmax / n), b = std::min(rmax, rb + rmax / n);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 60 && b - a > 1e-10 * (1.0 + rb); ++it) {
    const double c = b - gr * (b - a), dd = a + gr * (b - a);
    if (free_transport_density(chi, sigma, t, c) > free_transport_density(chi, sigma, t, dd)) b = dd;
    else a = c;
  }
  return std::max(best, free_transport_density(chi, sigma, t, 0.5 * (a + b)));
}

}  // namespace vml
