#include "vml/acceptance.hpp"

#include "vml/errors.hpp"
#include "vml/solver.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

namespace vml {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

std::string sci(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", x);
  return b;
}

struct Context {
  EquilibriumConfig primary_cfg;
  std::map<std::string, std::unique_ptr<Model>> cache;

  const Model& get(const std::string& key, const EquilibriumConfig& cfg) {
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, std::make_unique<Model>(make_model(Equilibrium::from_config(cfg)))).first;
    return *it->second;
  }
  const Model& builtin(EquilibriumKind kind, double n0 = 1.0) {
    EquilibriumConfig c;
    c.kind = kind;
    c.n0 = n0;
    c.M = 4.0;
    return get((kind == EquilibriumKind::maxwellian ? "maxwellian/" : "powerlaw/") + sci(n0), c);
  }
  const Model& primary() { return get("primary", primary_cfg); }
};

const char* kind_name(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::maxwellian: return "maxwellian";
    case EquilibriumKind::power_law: return "powerlaw";
    default: return "tabulated";
  }
}

const EquilibriumKind kBuiltins[2] = {EquilibriumKind::maxwellian, EquilibriumKind::power_law};

// closed forms of the two kernels for the built-in profiles
double kappa_closed(EquilibriumKind kind, double n0, double M, double u) {
  const double om = (1.0 - u) * (1.0 + u);
  if (kind == EquilibriumKind::maxwellian) {
    const double c = n0 * std::exp(0.5) / std::pow(2.0 * kPi, 1.5), a2 = 1.0 / om;
    return -2.0 * kPi * c * (a2 + 2.0) * std::exp(-0.5 * a2);
  }
  const double c0 = n0 / (kPi * std::sqrt(kPi) * std::tgamma(M - 1.5) / std::tgamma(M));
  return -2.0 * kPi * M * c0 * std::pow(om, M - 1.0) / (M - 1.0);
}

double q_closed(EquilibriumKind kind, double n0, double M, double u) {
  const double om = (1.0 - u) * (1.0 + u);
  if (kind == EquilibriumKind::maxwellian) {
    const double c = n0 * std::exp(0.5) / std::pow(2.0 * kPi, 1.5);
    return -4.0 * kPi * om * c * std::exp(-0.5 / om);
  }
  const double c0 = n0 / (kPi * std::sqrt(kPi) * std::tgamma(M - 1.5) / std::tgamma(M));
  return -2.0 * kPi * c0 * std::pow(om, M) / (M - 1.0);
}

// slope of log y against log x by least squares
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double a = std::log(x[i]), b = std::log(y[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------

void c1(Context& ctx, CriterionResult& r) {
  double worst = 0.0;
  for (auto kind : kBuiltins)
    for (double n0 : {0.5, 1.0, 2.0}) {
      const Model& m = ctx.builtin(kind, n0);
      const double s = m.c.spread();
      worst = std::max(worst, s);
      r.data[std::string(kind_name(kind)) + "/n0=" + sci(n0)] = s;
    }
  r.pass = worst <= 1e-8;
  r.detail = "max relative spread " + sci(worst) + " (limit 1e-8)";
}

void c2(Context& ctx, CriterionResult& r) {
  double worst = 0.0;
  for (auto kind : kBuiltins) {
    const Model& m = ctx.builtin(kind);
    double wk = 0.0, wq = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double u = -0.999 + 1.998 * i / 400.0;
      const double kc = kappa_closed(kind, 1.0, 4.0, u), qc = q_closed(kind, 1.0, 4.0, u);
      wk = std::max(wk, std::abs(kappa(m.eq, u) - kc) / std::abs(kc));
      wq = std::max(wq, std::abs(q_kernel(m.eq, u) - qc) / std::abs(qc));
    }
    r.data[kind_name(kind)] = {{"kappa", wk}, {"q", wq}};
    worst = std::max({worst, wk, wq});
  }
  r.pass = worst <= 1e-8;
  r.detail = "max relative error " + sci(worst) + " on 401 points of [-0.999, 0.999] (limit 1e-8)";
}

void c3(Context& ctx, CriterionResult& r) {
  bool ok = true;
  std::ostringstream d;
  for (auto kind : kBuiltins) {
    const Model& m = ctx.builtin(kind);
    const double k0 = m.kappa0(), t0 = m.tau0();
    double res = 0.0, prev = 0.0;
    bool mono = true, bounds = true;
    for (int i = 1; i <= 64; ++i) {
      const double k = k0 * i / 64.0;
      const double ts = tau_star(m, k);
      res = std::max(res, std::abs(D_axis(m, ts, k)));
      if (ts <= prev) mono = false;
      prev = ts;
      if (i < 64 && !(t0 < ts && ts < k0 && k < ts && ts < std::sqrt(t0 * t0 + k * k))) bounds = false;
    }
    // the end values, and the solver just inside each end
    const double e0 = std::max(std::abs(tau_star(m, 0.0) - t0), std::abs(tau_star(m, 1e-6) - t0));
    const double e1 = std::max(std::abs(tau_star(m, k0) - k0), std::abs(tau_star(m, k0 * (1.0 - 1e-10)) - k0));
    std::vector<double> ks, rs;
    for (int i = 0; i < 9; ++i) {
      const double k = std::pow(10.0, -3.0 + 2.0 * i / 8.0);
      ks.push_back(k);
      rs.push_back(std::abs(tau_star(m, k) - t0 - m.c.tau1_sq * k * k / (2.0 * t0 * t0 * t0)));
    }
    const double slope = loglog_slope(ks, rs);
    const bool pass = res <= 1e-10 && e0 <= 1e-8 && e1 <= 1e-8 && mono && bounds && std::abs(slope - 4.0) <= 0.2;
    ok = ok && pass;
    r.data[kind_name(kind)] = {{"residual", res}, {"tau_star0_err", e0}, {"tau_star_kappa0_err", e1},
                               {"monotone", mono}, {"bounds", bounds}, {"small_k_slope", slope}};
    d << kind_name(kind) << ": |D| " << sci(res) << ", ends " << sci(std::max(e0, e1)) << ", slope "
      << sci(slope) << (mono && bounds ? "" : ", ORDER/BOUNDS VIOLATED") << "; ";
  }
  r.pass = ok;
  r.detail = d.str();
}

void c4(Context& ctx, CriterionResult& r) {
  bool ok = true;
  std::ostringstream d;
  for (auto kind : kBuiltins) {
    const Model& m = ctx.builtin(kind);
    const double k0 = m.kappa0(), delta = default_delta(m);
    // the grid starts where |Re lambda| is still representable in double precision
    double max_re = -1.0;
    for (int i = 0; i < 24; ++i) {
      const double s = 3e-3 * std::pow(delta / k0 / 3e-3, i / 23.0);
      max_re = std::max(max_re, electric_root(m, k0 * (1.0 + s)).real());
    }
    const double cont = std::max(std::abs(electric_root(m, k0 * (1.0 - 1e-8)) - kI * k0),
                                 std::abs(electric_root(m, k0 * (1.0 + 1e-8)) - kI * k0));
    bool pass = max_re < 0.0 && cont <= 1e-6;
    nlohmann::json j = {{"max_re_lambda", max_re}, {"continuity", cont}, {"delta", delta}};
    d << kind_name(kind) << ": max Re " << sci(max_re) << ", jump " << sci(cont);
    if (kind == EquilibriumKind::maxwellian) {
      std::vector<double> ss, re;
      for (int i = 0; i < 8; ++i) {
        const double s = 5e-3 * std::pow(6.0, i / 7.0);
        ss.push_back(s);
        re.push_back(-electric_root(m, k0 * (1.0 + s)).real());
      }
      const double slope = loglog_slope(ss, re);
      j["flatness_slope"] = slope;
      d << ", flatness slope " << sci(slope);
      pass = pass && slope >= 4.0;
    }
    d << "; ";
    r.data[kind_name(kind)] = j;
    ok = ok && pass;
  }
  r.pass = ok;
  r.detail = d.str();
}

void c5(Context& ctx, CriterionResult& r) {
  bool ok = true;
  std::ostringstream d;
  for (auto kind : kBuiltins) {
    const Model& m = ctx.builtin(kind);
    const double t2 = m.c.tau0_sq, q2 = m.c.q0_sq;
    double res = 0.0, env = 0.0;
    bool above_k = true;
    double c0 = 1e300, C0 = 0, d0 = 1e300, D0 = 0, e0 = 1e300;
    for (int i = 0; i <= 200; ++i) {
      const double k = 50.0 * i / 200.0;
      const double nu = nu_star(m, k), x = nu * nu;
      res = std::max(res, std::abs(-x + k * k + psi_fn(m, k * k / x)) / x);
      env = std::max({env, (k * k + t2 - x) / x, (x - k * k - q2) / x});
      if (k > 0.0 && !(nu > k)) above_k = false;
      const double s = std::sqrt(1.0 + k * k);
      c0 = std::min(c0, nu / s);
      C0 = std::max(C0, nu / s);
      if (k > 0.0) {
        const double p = nu_star_prime(m, k) * s / k;
        d0 = std::min(d0, p);
        D0 = std::max(D0, p);
      }
      const double h = 1e-3 * std::max(1.0, k);
      const double second = (nu_star_prime(m, k + h) - nu_star_prime(m, k - h)) / (2.0 * h);
      e0 = std::min(e0, second * s * s * s);
    }
    const double zero = std::abs(nu_star(m, 0.0) - m.tau0());
    const bool pass = res <= 1e-12 && env <= 1e-12 && above_k && c0 > 0 && std::isfinite(C0) && d0 > 0 &&
                      std::isfinite(D0) && e0 > 0 && zero <= 1e-10;
    ok = ok && pass;
    r.data[kind_name(kind)] = {{"residual", res}, {"envelope_excess", env}, {"nu_gt_k", above_k},
                               {"nu_over_jk", {c0, C0}}, {"slope_ratio", {d0, D0}}, {"curvature_min", e0},
                               {"nu0_err", zero}};
    d << kind_name(kind) << ": resid " << sci(res) << ", nu/<k> in [" << sci(c0) << "," << sci(C0)
      << "], nu'<k>/k in [" << sci(d0) << "," << sci(D0) << "], nu''<k>^3 >= " << sci(e0) << ", |nu(0)-tau0| "
      << sci(zero) << "; ";
  }
  r.pass = ok;
  r.detail = d.str();
}

std::vector<Rect> stability_rects() {
  std::mt19937 gen(20240917u);
  auto uni = [&](double a, double b) { return a + (b - a) * (gen() / 4294967296.0); };
  std::vector<Rect> out{{0.05, 2.0, -5.0, 5.0}};
  while (out.size() < 10) {
    const double re0 = uni(0.02, 1.0), im0 = uni(-12.0, 6.0);
    out.push_back({re0, re0 + uni(0.1, 3.0), im0, im0 + uni(0.5, 12.0)});
  }
  return out;
}

void c6(Context& ctx, CriterionResult& r) {
  int nonzero = 0, total = 0;
  for (auto kind : kBuiltins) {
    const Model& m = ctx.builtin(kind);
    for (double k : {0.3, 1.0, 5.0})
      for (const Rect& rc : stability_rects()) {
        const int wd = winding_number([&](cplx l) { return D_fn(m, l, k); }, rc);
        const int wm = winding_number([&](cplx l) { return M_fn(m, l, k); }, rc);
        total += 2;
        if (wd != 0) ++nonzero;
        if (wm != 0) ++nonzero;
      }
  }
  r.pass = nonzero == 0;
  r.data = {{"contours", total}, {"nonzero", nonzero}};
  r.detail = std::to_string(total) + " contours, " + std::to_string(nonzero) + " with nonzero winding";
}

void c7(Context& ctx, CriterionResult& r) {
  bool ok = true;
  std::ostringstream d;
  for (auto kind : kBuiltins) {
    const Model& m = ctx.builtin(kind);
    const double lim = std::abs(residue_a(m, 1e-3) - kI * m.tau0() / 2.0);
    double route_a = 0.0;
    for (double f : {0.05, 0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double k = f * m.kappa0();
      route_a = std::max(route_a, std::abs(residue_a(m, k) - residue_a_numeric(m, k)));
    }
    route_a = std::max(route_a, std::abs(residue_a(m, 0.3) - residue_a_numeric(m, 0.3)));
    double route_b = 0.0, route_dl = 0.0;
    for (double k : {0.05, 0.3, 1.0, 3.0, 10.0, 20.0}) {
      route_b = std::max(route_b, std::abs(residue_b(m, k) - residue_b_direct(m, k)));
      route_dl = std::max(route_dl, std::abs(dlaplace_N(m, k) - dlaplace_N_fd(m, k)));
    }
    const bool pass = lim <= 1e-4 && route_a <= 1e-8 && route_b <= 1e-7 && route_dl <= 1e-7;
    ok = ok && pass;
    r.data[kind_name(kind)] = {{"a_small_k", lim}, {"a_routes", route_a}, {"b_routes", route_b},
                               {"dLN_routes", route_dl}};
    d << kind_name(kind) << ": |a(1e-3)-i tau0/2| " << sci(lim) << ", a routes " << sci(route_a) << ", b routes "
      << sci(route_b) << ", dL[N] routes " << sci(route_dl) << "; ";
  }
  r.pass = ok;
  r.detail = d.str();
}

void c8(Context& ctx, CriterionResult& r) {
  const Model& m = ctx.primary();
  const std::vector<double> ts{1.0, 5.0, 10.0};
  double worst = 0.0;
  for (double k : {0.3, 1.0, 3.0}) {
    const TimeGrid g = make_grid(1e-3, 10.0);
    const GreenTrace R = electric_green(m, k, g), H = magnetic_green(m, k, g);
    const auto bR = bromwich_invert(m, Channel::electric, k, ts);
    const auto bH = bromwich_invert(m, Channel::magnetic, k, ts);
    double eR = 0, eH = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const int n = static_cast<int>(std::lround(ts[i] / g.dt));
      eR = std::max(eR, std::abs(R.values[n] - bR[i]));
      eH = std::max(eH, std::abs(H.values[n] - bH[i]));
    }
    r.data["k=" + sci(k)] = {{"electric", eR}, {"magnetic", eH}};
    worst = std::max({worst, eR, eH});
  }
  r.pass = worst <= 1e-4;
  r.detail = "max |stepped - contour| " + sci(worst) + " (limit 1e-4), dt = 1e-3";
}

void c9(Context& ctx, CriterionResult& r) {
  const Model& m = ctx.primary();
  const double k = 0.5;
  // window k t in [100, 400]: the algebraic tail has set in by k t ~ 100
  std::vector<double> t;
  for (double s = 200.0; s <= 800.0; s += 1.0) t.push_back(s);
  const auto g = regular_part_spectral(m, Channel::electric, k, t);
  const DecayFit fit = fit_decay(t, g, k, Scaling::kt, 200.0, 800.0);
  const Collapse col = magnetic_collapse(m, {0.05, 0.08, 0.12}, 1.0, 8.0, 50);
  r.pass = fit.slope <= -3.0 && col.sup_distance <= 0.5;
  r.data = {{"electric_slope", fit.slope}, {"electric_r2", fit.r2}, {"electric_points", fit.points},
            {"electric_partial", fit.partial}, {"collapse_sup_distance", col.sup_distance}};
  r.detail = "electric slope " + sci(fit.slope) + " (r2 " + sci(fit.r2) + ", limit -3), magnetic collapse " +
             sci(col.sup_distance) + " (limit 0.5)";
}

void c10(Context& ctx, CriterionResult& r) {
  const Model& m = ctx.primary();
  double worst = 0.0;
  bool peaks = true;
  std::ostringstream d;
  for (double k : {0.3, 0.8, 2.0}) {
    const double t_end = std::min(50.0, 0.8 * recurrence_time(k, 512));
    const TimeGrid g = make_grid(std::min(5e-3, max_dt(m, k)), t_end);
    const ModeInitialData data = make_mode_data(m, k, Profile::kappa, Profile::q, 1.0, 0.5);
    const ModeSolution sol = solve_mode(m, data, g);
    const OracleResult oe = kinetic_oracle_elec(m, data, g);
    const OracleResult om = kinetic_oracle_mag(m, data, g);
    const double er = (sol.rho - oe.values).cwiseAbs().maxCoeff();
    const double ea = (sol.A - om.values).cwiseAbs().maxCoeff();
    worst = std::max({worst, er, ea});
    double bin = 0.0;
    const double pa = spectral_peak(sol.A, g.dt, &bin);
    const double nu = nu_star(m, k);
    bool ok = std::abs(pa - nu) <= bin;
    nlohmann::json j = {{"rho_vs_oracle", er}, {"A_vs_oracle", ea}, {"bin", bin}, {"peak_A", pa}, {"nu_star", nu}};
    d << "k=" << k << ": rho " << sci(er) << ", A " << sci(ea) << ", peak A " << sci(pa) << " vs " << sci(nu);
    // the density peak is checked where an undamped root exists
    if (k <= m.kappa0()) {
      const double pr = spectral_peak(sol.rho, g.dt), ts = tau_star(m, k);
      ok = ok && std::abs(pr - ts) <= bin;
      j["peak_rho"] = pr;
      j["tau_star"] = ts;
      d << ", peak rho " << sci(pr) << " vs " << sci(ts);
    }
    d << "; ";
    peaks = peaks && ok;
    r.data["k=" + sci(k)] = j;
  }
  r.pass = worst <= 1e-3 && peaks;
  r.detail = "max sup-norm gap " + sci(worst) + " (limit 1e-3); " + d.str();
}

void c11(Context& ctx, CriterionResult& r) {
  const Model& m = ctx.primary();
  const double sigma = 1.0;
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i <= 9; ++i) {
    const double t = 5.0 + 5.0 * i;
    const double v = t * t * t * free_transport_sup(m.eq, sigma, t);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double m0 = free_transport_mass(m.eq, sigma, 0.0);
  double drift = 0.0;
  for (double t : {5.0, 20.0, 50.0}) drift = std::max(drift, std::abs(free_transport_mass(m.eq, sigma, t) - m0) / m0);
  // bounded above and below: a positive finite band no wider than a factor 10
  r.pass = lo > 0.0 && std::isfinite(hi) && hi / lo <= 10.0 && drift <= 1e-6;
  r.data = {{"t3_sup_min", lo}, {"t3_sup_max", hi}, {"mass_drift", drift}};
  r.detail = "t^3 sup S in [" + sci(lo) + ", " + sci(hi) + "] on t in [5, 50], mass drift " + sci(drift) +
             " (limit 1e-6)";
}

void c12(Context& ctx, CriterionResult& r) {
  const Model& m = ctx.primary();
  const double k = 1.0, T = 10.0;
  const ModeInitialData data = make_mode_data(m, k, Profile::kappa, Profile::q, 1.0, 0.0);
  std::vector<double> eR, eH, eRho;
  for (double dt : {0.02, 0.01, 0.005}) {
    const TimeGrid g = make_grid(dt, T);
    const Eigen::VectorXd K = memory_samples(m, Channel::electric, k, g);
    const Eigen::VectorXd N = memory_samples(m, Channel::magnetic, k, g);
    eR.push_back(electric_residual(electric_green(m, k, g).values, K, dt).cwiseAbs().maxCoeff());
    eH.push_back(magnetic_residual(magnetic_green(m, k, g).values, N, k * k + m.c.tau0_sq, dt).cwiseAbs().maxCoeff());
    // rho + K*rho - S with fourth-order convolution weights
    const ModeSolution sol = solve_phi_mode(m, data, g);
    double worst = 0.0;
    for (int i = 1; i <= g.n_steps; ++i) {
      const std::vector<double> w = gregory_weights(i);
      cplx acc = 0.0;
      for (int j = 0; j <= i; ++j) acc += w[j] * K[i - j] * sol.rho_direct[j];
      worst = std::max(worst, std::abs(sol.rho_direct[i] + dt * acc - sol.S[i]));
    }
    eRho.push_back(worst);
  }
  // kinetic oracles: successive differences on the coarsest grid
  std::vector<Eigen::VectorXcd> oe, om;
  for (double dt : {0.02, 0.01, 0.005, 0.0025}) {
    const TimeGrid g = make_grid(dt, T);
    oe.push_back(kinetic_oracle_elec(m, data, g, 256).values);
    om.push_back(kinetic_oracle_mag(m, data, g, 256).values);
  }
  auto self_conv = [&](const std::vector<Eigen::VectorXcd>& v) {
    std::vector<double> e;
    const int n0 = static_cast<int>(v[0].size());
    for (std::size_t l = 0; l + 1 < v.size(); ++l) {
      const int a = 1 << l, b = 1 << (l + 1);
      double worst = 0.0;
      for (int i = 0; i < n0; ++i) worst = std::max(worst, std::abs(v[l][i * a] - v[l + 1][i * b]));
      e.push_back(worst);
    }
    return e;
  };
  const auto sE = self_conv(oe), sM = self_conv(om);
  bool ok = true;
  std::ostringstream d;
  auto report = [&](const char* name, const std::vector<double>& e) {
    nlohmann::json ratios = nlohmann::json::array();
    d << name << " ";
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
      const double q = e[i] / e[i + 1];
      ratios.push_back(q);
      ok = ok && std::abs(q - 4.0) <= 0.8;
      d << sci(q) << (i + 2 < e.size() ? "/" : "");
    }
    r.data[name] = {{"errors", e}, {"ratios", ratios}};
    d << "; ";
  };
  report("green_electric", eR);
  report("green_magnetic", eH);
  report("rho_volterra", eRho);
  report("oracle_electric", sE);
  report("oracle_magnetic", sM);
  r.pass = ok;
  r.detail = "reduction factors under halving (4 +- 0.8): " + d.str();
}

struct Criterion {
  const char* title;
  double budget;
  void (*run)(Context&, CriterionResult&);
};

const Criterion kCriteria[12] = {
    {"tau0^2 three-route consistency", 5.0, c1},
    {"closed-form kernel checks", 5.0, c2},
    {"electric dispersion relation", 30.0, c3},
    {"continuation past kappa0", 30.0, c4},
    {"magnetic dispersion relation", 10.0, c5},
    {"spectral stability (winding numbers)", 60.0, c6},
    {"Green-function residues", 30.0, c7},
    {"time stepping vs contour inversion", 120.0, c8},
    {"decay scalings of regular parts", 300.0, c9},
    {"resolvent routes vs kinetic oracle", 300.0, c10},
    {"free transport dispersion", 120.0, c11},
    {"scheme convergence order", 120.0, c12},
};
}  // namespace

int criterion_count() { return 12; }

std::string criterion_title(int id) {
  if (id < 1 || id > 12) throw ValidationError("criterion id out of range");
  return kCriteria[id - 1].title;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  Context ctx;
  ctx.primary_cfg = opt.primary;
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 12; ++id) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
    CriterionResult r;
    r.id = id;
    r.title = kCriteria[id - 1].title;
    r.budget = kCriteria[id - 1].budget;
    r.data = nlohmann::json::object();
    const auto t0 = std::chrono::steady_clock::now();
    try {
      kCriteria[id - 1].run(ctx, r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > r.budget) {
      r.pass = false;
      r.detail += " [over runtime budget]";
    }
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "%s  C%-2d %-38s %7.1fs/%.0fs  ", r.pass ? "PASS" : "FAIL", r.id,
                r.title.c_str(), r.seconds, r.budget);
  return head + r.detail;
}

nlohmann::json result_json(const CriterionResult& r) {
  return {{"id", r.id},         {"title", r.title},   {"pass", r.pass},  {"detail", r.detail},
          {"seconds", r.seconds}, {"budget", r.budget}, {"data", r.data}};
}

}  // namespace vml
