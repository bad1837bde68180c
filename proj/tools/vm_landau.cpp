// vm-landau: command-line front end.
//   kernels | dispersion | green | simulate | report
// Exit codes: 0 ok, 1 failing acceptance criterion, 2 invalid input, 3 no convergence.
#include "vml/acceptance.hpp"
#include "vml/errors.hpp"
#include "vml/io.hpp"
#include "vml/parallel.hpp"
#include "vml/solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <numbers>
#include <string>

using namespace vml;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Common {
  std::string equilibrium;
  int threads = 0;
};

EquilibriumConfig load_config(const Common& c) {
  if (c.equilibrium.empty()) return EquilibriumConfig{};  // Maxwellian, n0 = 1
  return load_equilibrium_config(c.equilibrium);
}

void apply_threads(const Common& c) {
  if (c.threads < 0) throw ValidationError("--threads must be non-negative");
  if (c.threads > 0) setenv("VM_LANDAU_THREADS", std::to_string(c.threads).c_str(), 1);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--equilibrium", c.equilibrium, "equilibrium config (JSON); default Maxwellian, n0 = 1");
  sub->add_option("--threads", c.threads, "worker threads (0: VM_LANDAU_THREADS or all cores)");
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

// ---------------------------------------------------------------------------

struct KernelsArgs {
  Common c;
  std::string dump, out;
};

int cmd_kernels(const KernelsArgs& a) {
  apply_threads(a.c);
  const EquilibriumConfig cfg = load_config(a.c);
  const Model m = make_model(Equilibrium::from_config(cfg));
  if (!a.dump.empty()) {
    const auto& t = m.table;
    std::vector<double> u(t.u.data(), t.u.data() + t.n), k(t.kappa.data(), t.kappa.data() + t.n),
        q(t.q.data(), t.q.data() + t.n);
    write_csv_file(a.dump, {"u", "kappa", "q"}, {u, k, q});
  }
  nlohmann::json j = {{"tau0_sq", m.c.tau0_sq},
                      {"tau0_sq_q", m.c.tau0_sq_q},
                      {"tau0_sq_velocity", m.c.tau0_sq_velocity},
                      {"tau1_sq", m.c.tau1_sq},
                      {"kappa0_sq", m.c.kappa0_sq},
                      {"q0_sq", m.c.q0_sq},
                      {"spread", m.c.spread()},
                      {"nodes", m.table.n},
                      {"metadata", metadata(cfg, {{"tau0_spread", 1e-8}})}};
  if (m.eq.non_monotone_warning()) j["warning"] = "tabulated phi is not non-increasing";
  if (a.out.empty())
    std::cout << j.dump(2) << '\n';
  else
    write_json_file(a.out, j);
  return 0;
}

// ---------------------------------------------------------------------------

struct DispersionArgs {
  Common c;
  double kmax = 3.0, delta = -1.0;
  int n = 256;
  std::string out = "dispersion.csv";
};

int cmd_dispersion(const DispersionArgs& a) {
  apply_threads(a.c);
  require(a.kmax > 0.0 && std::isfinite(a.kmax), "--kmax must be positive");
  require(a.n >= 2, "--n must be at least 2");
  const EquilibriumConfig cfg = load_config(a.c);
  const Model m = make_model(Equilibrium::from_config(cfg));
  const double delta_req = a.delta < 0.0 ? default_delta(m) : a.delta;
  require(delta_req > 0.0, "--delta must be positive");

  std::vector<DispersionRow> rows(a.n);
  parallel_for(a.n, [&](int i) { rows[i] = dispersion_row(m, a.kmax * i / (a.n - 1), delta_req); });

  // Newton failure past kappa0 shrinks delta to the last k that converged
  double delta = delta_req;
  for (const auto& r : rows)
    if (r.continuation_failed) {
      delta = std::min(delta, r.k - m.kappa0());
      break;
    }
  std::vector<std::vector<double>> cols(9, std::vector<double>(a.n));
  for (int i = 0; i < a.n; ++i) {
    DispersionRow r = rows[i];
    if (r.k > m.kappa0() + delta) r.lambda = r.a = cplx(kNaN, kNaN);
    const double v[9] = {r.k, r.tau_star, r.nu_star, r.lambda.real(), r.lambda.imag(),
                         r.a.real(), r.a.imag(), r.b.real(), r.b.imag()};
    for (int j = 0; j < 9; ++j) cols[j][i] = v[j];
  }
  write_csv_file(a.out, {"k", "tau_star", "nu_star", "re_lambda", "im_lambda", "re_a", "im_a", "re_b", "im_b"},
                 cols);
  nlohmann::json side = {{"kappa0", m.kappa0()},
                         {"tau0_sq", m.c.tau0_sq},
                         {"tau1_sq", m.c.tau1_sq},
                         {"q0_sq", m.c.q0_sq},
                         {"delta", delta},
                         {"delta_requested", delta_req},
                         {"kmax", a.kmax},
                         {"n", a.n},
                         {"metadata", metadata(cfg, {{"axis_root", 1e-12}, {"continued_root", 1e-12}})}};
  write_json_file(a.out + ".json", side);
  return 0;
}

// ---------------------------------------------------------------------------

struct GreenArgs {
  Common c;
  double k = 0.5, tmax = 200.0, dt = 1e-3;
  std::string which = "both", out = "green.csv", report;
  std::vector<double> window;
  bool spectral = false;
};

int cmd_green(const GreenArgs& a) {
  apply_threads(a.c);
  require(a.k > 0.0, "--k must be positive");
  require(a.tmax > 0.0 && a.dt > 0.0 && a.dt < a.tmax, "need 0 < dt < tmax");
  require(a.which == "electric" || a.which == "magnetic" || a.which == "both",
          "--which must be electric, magnetic or both");
  const EquilibriumConfig cfg = load_config(a.c);
  const Model m = make_model(Equilibrium::from_config(cfg));
  const TimeGrid g = make_grid(a.dt, a.tmax);
  check_resolution(m, a.k, g);
  const bool de = a.which != "magnetic", dm = a.which != "electric";

  GreenTrace ge, gm;
  if (de) {
    ge = electric_green(m, a.k, g);
    decompose(m, ge);
  }
  if (dm) {
    gm = magnetic_green(m, a.k, g);
    decompose(m, gm);
  }
  const int n = g.n_steps + 1;
  auto col = [&](bool on, const Eigen::VectorXd& v) {
    std::vector<double> c(n, kNaN);
    if (on) std::copy(v.data(), v.data() + n, c.begin());
    return c;
  };
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = g.t(i);
  write_csv_file(a.out, {"t", "re_G", "re_G_osc", "re_G_reg", "re_H", "re_H_osc", "re_H_reg", "re_dH"},
                 {t, col(de, ge.values), col(de, ge.osc), col(de, ge.regular), col(dm, gm.values),
                  col(dm, gm.osc), col(dm, gm.regular), col(dm, gm.derivative)});

  if (!a.report.empty()) {
    double t1 = a.tmax / 4.0, t2 = a.tmax;
    if (!a.window.empty()) {
      require(a.window.size() == 2 && a.window[0] < a.window[1], "--window takes two increasing times");
      t1 = a.window[0];
      t2 = a.window[1];
    }
    auto fit_json = [](const DecayFit& f, const char* scaling) {
      return nlohmann::json{{"slope", f.slope}, {"constant", f.constant}, {"r2", f.r2},
                            {"points", f.points}, {"partial", f.partial}, {"scaling", scaling}};
    };
    auto roots_json = [](const GreenTrace& tr) {
      nlohmann::json r = nlohmann::json::array();
      for (std::size_t i = 0; i < tr.roots.size(); ++i)
        r.push_back({{"re_lambda", tr.roots[i].real()}, {"im_lambda", tr.roots[i].imag()},
                     {"re_residue", tr.residues[i].real()}, {"im_residue", tr.residues[i].imag()}});
      return r;
    };
    nlohmann::json rep = {{"k", a.k}, {"window", {t1, t2}}, {"dt", a.dt}};
    // with --spectral the fit uses the axis-integral regular part on the window
    // (about 20 samples per period 2 pi / k), free of accumulated phase error
    std::vector<double> tw;
    if (a.spectral) {
      const int nw = std::clamp(static_cast<int>(20.0 * (t2 - t1) * a.k / (2.0 * std::numbers::pi)), 200, 2000);
      for (int j = 0; j < nw; ++j) tw.push_back(t1 + (t2 - t1) * j / (nw - 1));
    }
    auto fit_channel = [&](Channel ch, const GreenTrace& tr, Scaling s) {
      if (a.spectral) return fit_decay(tw, regular_part_spectral(m, ch, a.k, tw), a.k, s, t1, t2);
      std::vector<double> reg(tr.regular.data(), tr.regular.data() + n);
      return fit_decay(t, reg, a.k, s, t1, t2);
    };
    rep["route"] = a.spectral ? "spectral" : "time_stepping";
    if (de)
      rep["electric"] = {{"fit", fit_json(fit_channel(Channel::electric, ge, Scaling::kt), "kt")},
                         {"poles", roots_json(ge)}};
    if (dm) {
      const Scaling s = a.k <= 0.15 ? Scaling::k3t : Scaling::kt;
      rep["magnetic"] = {{"fit", fit_json(fit_channel(Channel::magnetic, gm, s), s == Scaling::kt ? "kt" : "k3t")},
                         {"poles", roots_json(gm)}};
    }
    rep["metadata"] = metadata(cfg, {{"max_dt", max_dt(m, a.k)}, {"fit_noise_floor", 1e-12}});
    write_json_file(a.report, rep);
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  Common c;
  double k = 0.5, tmax = 100.0, dt = 5e-4, A0 = 0.0, A1 = 0.0;
  std::string profile = "kappa", profile_mag = "q", channel = "both", out = "mode.csv";
  int n_u = 512;
};

int cmd_simulate(const SimulateArgs& a) {
  apply_threads(a.c);
  require(a.k > 0.0, "--k must be positive");
  require(a.tmax > 0.0 && a.dt > 0.0 && a.dt < a.tmax, "need 0 < dt < tmax");
  require(a.channel == "elec" || a.channel == "mag" || a.channel == "both", "--channel must be elec, mag or both");
  require(a.n_u >= 16, "--nu must be at least 16");
  const EquilibriumConfig cfg = load_config(a.c);
  const Model m = make_model(Equilibrium::from_config(cfg));
  const TimeGrid g = make_grid(a.dt, a.tmax);
  check_resolution(m, a.k, g);
  const bool de = a.channel != "mag", dm = a.channel != "elec";

  const ModeInitialData d =
      make_mode_data(m, a.k, parse_profile(a.profile), parse_profile(a.profile_mag), a.A0, a.A1);
  const int n = g.n_steps + 1;
  // the oracle is reported only up to 0.8 of its recurrence time
  const double t_cut = 0.8 * recurrence_time(a.k, a.n_u);
  std::vector<double> t(n), reS(n, kNaN), rho(n, kNaN), rho_o(n, kNaN), gap(n, kNaN), A(n, kNaN), A_o(n, kNaN);
  for (int i = 0; i < n; ++i) t[i] = g.t(i);

  ModeSolution sol;
  if (de) {
    sol = solve_phi_mode(m, d, g);
    const OracleResult o = kinetic_oracle_elec(m, d, g, a.n_u);
    for (int i = 0; i < n; ++i) {
      reS[i] = sol.S[i].real();
      rho[i] = sol.rho[i].real();
      if (t[i] <= t_cut) {
        rho_o[i] = o.values[i].real();
        gap[i] = std::abs(sol.rho[i] - o.values[i]);
      }
    }
  }
  if (dm) {
    if (!de) {
      sol.k = a.k;
      sol.grid = g;
    }
    solve_A_mode(m, d, sol);
    const OracleResult o = kinetic_oracle_mag(m, d, g, a.n_u);
    for (int i = 0; i < n; ++i) {
      A[i] = sol.A[i].real();
      if (t[i] <= t_cut) {
        A_o[i] = o.values[i].real();
        const double e = std::abs(sol.A[i] - o.values[i]);
        gap[i] = std::isnan(gap[i]) ? e : std::max(gap[i], e);
      }
    }
  }
  write_csv_file(a.out, {"t", "re_S", "re_rho", "re_rho_oracle", "abs_discrepancy", "re_A", "re_A_oracle"},
                 {t, reS, rho, rho_o, gap, A, A_o});
  return 0;
}

// ---------------------------------------------------------------------------

struct ReportArgs {
  Common c;
  std::string out;
  std::vector<int> only;
};

int cmd_report(const ReportArgs& a) {
  apply_threads(a.c);
  AcceptanceOptions opt;
  opt.primary = load_config(a.c);
  for (int id : a.only) require(id >= 1 && id <= criterion_count(), "--only ids run from 1 to 12");
  opt.only = a.only;
  const auto results = run_acceptance(opt, [](const CriterionResult& r) {
    std::fprintf(stderr, "%s\n", format_result(r).c_str());
    std::fflush(stderr);
  });
  bool all = true;
  nlohmann::json crit = nlohmann::json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    crit.push_back(result_json(r));
  }
  nlohmann::json j = {{"criteria", crit}, {"all_pass", all}, {"metadata", metadata(opt.primary, nlohmann::json::object())}};
  if (a.out.empty())
    std::cout << j.dump(2) << '\n';
  else
    write_json_file(a.out, j);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linearized relativistic Vlasov-Maxwell: dispersion, Green functions, mode solver"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  KernelsArgs ka;
  auto* sk = app.add_subcommand("kernels", "kernel table and equilibrium constants");
  add_common(sk, ka.c);
  sk->add_option("--dump", ka.dump, "CSV of u, kappa, q on the quadrature nodes");
  sk->add_option("--out", ka.out, "constants JSON (default stdout)");

  DispersionArgs da;
  auto* sd = app.add_subcommand("dispersion", "dispersion curves on a uniform k grid");
  add_common(sd, da.c);
  sd->add_option("--kmax", da.kmax, "largest k");
  sd->add_option("--n", da.n, "number of k values, k = 0 included");
  sd->add_option("--delta", da.delta, "continuation range above kappa0 (default 0.1 kappa0)");
  sd->add_option("--out", da.out, "CSV path; the sidecar goes to <out>.json");

  GreenArgs ga;
  auto* sg = app.add_subcommand("green", "temporal Green functions for one k");
  add_common(sg, ga.c);
  sg->add_option("--k", ga.k, "wave number");
  sg->add_option("--tmax", ga.tmax, "final time");
  sg->add_option("--dt", ga.dt, "time step");
  sg->add_option("--which", ga.which, "electric | magnetic | both");
  sg->add_option("--out", ga.out, "CSV path");
  sg->add_option("--report", ga.report, "JSON path for decay fits and poles");
  sg->add_option("--window", ga.window, "fit window t1 t2 (default tmax/4 tmax)")->expected(2);
  sg->add_flag("--spectral", ga.spectral, "fit the regular part from the axis integral instead of the stepped trace");

  SimulateArgs sa;
  auto* ss = app.add_subcommand("simulate", "one Fourier mode against the kinetic oracle");
  add_common(ss, sa.c);
  ss->add_option("--k", sa.k, "wave number");
  ss->add_option("--profile", sa.profile, "electric initial profile: kappa | q | gaussian | zero");
  ss->add_option("--profile-mag", sa.profile_mag, "magnetic initial profile");
  ss->add_option("--tmax", sa.tmax, "final time");
  ss->add_option("--dt", sa.dt, "time step");
  ss->add_option("--A0", sa.A0, "initial magnetic potential");
  ss->add_option("--A1", sa.A1, "initial time derivative of the potential");
  ss->add_option("--nu", sa.n_u, "velocity nodes of the oracle");
  ss->add_option("--channel", sa.channel, "elec | mag | both");
  ss->add_option("--out", sa.out, "CSV path");

  ReportArgs ra;
  auto* sr = app.add_subcommand("report", "run the acceptance criteria");
  add_common(sr, ra.c);
  sr->add_option("--out", ra.out, "JSON path (default stdout)");
  sr->add_option("--only", ra.only, "criterion ids to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*sk) return cmd_kernels(ka);
    if (*sd) return cmd_dispersion(da);
    if (*sg) return cmd_green(ga);
    if (*ss) return cmd_simulate(sa);
    if (*sr) return cmd_report(ra);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "vm-landau: invalid input: %s\n", e.what());
    return 2;
  } catch (const ConvergenceError& e) {
    std::fprintf(stderr, "vm-landau: no convergence: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "vm-landau: %s\n", e.what());
    return 2;
  }
  return 2;
}
