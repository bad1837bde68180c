#include "vml/equilibrium.hpp"

#include "vml/errors.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace vml {

namespace {

constexpr double kPi = std::numbers::pi;

// Fritsch-Butland slopes: the cubic Hermite interpolant stays monotone on
// every interval where the data are.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1), del(n - 1), d(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    del[i] = (y[i + 1] - y[i]) / h[i];
  }
  if (n == 2) {
    d[0] = d[1] = del[0];
    return d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (del[i - 1] * del[i] <= 0.0) continue;
    const double w1 = 2.0 * h[i] + h[i - 1], w2 = h[i] + 2.0 * h[i - 1];
    d[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
  }
  auto edge = [](double h0, double h1, double m0, double m1) {
    double d0 = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (d0 * m0 <= 0.0) return 0.0;
    if (m0 * m1 <= 0.0 && std::abs(d0) > std::abs(3.0 * m0)) return 3.0 * m0;
    return d0;
  };
  d[0] = edge(h[0], h[1], del[0], del[1]);
  d[n - 1] = edge(h[n - 2], h[n - 3 + 0], del[n - 2], del[n - 3]);
  return d;
}

}  // namespace

Equilibrium Equilibrium::maxwellian(double n0) {
  if (!(n0 > 0.0) || !std::isfinite(n0)) throw ValidationError("n0 must be positive");
  Equilibrium e;
  e.kind_ = EquilibriumKind::maxwellian;
  e.n0_ = n0;
  e.c_ = n0 * std::exp(0.5) / std::pow(2.0 * kPi, 1.5);
  return e;
}

Equilibrium Equilibrium::power_law(double n0, double M) {
  if (!(n0 > 0.0) || !std::isfinite(n0)) throw ValidationError("n0 must be positive");
  if (!(M > 3.0) || !std::isfinite(M)) throw ValidationError("power-law exponent M must exceed 3");
  Equilibrium e;
  e.kind_ = EquilibriumKind::power_law;
  e.n0_ = n0;
  e.M_ = M;
  e.c_ = 1.0;
  // mass is linear in c0, so Newton from c0 = 1 lands on the root in one step
  const double m1 = mass(e);
  double c0 = 1.0;
  for (int it = 0; it < 5; ++it) {
    const double r = c0 * m1 - n0;
    if (std::abs(r) <= 1e-15 * n0) break;
    c0 -= r / m1;
    ++e.newton_steps_;
  }
  e.c_ = c0;
  return e;
}

Equilibrium Equilibrium::tabulated(std::vector<double> s, std::vector<double> phi, double n0) {
  if (!(n0 > 0.0) || !std::isfinite(n0)) throw ValidationError("n0 must be positive");
  if (s.size() != phi.size() || s.size() < 4)
    throw ValidationError("table needs at least four (s, phi) rows");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i]) || !std::isfinite(phi[i]) || phi[i] < 0.0)
      throw ValidationError("table values must be finite with phi >= 0");
    if (i > 0 && !(s[i] > s[i - 1])) throw ValidationError("table s must be strictly increasing");
  }
  if (s.front() > 1.0) throw ValidationError("table must start at s <= 1");
  Equilibrium e;
  e.kind_ = EquilibriumKind::tabulated;
  e.n0_ = n0;
  for (std::size_t i = 1; i < phi.size(); ++i)
    if (phi[i] > phi[i - 1]) e.non_monotone_ = true;
  e.s_ = std::move(s);
  e.f_ = std::move(phi);
  e.d_ = pchip_slopes(e.s_, e.f_);
  e.c_ = 1.0;
  const double m = mass(e);
  if (!(m > 0.0)) throw ValidationError("table has zero mass");
  // rescale the table to carry the requested density
  e.c_ = n0 / m;
  return e;
}

Equilibrium Equilibrium::from_config(const EquilibriumConfig& cfg) {
  switch (cfg.kind) {
    case EquilibriumKind::maxwellian:
      return maxwellian(cfg.n0);
    case EquilibriumKind::power_law:
      return power_law(cfg.n0, cfg.M);
    case EquilibriumKind::tabulated: {
      std::vector<double> s = cfg.table_s, p = cfg.table_phi;
      if (s.empty()) read_table_csv(cfg.table_path, s, p);
      return tabulated(s, p, cfg.n0);
    }
  }
  throw ValidationError("unknown equilibrium kind");
}

double Equilibrium::support_end() const {
  if (kind_ == EquilibriumKind::tabulated) return s_.back();
  return std::numeric_limits<double>::infinity();
}

double Equilibrium::phi(double s) const {
  switch (kind_) {
    case EquilibriumKind::maxwellian:
      return c_ * std::exp(-0.5 * s * s);
    case EquilibriumKind::power_law:
      return c_ * std::pow(s, -2.0 * M_);
    case EquilibriumKind::tabulated: {
      if (s >= s_.back()) return 0.0;
      if (s <= s_.front()) return c_ * f_.front();
      const auto it = std::upper_bound(s_.begin(), s_.end(), s);
      const std::size_t i = static_cast<std::size_t>(it - s_.begin()) - 1;
      const double h = s_[i + 1] - s_[i], t = (s - s_[i]) / h;
      const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
      const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
      return c_ * (h00 * f_[i] + h10 * h * d_[i] + h01 * f_[i + 1] + h11 * h * d_[i + 1]);
    }
  }
  return 0.0;
}

double Equilibrium::dphi(double s) const {
  switch (kind_) {
    case EquilibriumKind::maxwellian:
      return -s * c_ * std::exp(-0.5 * s * s);
    case EquilibriumKind::power_law:
      return -2.0 * M_ * c_ * std::pow(s, -2.0 * M_ - 1.0);
    case EquilibriumKind::tabulated: {
      if (s >= s_.back() || s <= s_.front()) return 0.0;
      const auto it = std::upper_bound(s_.begin(), s_.end(), s);
      const std::size_t i = static_cast<std::size_t>(it - s_.begin()) - 1;
      const double h = s_[i + 1] - s_[i], t = (s - s_[i]) / h;
      const double d00 = 6 * t * t - 6 * t, d10 = 3 * t * t - 4 * t + 1;
      const double d01 = -6 * t * t + 6 * t, d11 = 3 * t * t - 2 * t;
      return c_ * (d00 * f_[i] / h + d10 * d_[i] + d01 * f_[i + 1] / h + d11 * d_[i + 1]);
    }
  }
  return 0.0;
}

cplx Equilibrium::F(cplx z) const {
  switch (kind_) {
    case EquilibriumKind::maxwellian:
      return c_ * std::exp(-0.5 * z);
    case EquilibriumKind::power_law:
      return c_ * std::pow(z, -M_);
    default:
      throw ValidationError("complex continuation is not available for tabulated profiles");
  }
}

cplx Equilibrium::dF(cplx z) const {
  switch (kind_) {
    case EquilibriumKind::maxwellian:
      return -0.5 * c_ * std::exp(-0.5 * z);
    case EquilibriumKind::power_law:
      return -M_ * c_ * std::pow(z, -M_ - 1.0);
    default:
      throw ValidationError("complex continuation is not available for tabulated profiles");
  }
}

double mass(const Equilibrium& eq) {
  auto integrand = [&](double r) { return eq.phi(std::sqrt(1.0 + r * r)) * r * r; };
  double total = 0.0;
  if (eq.kind() == EquilibriumKind::tabulated) {
    // split at the knots so every piece is a smooth cubic in s
    std::vector<double> br{0.0};
    for (double s : eq.knots())
      if (s > 1.0) br.push_back(std::sqrt(s * s - 1.0));
    for (std::size_t i = 0; i + 1 < br.size(); ++i)
      total += integrate<double>(integrand, br[i], br[i + 1], 0.0, 1e-13).value;
  } else {
    total = integrate_to_inf<double>(integrand, 0.0, 0.0, 1e-14).value;
  }
  return 4.0 * kPi * total;
}

void read_table_csv(const std::string& path, std::vector<double>& s, std::vector<double>& phi) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open table " + path);
  s.clear();
  phi.clear();
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a, b;
    if (!(ls >> a >> b)) continue;  // header row
    s.push_back(a);
    phi.push_back(b);
  }
}

EquilibriumConfig parse_equilibrium_json(const std::string& text, const std::string& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("bad equilibrium JSON: ") + e.what());
  }
  EquilibriumConfig cfg;
  const std::string kind = j.value("kind", std::string("maxwellian"));
  if (kind == "maxwellian") cfg.kind = EquilibriumKind::maxwellian;
  else if (kind == "powerlaw" || kind == "power_law") cfg.kind = EquilibriumKind::power_law;
  else if (kind == "tabulated") cfg.kind = EquilibriumKind::tabulated;
  else throw ValidationError("unknown equilibrium kind '" + kind + "'");
  if (j.contains("n0")) {
    if (!j["n0"].is_number()) throw ValidationError("n0 must be a number");
    cfg.n0 = j["n0"].get<double>();
  }
  if (j.contains("M")) {
    if (!j["M"].is_number()) throw ValidationError("M must be a number");
    cfg.M = j["M"].get<double>();
  }
  if (cfg.kind == EquilibriumKind::tabulated) {
    if (!j.contains("table_path")) throw ValidationError("tabulated kind needs table_path");
    std::filesystem::path p = j["table_path"].get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    cfg.table_path = p.string();
    read_table_csv(cfg.table_path, cfg.table_s, cfg.table_phi);
  }
  return cfg;
}

EquilibriumConfig load_equilibrium_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_equilibrium_json(ss.str(), dir.empty() ? "." : dir.string());
}

}  // namespace vml
