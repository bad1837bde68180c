#pragma once

#include "vml/quadrature.hpp"

#include <string>
#include <vector>

namespace vml {

enum class EquilibriumKind { maxwellian, power_law, tabulated };

struct EquilibriumConfig {
  EquilibriumKind kind = EquilibriumKind::maxwellian;
  double n0 = 1.0;
  double M = 4.0;           // power-law exponent, phi ~ s^{-2M}
  std::string table_path;   // CSV with columns s,phi
  std::vector<double> table_s, table_phi;
};

// Radial profile phi(<v>) of the background; <v> = sqrt(1 + |v|^2) >= 1.
// Normalised so that 4 pi int phi(sqrt(1+r^2)) r^2 dr = n0.
class Equilibrium {
 public:
  static Equilibrium maxwellian(double n0 = 1.0);
  static Equilibrium power_law(double n0 = 1.0, double M = 4.0);
  static Equilibrium tabulated(std::vector<double> s, std::vector<double> phi, double n0 = 1.0);
  static Equilibrium from_config(const EquilibriumConfig& cfg);

  EquilibriumKind kind() const { return kind_; }
  double n0() const { return n0_; }
  double M() const { return M_; }
  double normalization() const { return c_; }
  // Newton steps used to fix the power-law constant (linear, so one).
  int newton_steps() const { return newton_steps_; }
  bool analytic() const { return kind_ != EquilibriumKind::tabulated; }
  bool non_monotone_warning() const { return non_monotone_; }
  // Largest s with phi(s) != 0; infinity for the built-in profiles.
  double support_end() const;

  double phi(double s) const;
  double dphi(double s) const;
  // phi(s) = F(s^2); continued to complex z (built-ins only).
  cplx F(cplx z) const;
  cplx dF(cplx z) const;

  const std::vector<double>& knots() const { return s_; }

 private:
  EquilibriumKind kind_ = EquilibriumKind::maxwellian;
  double n0_ = 1.0, M_ = 4.0, c_ = 1.0;
  int newton_steps_ = 0;
  bool non_monotone_ = false;
  std::vector<double> s_, f_, d_;  // table knots, values, PCHIP slopes
};

// 4 pi int_0^inf phi(sqrt(1+r^2)) r^2 dr
double mass(const Equilibrium& eq);

EquilibriumConfig parse_equilibrium_json(const std::string& text, const std::string& base_dir = ".");
EquilibriumConfig load_equilibrium_config(const std::string& path);
void read_table_csv(const std::string& path, std::vector<double>& s, std::vector<double>& phi);

}  // namespace vml
