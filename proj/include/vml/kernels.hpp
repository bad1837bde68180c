#pragma once

#include "vml/equilibrium.hpp"

#include <array>
#include <vector>

namespace vml {

// kappa(u) = 2 pi int_a^inf phi'(s) s^2 ds,   a = 1/sqrt(1-u^2)
// q(u)     = -4 pi (1-u^2) int_a^inf phi(s) s ds
// Both are even and non-positive on (-1, 1) and vanish at u = +-1.
double kappa(const Equilibrium& eq, double u);
double q_kernel(const Equilibrium& eq, double u);

// Continuations through zeta = 1/(1-z^2), computed by complex quadrature
// over s in [1, inf). Built-in profiles only; requires Re zeta > 0 unless the
// profile is a power law.
cplx kappa_analytic(const Equilibrium& eq, cplx z);
cplx q_analytic(const Equilibrium& eq, cplx z);

enum class KernelKind { kappa, q };

// Gauss-Legendre samples of kappa and q plus graded degree-8 panels used for
// off-node interpolation and for oscillatory (Filon) moments.
struct KernelTable {
  int n = 0;
  Eigen::VectorXd u, w, kappa, q;
  std::vector<ChebPanel> panels_kappa, panels_q;    // g(u)
  std::vector<ChebPanel> panels_ukappa, panels_uq;  // u g(u)

  double value_at(KernelKind which, double u) const;
  double slope_at(KernelKind which, double u) const;
  const Eigen::VectorXd& values(KernelKind which) const { return which == KernelKind::kappa ? kappa : q; }
};

KernelTable build_kernel_table(const Equilibrium& eq, int n = 256, int panels = 128);

struct ModelConstants {
  double tau0_sq = 0;           // -int u^2 kappa
  double tau0_sq_q = 0;         // -1/2 int q
  double tau0_sq_velocity = 0;  // velocity-space moment
  double tau1_sq = 0;           // -int u^4 kappa
  double kappa0_sq = 0;         // -int u^2 kappa / (1-u^2)
  double q0_sq = 0;             // psi(1)
  double spread() const;        // relative spread of the three tau0^2 routes
};

struct Model {
  Equilibrium eq;
  KernelTable table;
  ModelConstants c;
  double tau0() const { return std::sqrt(c.tau0_sq); }
  double kappa0() const { return std::sqrt(c.kappa0_sq); }
};

ModelConstants compute_constants(const Equilibrium& eq, const KernelTable& t);
// Builds the table at n nodes, doubling n (up to 4096) until the three
// tau0^2 routes agree to 1e-8.
Model make_model(const Equilibrium& eq, int n = 256);

// omega(y) = -int u^2 kappa / (1 - y u^2), derivative order 0, 1 or 2.
double omega_fn(const Model& m, double y, int deriv = 0);
// psi(y) = -1/2 int q / (1 - y u^2), derivative order 0, 1 or 2.
double psi_fn(const Model& m, double y, int deriv = 0);

// Memory kernels. Gauss-Legendre up to k t = 50, panel Filon beyond.
//   K_k(t) = -(1/k) int u kappa(u) sin(k u t) du
//   N_k(t) =  (k/2) int u q(u) sin(k u t) du
double memory_K(const Model& m, double k, double t);
double memory_N(const Model& m, double k, double t);

// C(z) = int_{-1}^{1} u g(u) / (u + z) du.
// On the real segment |x| < 1 the value is the limit from Im z < 0.
// With continued = true and Im z > 0 the result is the continuation of the
// lower-half-plane branch across (-1, 1).
cplx cauchy(const Model& m, KernelKind which, cplx z, bool continued = false);

// Laplace transforms of the memory kernels for Re lambda >= 0 (boundary
// values on the imaginary axis).
//   L[K](lambda) = -int u^2 kappa / (lambda^2 + k^2 u^2) du
//   L[N](lambda) = (k^2/2) int u^2 q / (lambda^2 + k^2 u^2) du
cplx laplace_K(const Model& m, double k, cplx lambda);
cplx laplace_N(const Model& m, double k, cplx lambda);

}  // namespace vml
