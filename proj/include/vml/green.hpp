#pragma once

#include "vml/dispersion.hpp"

#include <vector>

namespace vml {

struct TimeGrid {
  double dt = 1e-3;
  int n_steps = 0;
  double t_max() const { return dt * n_steps; }
  double t(int i) const { return dt * i; }
};
TimeGrid make_grid(double dt, double t_max);

// Resolution rule: dt <= min(0.05 / max(1, k), 0.05 / nu_*(k)).
double max_dt(const Model& m, double k);
void check_resolution(const Model& m, double k, const TimeGrid& g);

enum class Channel { electric, magnetic };

struct GreenTrace {
  Channel channel = Channel::electric;
  double k = 0;
  TimeGrid grid;
  Eigen::VectorXd values;      // R_k (delta part kept symbolic) or H_k
  Eigen::VectorXd derivative;  // H_k', magnetic only
  Eigen::VectorXd osc, regular;
  std::vector<cplx> roots, residues;  // empty when there is no oscillatory part
};

// Memory kernel K_k or N_k sampled on the grid.
Eigen::VectorXd memory_samples(const Model& m, Channel ch, double k, const TimeGrid& g);

// R + K + K*R = 0, product trapezoid. Explicit since K(0) = 0.
GreenTrace electric_green(const Model& m, double k, const TimeGrid& g);
// H'' + (k^2 + tau0^2) H + N*H = 0, H(0) = 0, H'(0) = 1. Exact oscillator
// propagation over each step with the memory term trapezoidal and linear in
// time across the step. with_memory = false drops N.
GreenTrace magnetic_green(const Model& m, double k, const TimeGrid& g, bool with_memory = true);

// Attaches roots and residues and fills osc / regular. Electric modes get an
// oscillatory part only for k < kappa0 + delta (k <= kappa0 for tabulated).
void decompose(const Model& m, GreenTrace& tr);

// Residual of the defining equation evaluated with Gregory (fourth order)
// convolution weights; magnetic uses a five-point second difference and skips
// the two points at each end.
Eigen::VectorXd electric_residual(const Eigen::VectorXd& R, const Eigen::VectorXd& K, double dt);
Eigen::VectorXd magnetic_residual(const Eigen::VectorXd& H, const Eigen::VectorXd& N, double omega0_sq,
                                  double dt);

// Regular part from the boundary values on the imaginary axis:
//   f^r(t) = (1/pi) Re int_0^inf e^{i tau t} [F(i tau) - sum_pm r_pm / (i tau - l_pm)] d tau
// with F = 1/D - 1 or 1/M. Adaptive Filon panels in tau; accurate at late times
// where stepping accumulates phase error.
std::vector<double> regular_part_spectral(const Model& m, Channel ch, double k,
                                          const std::vector<double>& t, double tol = 1e-14);

// Contour inversion along Re lambda = gamma0, |Im lambda| <= T. The large-lambda
// behaviour (-tau0^2/(lambda^2+tau0^2) for G, 1/(lambda^2+omega0^2) for H) is
// subtracted and added back in closed form. T = 0 picks 50 max(1, nu_*).
std::vector<double> bromwich_invert(const Model& m, Channel ch, double k, const std::vector<double>& t,
                                    double gamma0 = 0.1, double T = 0.0);

enum class Scaling { kt, k3t };
struct DecayFit {
  double slope = 0, constant = 0, r2 = 0;
  int points = 0;
  bool partial = false;  // part of the window sat below the noise floor
};
// Least squares of log|f| on log(1 + k^p t) over the local maxima of |f| in
// [t1, t2] (all samples when |f| has fewer than four maxima there).
DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& f, double k, Scaling s,
                   double t1, double t2, double noise_floor = 1e-12);

struct Collapse {
  std::vector<double> s;                    // k^3 t
  std::vector<std::vector<double>> curves;  // log(|H^r| / k) per k
  double sup_distance = 0;
};
// |H^r_k(s / k^3)| / k on s in [s1, s2]; sup over pairs of the log-curve distance.
Collapse magnetic_collapse(const Model& m, const std::vector<double>& ks, double s1, double s2, int ns = 200);

// Angular frequency of the largest DFT bin of x (mean removed); bin width 2 pi / (n dt).
double spectral_peak(const Eigen::VectorXcd& x, double dt, double* bin = nullptr);

}  // namespace vml
