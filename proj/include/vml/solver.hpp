#pragma once

#include "vml/green.hpp"

#include <functional>
#include <string>

namespace vml {

// Reduced initial profiles in u for one Fourier mode.
enum class Profile { kappa, q, gaussian, zero };
Profile parse_profile(const std::string& name);
std::function<double(double)> profile_fn(const Model& m, Profile p);

struct ModeInitialData {
  double k = 0;
  std::function<double(double)> h0;      // electric channel
  std::function<double(double)> h0_mag;  // magnetic channel
  cplx A0 = 0.0, A1 = 0.0;
};
ModeInitialData make_mode_data(const Model& m, double k, Profile elec, Profile mag, cplx A0 = 0.0,
                               cplx A1 = 0.0);

// S(t) = int e^{-i k u t} h0(u) du and Sj(t) = int e^{-i k u t} u h0_mag(u) du.
// Gauss-Legendre for k t <= 50, Filon panels beyond.
cplx source_S(const ModeInitialData& d, double t);
cplx source_Sj(const ModeInitialData& d, double t);
Eigen::VectorXcd source_trace(const std::function<double(double)>& h, double k, const TimeGrid& g,
                              bool u_weighted);

struct ModeSolution {
  double k = 0;
  TimeGrid grid;
  Eigen::VectorXcd S, Sj;
  Eigen::VectorXcd rho;         // S + R*S
  Eigen::VectorXcd rho_direct;  // rho + K*rho = S
  Eigen::VectorXcd A, dA;       // H' A0 + H A1 + H*Sj, and its time derivative
  double route_gap = 0;         // max |rho - rho_direct|
};

// Trapezoid convolution (a*b)(t_i) on the grid.
Eigen::VectorXcd convolve(const Eigen::VectorXd& a, const Eigen::VectorXcd& b, double dt);

// Both routes for rho; throws ConvergenceError when they differ by more than 1e-5.
ModeSolution solve_phi_mode(const Model& m, const ModeInitialData& d, const TimeGrid& g);
void solve_A_mode(const Model& m, const ModeInitialData& d, ModeSolution& sol, bool with_memory = true);
ModeSolution solve_mode(const Model& m, const ModeInitialData& d, const TimeGrid& g);

struct OracleResult {
  Eigen::VectorXcd values;  // rho (electric) or A (magnetic)
  Eigen::VectorXcd derivative;
  double t_recurrence = 0;  // 2 pi / (k du) for the central node spacing
  bool recurrence = false;  // |values| rebounded above 10x its running minimum
};
// Velocity-discretized reduced kinetic system on n_u Gauss-Legendre nodes,
// exponential integrator with trapezoidal coupling.
//   electric: h' + i k u h = i k u kappa(u) phi,  k^2 phi = sum w h
//   magnetic: h' + i k u h = -(i k / 2) q(u) A,   A'' + (k^2 + tau0^2) A = sum w u h
OracleResult kinetic_oracle_elec(const Model& m, const ModeInitialData& d, const TimeGrid& g, int n_u = 512,
                                 bool coupling = true);
OracleResult kinetic_oracle_mag(const Model& m, const ModeInitialData& d, const TimeGrid& g, int n_u = 512,
                                bool coupling = true);
double recurrence_time(double k, int n_u);

// Free transport of g0 = rho0(x) chi(<v>) with Gaussian rho0 of width sigma and
// chi the normalized profile of `chi`; radial in r = |x|.
double free_transport_density(const Equilibrium& chi, double sigma, double t, double r);
double free_transport_mass(const Equilibrium& chi, double sigma, double t);
// max over r of S(t, r), located on a grid then refined by golden section
double free_transport_sup(const Equilibrium& chi, double sigma, double t);

}  // namespace vml
