#pragma once

#include "vml/kernels.hpp"

#include <functional>
#include <vector>

namespace vml {

// Electric dispersion function D(lambda, k) = 1 + L[K_k](lambda).
// Re lambda > 0: Laplace route. Re lambda = 0: boundary values. With
// continued = true, Re lambda < 0 is reached through the continuation of the
// right-half-plane branch across the cut.
cplx D_fn(const Model& m, cplx lambda, double k, bool continued = false);
// Magnetic dispersion function M(lambda, k) = lambda^2 + k^2 + tau0^2 + L[N_k](lambda).
cplx M_fn(const Model& m, cplx lambda, double k);

// D and M on the imaginary axis lambda = i tau. For |tau| > k these use the
// omega and psi forms; inside, the Plemelj boundary values.
cplx D_axis(const Model& m, double tau, double k);
cplx M_axis(const Model& m, double tau, double k);

// Electric root on the axis, 0 <= k <= kappa0: x = tau^2 solves x = omega(k^2/x).
double tau_star(const Model& m, double k);

struct ContinuedRoot {
  cplx lambda;  // lambda_+ = i k z
  cplx z;
  int iterations = 0;
};
// Root of the continued D for k > kappa0 (built-in profiles).
ContinuedRoot continue_root(const Model& m, double k);

// lambda_+(k): i tau_* for k <= kappa0, the continued root above.
cplx electric_root(const Model& m, double k);
double default_delta(const Model& m);

// Magnetic root: x = nu^2 solves x = k^2 + psi(k^2/x).
double nu_star(const Model& m, double k);
// d nu_* / dk by implicit differentiation of the fixed point (odd in k).
double nu_star_prime(const Model& m, double k);

// Residues of 1/D at lambda_+ and 1/M at i nu_*.
cplx residue_a(const Model& m, double k);
cplx residue_a_numeric(const Model& m, double k);  // finite differences of D_axis
cplx residue_b(const Model& m, double k);          // psi route
cplx residue_b_direct(const Model& m, double k);   // d/dlambda of L[N]
// d/dlambda L[N] at i nu_*: differentiated real integral, and central
// differences of laplace_N along the axis.
cplx dlaplace_N(const Model& m, double k);
cplx dlaplace_N_fd(const Model& m, double k);

struct Rect {
  double re0, re1, im0, im1;
};
// Winding number of f around the rectangle boundary (counter-clockwise).
// Throws ConvergenceError if f comes too close to zero on the contour.
int winding_number(const std::function<cplx(cplx)>& f, const Rect& r);

struct DispersionRow {
  double k = 0, tau_star = 0, nu_star = 0;
  cplx lambda, a, b;                // NaN where no electric root is reported
  bool continuation_failed = false;  // Newton gave up inside (kappa0, kappa0 + delta]
};
// Electric columns are NaN beyond kappa0 + delta (and beyond kappa0 for
// tabulated profiles).
DispersionRow dispersion_row(const Model& m, double k, double delta);

}  // namespace vml
