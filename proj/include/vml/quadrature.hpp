#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

namespace vml {

using cplx = std::complex<double>;

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const cplx& z) { return std::abs(z); }

// Gauss-Legendre rule on [-1, 1]. Results are cached per n.
struct GaussRule {
  Eigen::VectorXd x;
  Eigen::VectorXd w;
};
const GaussRule& gauss_legendre(int n);

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  int evals = 0;
  bool converged = false;
};

namespace gk15 {
inline constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for xgk[1], xgk[3], xgk[5], xgk[7].
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T, class F>
void rule(F& f, double a, double b, T& result, double& err) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fc = f(c);
  T rk = fc * wgk[7];
  T rg = fc * wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * xgk[j];
    T f1 = f(c - dx), f2 = f(c + dx);
    rk += (f1 + f2) * wgk[j];
    if (j % 2 == 1) rg += (f1 + f2) * wg[j / 2];
  }
  result = rk * h;
  err = magnitude(rk - rg) * std::abs(h);
}
}  // namespace gk15

// Adaptive Gauss-Kronrod (7/15) on [a, b]; the worst segment is bisected until
// the summed error estimate meets max(abs_tol, rel_tol * |I|).
template <class T, class F>
QuadResult<T> integrate(F&& f, double a, double b, double abs_tol = 0.0,
                        double rel_tol = 1e-13, int max_segments = 2000) {
  struct Seg {
    double a, b;
    T val;
    double err;
    bool operator<(const Seg& o) const { return err < o.err; }
  };
  QuadResult<T> out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Seg> heap;
  Seg s0{a, b, T{}, 0.0};
  gk15::rule<T>(f, a, b, s0.val, s0.err);
  out.evals = 15;
  T total = s0.val;
  double total_err = s0.err;
  heap.push(s0);
  int nseg = 1;
  while (true) {
    const double target = std::max(abs_tol, rel_tol * magnitude(total));
    if (total_err <= target) {
      out.converged = true;
      break;
    }
    if (nseg >= max_segments) break;
    Seg s = heap.top();
    const double m = 0.5 * (s.a + s.b);
    if (!(std::abs(s.b - s.a) > 4e-15 * (std::abs(a) + std::abs(b)))) {
      // segment cannot be split further: accept what we have
      break;
    }
    heap.pop();
    Seg l{s.a, m, T{}, 0.0}, r{m, s.b, T{}, 0.0};
    gk15::rule<T>(f, l.a, l.b, l.val, l.err);
    gk15::rule<T>(f, r.a, r.b, r.val, r.err);
    out.evals += 30;
    total += l.val + r.val - s.val;
    total_err += l.err + r.err - s.err;
    heap.push(l);
    heap.push(r);
    ++nseg;
  }
  // re-sum to shed accumulated cancellation from the running updates
  T sum{};
  double esum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().val;
    esum += heap.top().err;
    heap.pop();
  }
  out.value = sum;
  out.error = esum;
  if (!out.converged)
    out.converged = esum <= std::max(abs_tol, rel_tol * magnitude(sum));
  return out;
}

// Integral over [a, inf). For a > 0 uses s = a / (1 - xi), otherwise
// s = a + xi / (1 - xi); xi runs over [0, 1).
template <class T, class F>
QuadResult<T> integrate_to_inf(F&& f, double a, double abs_tol = 0.0,
                               double rel_tol = 1e-13, int max_segments = 2000) {
  if (a > 0.0) {
    auto g = [&](double xi) -> T {
      const double om = 1.0 - xi;
      if (om <= 0.0) return T{};
      const double s = a / om;
      return f(s) * (a / (om * om));
    };
    return integrate<T>(g, 0.0, 1.0, abs_tol, rel_tol, max_segments);
  }
  auto g = [&](double xi) -> T {
    const double om = 1.0 - xi;
    if (om <= 0.0) return T{};
    const double s = a + xi / om;
    return f(s) * (1.0 / (om * om));
  };
  return integrate<T>(g, 0.0, 1.0, abs_tol, rel_tol, max_segments);
}

// Gregory end-corrected trapezoid weights on n+1 equispaced points (unit
// spacing). Exact for cubics when n >= 5; smaller n falls back to Simpson or
// trapezoid.
std::vector<double> gregory_weights(int n);

// Moments m_j = int_{-1}^{1} s^j exp(i theta s) ds for j = 0..J.
void oscillatory_moments(double theta, int J, cplx* out);

// Degree-8 panel on [a, b] sampled at Chebyshev-Lobatto points; stores
// monomial coefficients of the interpolant in the local variable s in [-1, 1].
struct ChebPanel {
  static constexpr int N = 9;
  double a = 0.0, b = 0.0;
  std::array<cplx, N> mono{};
  double tail = 0.0;  // |c_7| + |c_8| of the Chebyshev expansion
};

// Lobatto nodes s_i = cos(pi i / 8), i = 0..8 on [-1, 1].
const std::array<double, ChebPanel::N>& lobatto_nodes();

ChebPanel make_panel(double a, double b, const std::array<cplx, ChebPanel::N>& vals);
cplx eval_panel(const ChebPanel& p, double x);
// int_a^b p(x) exp(i omega x) dx
cplx panel_fourier(const ChebPanel& p, double omega);

// Adaptive panel cover of [breaks.front(), breaks.back()] for a complex
// amplitude. A panel is split while tail * width exceeds abs_tol.
template <class F>
std::vector<ChebPanel> build_panels(F&& amp, const std::vector<double>& breaks, double abs_tol,
                                    int max_panels = 40000, double min_width = 1e-14) {
  const auto& s = lobatto_nodes();
  std::vector<ChebPanel> done;
  std::vector<std::pair<double, double>> todo;
  for (std::size_t i = breaks.size() - 1; i >= 1; --i)
    if (breaks[i] > breaks[i - 1]) todo.emplace_back(breaks[i - 1], breaks[i]);
  while (!todo.empty()) {
    auto [a, b] = todo.back();
    todo.pop_back();
    std::array<cplx, ChebPanel::N> v;
    const double m = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < ChebPanel::N; ++i) v[i] = amp(m + h * s[i]);
    ChebPanel p = make_panel(a, b, v);
    const bool small = (b - a) <= min_width * std::max(1.0, std::abs(m));
    if (p.tail * (b - a) > abs_tol && !small &&
        static_cast<int>(done.size() + todo.size()) < max_panels) {
      todo.emplace_back(m, b);
      todo.emplace_back(a, m);
      continue;
    }
    done.push_back(p);
  }
  return done;
}

inline cplx panels_fourier(const std::vector<ChebPanel>& ps, double omega) {
  cplx acc = 0.0;
  for (const auto& p : ps) acc += panel_fourier(p, omega);
  return acc;
}

}  // namespace vml
