#include "vml/quadrature.hpp"

#include <map>
#include <mutex>
#include <numbers>

namespace vml {

const GaussRule& gauss_legendre(int n) {
  static std::mutex mtx;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  const double pi = std::numbers::pi;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        // one more pass for the derivative at the converged node
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = w;
    r.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return cache.emplace(n, std::move(r)).first->second;
}

std::vector<double> gregory_weights(int n) {
  std::vector<double> w(n + 1, 1.0);
  if (n <= 0) return std::vector<double>(1, 0.0);
  if (n < 5) {
    if (n % 2 == 0) {
      for (int i = 0; i <= n; ++i) w[i] = (i == 0 || i == n) ? 1.0 / 3 : (i % 2 ? 4.0 / 3 : 2.0 / 3);
    } else {
      w[0] = w[n] = 0.5;
    }
    return w;
  }
  const double c[3] = {3.0 / 8, 7.0 / 6, 23.0 / 24};
  for (int i = 0; i < 3; ++i) {
    w[i] = c[i];
    w[n - i] = c[i];
  }
  return w;
}

void oscillatory_moments(double theta, int J, cplx* out) {
  const cplx I(0.0, 1.0);
  const double at = std::abs(theta);
  if (at <= 8.0) {
    for (int j = 0; j <= J; ++j) out[j] = 0.0;
    cplx term = 1.0;  // (i theta)^n / n!
    for (int n = 0; n < 400; ++n) {
      double big = 0.0;
      for (int j = 0; j <= J; ++j) {
        if ((j + n) % 2 == 0) {
          const cplx add = term * (2.0 / (j + n + 1));
          out[j] += add;
          big = std::max(big, std::abs(add));
        }
      }
      if (n > at + 2 && big < 1e-18 && std::abs(term) < 1e-18) break;
      term *= I * theta / double(n + 1);
    }
    return;
  }
  const cplx ep = std::exp(I * theta), em = std::exp(-I * theta);
  const cplx it = I * theta;
  out[0] = 2.0 * std::sin(theta) / theta;
  for (int j = 1; j <= J; ++j) {
    const cplx edge = (j % 2 == 0) ? (ep - em) : (ep + em);
    out[j] = (edge - double(j) * out[j - 1]) / it;
  }
}

namespace {

struct PanelMatrices {
  std::array<double, ChebPanel::N> s{};
  Eigen::Matrix<double, ChebPanel::N, ChebPanel::N> to_cheb;  // values -> Chebyshev coeffs
  Eigen::Matrix<double, ChebPanel::N, ChebPanel::N> to_mono;  // values -> monomial coeffs
  PanelMatrices() {
    constexpr int N = ChebPanel::N, D = N - 1;
    const double pi = std::numbers::pi;
    for (int i = 0; i < N; ++i) s[i] = std::cos(pi * i / D);
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) {
        double f = (i == 0 || i == D) ? 0.5 : 1.0;
        double g = (j == 0 || j == D) ? 0.5 : 1.0;
        to_cheb(j, i) = 2.0 / D * f * g * std::cos(pi * i * j / D);
      }
    // T_j(s) = sum_m A(j, m) s^m
    Eigen::Matrix<double, N, N> A = Eigen::Matrix<double, N, N>::Zero();
    A(0, 0) = 1.0;
    A(1, 1) = 1.0;
    for (int j = 1; j + 1 < N; ++j)
      for (int m = 0; m < N; ++m) {
        A(j + 1, m) = -A(j - 1, m) + (m > 0 ? 2.0 * A(j, m - 1) : 0.0);
      }
    to_mono = A.transpose() * to_cheb;
  }
};

const PanelMatrices& panel_matrices() {
  static const PanelMatrices pm;
  return pm;
}

}  // namespace

const std::array<double, ChebPanel::N>& lobatto_nodes() { return panel_matrices().s; }

ChebPanel make_panel(double a, double b, const std::array<cplx, ChebPanel::N>& vals) {
  const auto& pm = panel_matrices();
  ChebPanel p;
  p.a = a;
  p.b = b;
  Eigen::Matrix<cplx, ChebPanel::N, 1> v;
  for (int i = 0; i < ChebPanel::N; ++i) v[i] = vals[i];
  const Eigen::Matrix<cplx, ChebPanel::N, 1> c = pm.to_cheb.cast<cplx>() * v;
  const Eigen::Matrix<cplx, ChebPanel::N, 1> m = pm.to_mono.cast<cplx>() * v;
  for (int i = 0; i < ChebPanel::N; ++i) p.mono[i] = m[i];
  p.tail = std::abs(c[ChebPanel::N - 2]) + std::abs(c[ChebPanel::N - 1]);
  return p;
}

cplx eval_panel(const ChebPanel& p, double x) {
  const double m = 0.5 * (p.a + p.b), h = 0.5 * (p.b - p.a);
  const double s = (x - m) / h;
  cplx acc = p.mono[ChebPanel::N - 1];
  for (int j = ChebPanel::N - 2; j >= 0; --j) acc = acc * s + p.mono[j];
  return acc;
}

cplx panel_fourier(const ChebPanel& p, double omega) {
  const double m = 0.5 * (p.a + p.b), h = 0.5 * (p.b - p.a);
  std::array<cplx, ChebPanel::N> mom;
  oscillatory_moments(omega * h, ChebPanel::N - 1, mom.data());
  cplx acc = 0.0;
  for (int j = 0; j < ChebPanel::N; ++j) acc += p.mono[j] * mom[j];
  return h * std::exp(cplx(0.0, omega * m)) * acc;
}

}  // namespace vml
