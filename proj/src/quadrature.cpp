#include <darboux/quadrature.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace darboux {

std::vector<double> cumulativeIntegral(std::span<const double> f, const Grid& g) {
  const int n = g.size();
  if (static_cast<int>(f.size()) != n) fail(ErrorKind::domain, "integrand size does not match grid");
  for (double v : f)
    if (!std::isfinite(v)) fail(ErrorKind::non_finite, "non-finite integrand sample");

  const double h = g.step();
  std::vector<double> F(n, 0.0);
  for (int k = 0; k + 2 < n; k += 2) {
    F[k + 1] = F[k] + h * (5.0 * f[k] + 8.0 * f[k + 1] - f[k + 2]) / 12.0;
    F[k + 2] = F[k] + h * (f[k] + 4.0 * f[k + 1] + f[k + 2]) / 3.0;
  }
  return F;
}

std::vector<double> differentiate5(std::span<const double> y, double h) {
  const int n = static_cast<int>(y.size());
  std::vector<double> d(n);
  for (int k = 0; k < n; ++k) {
    if (k >= 2 && k + 2 < n) {
      d[k] = (y[k - 2] - 8.0 * y[k - 1] + 8.0 * y[k + 1] - y[k + 2]) / (12.0 * h);
    } else if (k < 2) {
      // forward stencils on y[0..4]
      const double* p = &y[0];
      if (k == 0)
        d[k] = (-25.0 * p[0] + 48.0 * p[1] - 36.0 * p[2] + 16.0 * p[3] - 3.0 * p[4]) / (12.0 * h);
      else
        d[k] = (-3.0 * p[0] - 10.0 * p[1] + 18.0 * p[2] - 6.0 * p[3] + p[4]) / (12.0 * h);
    } else {
      const double* p = &y[n - 5];
      if (k == n - 1)
        d[k] = (3.0 * p[0] - 16.0 * p[1] + 36.0 * p[2] - 48.0 * p[3] + 25.0 * p[4]) / (12.0 * h);
      else
        d[k] = (-p[0] + 6.0 * p[1] - 18.0 * p[2] + 10.0 * p[3] + 3.0 * p[4]) / (12.0 * h);
    }
  }
  return d;
}

namespace {

// Fornberg weights for derivatives 0..3 at 0 on the nodes -half..half.
std::array<std::vector<double>, 4> fornberg(int half) {
  const int n = 2 * half + 1;
  std::vector<std::array<std::vector<double>, 4>> c(n);
  for (auto& row : c)
    for (auto& v : row) v.assign(n, 0.0);
  auto x = [&](int i) { return static_cast<double>(i - half); };
  c[0][0][0] = 1.0;
  double c1 = 1.0;
  for (int i = 1; i < n; ++i) {
    double c2 = 1.0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x(i) - x(j);
      c2 *= c3;
      for (int m = std::min(i, 3); m >= 0; --m) {
        if (j == i - 1) {
          const double prev = m > 0 ? m * c[i - 1][m - 1][j] : 0.0;
          c[i][m][i] = c1 * (prev - x(i - 1) * c[i - 1][m][i - 1]) / c2;
        }
        c[i][m][j] = (x(i) * c[i - 1][m][j] - (m > 0 ? m * c[i - 1][m - 1][j] : 0.0)) / c3;
      }
    }
    c1 = c2;
  }
  return c[n - 1];
}

}  // namespace

CentralDerivatives centralStencil(std::span<const double> y, int k, double h, int half) {
  static thread_local std::vector<std::array<std::vector<double>, 4>> cache;
  if (static_cast<int>(cache.size()) <= half) cache.resize(half + 1);
  if (cache[half][0].empty()) cache[half] = fornberg(half);
  const auto& w = cache[half];
  double a1 = 0, a2 = 0, a3 = 0;
  for (int i = 0; i <= 2 * half; ++i) {
    const double v = y[k - half + i];
    a1 += w[1][i] * v;
    a2 += w[2][i] * v;
    a3 += w[3][i] * v;
  }
  return {a1 / h, a2 / (h * h), a3 / (h * h * h)};
}

}  // namespace darboux
