#pragma once

// Independent reference computations used by the tests. None of these call into the
// library's numerical kernels.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

// Composite 5-point Gauss-Legendre on [a, b] with n panels.
inline double integrate(const std::function<double(double)>& f, double a, double b, int n = 400) {
  static constexpr std::array<double, 5> x{0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                           0.9061798459386640};
  static constexpr std::array<double, 5> w{0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                           0.2369268850561891, 0.2369268850561891};
  const double step = (b - a) / n;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double mid = a + (k + 0.5) * step;
    for (std::size_t j = 0; j < 5; ++j) sum += w[j] * f(mid + 0.5 * step * x[j]);
  }
  return 0.5 * step * sum;
}

// Hat P_i on a uniform partition, written from its definition (0-based i).
inline double hat(double a, double h, int m, int i, double u) {
  const double centre = a + h * i;
  const double d = std::abs(u - centre) / h;
  if (d >= 1.0) return 0.0;
  if ((i == 0 && u < centre) || (i == m - 1 && u > centre)) return 0.0;
  return 1.0 - d;
}

// Continuous F-transform component by high-order quadrature over the support of P_i.
inline double component(const std::function<double(double)>& g, double a, double b, int m, int i) {
  const double h = (b - a) / (m - 1);
  const double lo = std::max(a, a + h * (i - 1));
  const double hi = std::min(b, a + h * (i + 1));
  const double centre = a + h * i;
  auto num = [&](double u) { return g(u) * hat(a, h, m, i, u); };
  auto den = [&](double u) { return hat(a, h, m, i, u); };
  // Split at the peak so each panel sees a smooth integrand.
  double n = 0.0, d = 0.0;
  if (lo < centre) {
    n += integrate(num, lo, centre);
    d += integrate(den, lo, centre);
  }
  if (centre < hi) {
    n += integrate(num, centre, hi);
    d += integrate(den, centre, hi);
  }
  return n / d;
}

// max |x - y| over all x in row a, y in row b for each alpha row, by enumeration.
inline double brute_metric(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
  double d = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (double x : a[r]) {
      for (double y : b[r]) d = std::max(d, std::abs(x - y));
    }
  }
  return d;
}

// Bisection root of a continuous f with a sign change on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iterations = 200) {
  double flo = f(lo);
  for (int k = 0; k < iterations; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

using Matrix = std::vector<std::vector<double>>;

// D' = (1/2h) B, where B has rows e_1, e_2 and then (-1, 0, 1) bands: row i reads X_i - X_{i-2}.
inline Matrix leapfrog_matrix(int m, double h) {
  Matrix d(m, std::vector<double>(m, 0.0));
  const double s = 1.0 / (2.0 * h);
  d[0][0] = s;
  if (m > 1) d[1][1] = s;
  for (int i = 2; i < m; ++i) {
    d[i][i - 2] = -s;
    d[i][i] = s;
  }
  return d;
}

// Printed inverse: 2h times the lower-triangular matrix with ones where i - j is even.
inline Matrix leapfrog_inverse(int m, double h) {
  Matrix l(m, std::vector<double>(m, 0.0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) l[i][j] = ((i - j) % 2 == 0) ? 2.0 * h : 0.0;
  }
  return l;
}

inline std::vector<double> multiply(const Matrix& a, const std::vector<double>& x) {
  std::vector<double> y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  }
  return y;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  Matrix c(a.size(), std::vector<double>(b.front().size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      for (std::size_t j = 0; j < b.front().size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

}  // namespace oracle
