#include "granular/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace granular {
namespace {

double cubic(double a, double b, double c, double x) { return ((x + a) * x + b) * x + c; }

// Real root of x^3 + a x^2 + b x + c of largest magnitude.
double dominant_real_root(double a, double b, double c) {
  const double shift = a / 3.0;
  const double p = b - a * shift;
  const double q = 2.0 * shift * shift * shift - b * shift + c;
  const double disc = 0.25 * q * q + p * p * p / 27.0;

  double root = 0.0;
  if (disc > 0.0) {
    const double big = -std::copysign(std::cbrt(0.5 * std::abs(q) + std::sqrt(disc)), q);
    root = (big != 0.0 ? big - p / (3.0 * big) : 0.0) - shift;
  } else if (p == 0.0) {
    root = -shift;
  } else {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(1.5 * q / p * std::sqrt(-3.0 / p), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    root = r * std::cos(theta) - shift;
    for (int k = 1; k < 3; ++k) {
      const double t = r * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - shift;
      if (std::abs(t) > std::abs(root)) root = t;
    }
  }

  for (int it = 0; it < 4; ++it) {
    const double f = cubic(a, b, c, root);
    const double df = (3.0 * root + 2.0 * a) * root + b;
    if (f == 0.0 || df == 0.0) break;
    const double next = root - f / df;
    if (!(std::abs(cubic(a, b, c, next)) < std::abs(f))) break;
    root = next;
  }
  return root;
}

}  // namespace

std::array<double, 3> characteristic_coefficients(const Matrix3& m) noexcept {
  const double trace = m[0][0] + m[1][1] + m[2][2];
  const double minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] +
                        m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return {-trace, minors, -det};
}

std::array<std::complex<double>, 3> eigenvalues_3x3(const Matrix3& m) {
  double scale = 0.0;
  for (const auto& row : m) {
    for (double v : row) scale = std::max(scale, std::abs(v));
  }
  if (scale == 0.0) return {};

  Matrix3 n;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) n[i][j] = m[i][j] / scale;
  }
  const auto [a, b, c] = characteristic_coefficients(n);
  const double r = dominant_real_root(a, b, c);

  // (x - r)(x^2 + p x + q)
  const double p = a + r;
  const double q = r != 0.0 ? -c / r : b;
  std::array<std::complex<double>, 3> out;
  out[0] = r;
  const double half = -0.5 * p;
  const double disc = half * half - q;
  if (disc >= 0.0) {
    const double big = half + std::copysign(std::sqrt(disc), half);
    out[1] = big;
    out[2] = big != 0.0 ? q / big : 0.0;
  } else {
    const double im = std::sqrt(-disc);
    out[1] = {half, im};
    out[2] = {half, -im};
  }
  for (auto& z : out) z *= scale;
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.real() != y.real() ? x.real() > y.real() : x.imag() > y.imag();
  });
  return out;
}

}  // namespace granular
