#pragma once

#include <array>
#include <complex>

namespace granular {

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Coefficients (c2, c1, c0) of det(lambda I - M) = lambda^3 + c2 lambda^2 + c1 lambda + c0.
std::array<double, 3> characteristic_coefficients(const Matrix3& m) noexcept;

/// Roots of the characteristic cubic, sorted by descending real part then imaginary part.
///
/// One real root comes from the closed-form (Cardano or trigonometric) solution and is
/// Newton-polished; the other two come from the deflated quadratic.
std::array<std::complex<double>, 3> eigenvalues_3x3(const Matrix3& m);

}  // namespace granular
