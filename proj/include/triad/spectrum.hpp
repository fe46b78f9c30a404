#pragma once

// Eigenvalues of the small Jacobians that appear here. The 5x5 Jacobian of
// the chemostat is block lower triangular, (X0,S1,X1) do not depend on
// (S2,X2), so its spectrum is that of a 3x3 block (a cubic) joined with
// that of a 2x2 block (a quadratic).

#include <array>
#include <complex>

namespace triad {

using Matrix5 = std::array<std::array<double, 5>, 5>;
using Matrix4 = std::array<std::array<double, 4>, 4>;
using Spectrum5 = std::array<std::complex<double>, 5>;
using Spectrum4 = std::array<std::complex<double>, 4>;

/// Roots of x^2 + b x + c.
std::array<std::complex<double>, 2> quadratic_roots(double b, double c);

/// Roots of x^3 + c1 x^2 + c2 x + c3. One real root is bracketed and
/// bisected, the remaining quadratic is deflated out, then every root is
/// Newton-polished on the full cubic.
std::array<std::complex<double>, 3> cubic_roots(double c1, double c2, double c3);

/// |x^3 + c1 x^2 + c2 x + c3|.
double cubic_residual(double c1, double c2, double c3, std::complex<double> x);

/// True iff every root of x^3 + c1 x^2 + c2 x + c3 has negative real part.
inline bool routh_hurwitz_cubic(double c1, double c2, double c3) {
    return c1 > 0.0 && c3 > 0.0 && c1 * c2 - c3 > 0.0;
}

/// Monic characteristic coefficients (c1, c2, c3) of a 3x3 block stored in
/// the top-left corner of m.
template <class M>
std::array<double, 3> charpoly3(const M& m) {
    const double tr = m[0][0] + m[1][1] + m[2][2];
    const double minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] -
                          m[0][2] * m[2][0] + m[1][1] * m[2][2] - m[1][2] * m[2][1];
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return {-tr, minors, -det};
}

/// Spectrum of a 5x5 matrix whose rows 0-2 vanish in columns 3-4, sorted by
/// real part descending. Throws StructuralError when that block is nonzero.
Spectrum5 eigenvalues_5x5(const Matrix5& m);

/// Spectrum of a 4x4 matrix whose rows 0-1 vanish in columns 2-3.
Spectrum4 eigenvalues_4x4(const Matrix4& m);

}  // namespace triad
