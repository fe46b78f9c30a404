#include "triad/spectrum.hpp"

#include "triad/errors.hpp"
#include "triad/roots.hpp"

#include <algorithm>
#include <cmath>

namespace triad {

namespace {

using cplx = std::complex<double>;

bool by_real_desc(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
}

cplx cubic_value(double c1, double c2, double c3, cplx x) { return ((x + c1) * x + c2) * x + c3; }
cplx cubic_slope(double c1, double c2, cplx x) { return (3.0 * x + 2.0 * c1) * x + c2; }

cplx polish(double c1, double c2, double c3, cplx x) {
    for (int it = 0; it < 4; ++it) {
        const cplx d = cubic_slope(c1, c2, x);
        if (std::abs(d) == 0.0) break;
        const cplx next = x - cubic_value(c1, c2, c3, x) / d;
        if (!(std::abs(cubic_value(c1, c2, c3, next)) < std::abs(cubic_value(c1, c2, c3, x)))) break;
        x = next;
    }
    return x;
}

}  // namespace

std::array<cplx, 2> quadratic_roots(double b, double c) {
    const double disc = b * b - 4.0 * c;
    if (disc >= 0.0) {
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        if (q == 0.0) return {cplx(0.0), cplx(0.0)};
        return {cplx(q), cplx(c / q)};
    }
    const double re = -0.5 * b;
    const double im = 0.5 * std::sqrt(-disc);
    return {cplx(re, im), cplx(re, -im)};
}

double cubic_residual(double c1, double c2, double c3, cplx x) {
    return std::abs(cubic_value(c1, c2, c3, x));
}

std::array<cplx, 3> cubic_roots(double c1, double c2, double c3) {
    if (c3 == 0.0) {
        const auto q = quadratic_roots(c1, c2);
        return {cplx(0.0), q[0], q[1]};
    }
    // Cauchy bound: every root satisfies |x| < 1 + max |c_i|.
    const double bound = 1.0 + std::max({std::abs(c1), std::abs(c2), std::abs(c3)});
    auto p = [&](double x) { return ((x + c1) * x + c2) * x + c3; };
    double r = bisect(p, -bound, bound, 0.0, 2200).x;
    r = polish(c1, c2, c3, cplx(r)).real();

    const double b1 = c1 + r;
    // Deflate in the direction that keeps the division well conditioned.
    const double b0 = std::abs(r) > 1.0 ? -c3 / r : c2 + r * b1;
    const auto q = quadratic_roots(b1, b0);
    std::array<cplx, 3> out{cplx(r), q[0], q[1]};
    out[1] = polish(c1, c2, c3, out[1]);
    if (q[0].imag() != 0.0) {
        out[2] = std::conj(out[1]);  // real coefficients: exact conjugate pair
    } else {
        out[2] = polish(c1, c2, c3, out[2]);
    }
    return out;
}

Spectrum5 eigenvalues_5x5(const Matrix5& m) {
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 3; c < 5; ++c) {
            if (m[r][c] != 0.0) {
                throw StructuralError("eigenvalues_5x5: entry (" + std::to_string(r) + ", " +
                                      std::to_string(c) + ") breaks the block triangular form");
            }
        }
    }
    const auto [c1, c2, c3] = charpoly3(m);
    const auto top = cubic_roots(c1, c2, c3);
    const double tr = m[3][3] + m[4][4];
    const double det = m[3][3] * m[4][4] - m[3][4] * m[4][3];
    const auto bottom = quadratic_roots(-tr, det);

    Spectrum5 out{top[0], top[1], top[2], bottom[0], bottom[1]};
    std::sort(out.begin(), out.end(), by_real_desc);
    return out;
}

Spectrum4 eigenvalues_4x4(const Matrix4& m) {
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 2; c < 4; ++c) {
            if (m[r][c] != 0.0) {
                throw StructuralError("eigenvalues_4x4: upper-right block must vanish");
            }
        }
    }
    const auto a = quadratic_roots(-(m[0][0] + m[1][1]), m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    const auto b = quadratic_roots(-(m[2][2] + m[3][3]), m[2][2] * m[3][3] - m[2][3] * m[3][2]);
    Spectrum4 out{a[0], a[1], b[0], b[1]};
    std::sort(out.begin(), out.end(), by_real_desc);
    return out;
}

}  // namespace triad
