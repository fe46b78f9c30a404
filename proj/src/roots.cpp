#include "triad/roots.hpp"

#include "triad/errors.hpp"

#include <string>

namespace triad {

RootResult bisect(const std::function<double(double)>& f, double lo, double hi, double xtol,
                  int max_iter) {
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo == 0.0) return {lo, 0.0, 0, true};
    if (f_hi == 0.0) return {hi, 0.0, 0, true};
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw NumericError("bisect: root not bracketed on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    }

    RootResult out;
    for (out.iterations = 0; out.iterations < max_iter; ++out.iterations) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi || hi - lo <= xtol) {
            out.converged = true;
            break;
        }
        const double f_mid = f(mid);
        if (f_mid == 0.0) {
            return {mid, 0.0, out.iterations + 1, true};
        }
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    if (std::abs(f_lo) <= std::abs(f_hi)) {
        out.x = lo;
        out.residual = std::abs(f_lo);
    } else {
        out.x = hi;
        out.residual = std::abs(f_hi);
    }
    return out;
}

}  // namespace triad
