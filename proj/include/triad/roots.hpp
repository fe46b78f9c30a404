#pragma once

#include <cmath>
#include <functional>

namespace triad {

struct RootResult {
    double x = 0.0;
    double residual = 0.0;  // |f(x)|
    int iterations = 0;
    bool converged = false;
};

// Root-solve defaults: absolute 1e-12 on the bracket width or 200 halvings,
// whichever comes first.
inline constexpr double kRootXTol = 1e-12;
inline constexpr int kRootMaxIter = 200;

// Bisection on [lo, hi]; f(lo) and f(hi) must have opposite signs (or one
// of them be zero). Stops when the bracket is narrower than xtol, when the
// midpoint is no longer representable between the ends, or after max_iter.
// Passing xtol = 0 refines down to adjacent doubles.
RootResult bisect(const std::function<double(double)>& f, double lo, double hi,
                  double xtol = kRootXTol, int max_iter = kRootMaxIter);

}  // namespace triad
