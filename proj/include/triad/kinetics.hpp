#pragma once

/// Specific growth-rate laws and the break-even concentrations derived from
/// them.
///
/// Three kinds are supported. Monod `m s / (K + s)` and Linear `c s` are
/// increasing and concave, so they serve either as the acidogenic growth
/// law (class H1) or as the hydrolysis law (class H3). Haldane
/// `m s / (K + s + s^2 / KI)` rises to a single peak at `sqrt(K KI)` and
/// decays to zero, which is the substrate-inhibited class H2 used for the
/// methanogens.

#include <optional>
#include <string>
#include <utility>
#include <variant>

namespace triad {

enum class HypothesisClass { H1, H2, H3 };

std::string to_string(HypothesisClass h);

struct Monod {
    double m;  // maximal rate, 1/time
    double K;  // half-saturation, conc
};

struct Haldane {
    double m;
    double K;
    double KI;  // inhibition constant, conc
};

struct Linear {
    double c;  // 1/(time conc)
};

class GrowthCurve {
public:
    using Kind = std::variant<Monod, Haldane, Linear>;

    static GrowthCurve monod(double m, double K);
    static GrowthCurve haldane(double m, double K, double KI);
    static GrowthCurve linear(double c);

    /// mu(s). Throws DomainError for s < 0.
    double operator()(double s) const;
    /// Analytic mu'(s). Throws DomainError for s < 0.
    double derivative(double s) const;

    bool admits(HypothesisClass h) const;
    /// sup of mu over [0, inf); +inf for Linear.
    double supremum() const;
    /// Interior maximiser sqrt(K KI) for Haldane, empty otherwise.
    std::optional<double> peak_location() const;

    const Kind& kind() const { return kind_; }
    std::string kind_name() const;

    friend bool operator==(const GrowthCurve& a, const GrowthCurve& b);

private:
    explicit GrowthCurve(Kind k) : kind_(k) {}
    Kind kind_;
};

inline double eval(const GrowthCurve& curve, double s) { return curve(s); }
inline double eval_deriv(const GrowthCurve& curve, double s) { return curve.derivative(s); }

/// Ordered pair of solutions of mu2(S) = d2, low <= S2^m <= high.
struct BreakEvenPair {
    double low;
    double high;
};

/// Solution of mu1(S) = d1 for an H1 curve, empty when d1 >= sup mu1.
/// Closed form (Monod inversion, linear division).
std::optional<double> lambda1(const GrowthCurve& curve_h1, double d1);
/// Same quantity by bracketed bisection; works for any H1 curve.
std::optional<double> lambda1_bisect(const GrowthCurve& curve_h1, double d1);

/// Both solutions of mu2(S) = d2 for an H2 curve; empty when d2 exceeds the
/// peak value. When d2 equals the peak to relative 1e-10 the double root
/// (S2^m, S2^m) is returned. Closed form via the Haldane quadratic.
std::optional<BreakEvenPair> lambda2_pair(const GrowthCurve& curve_h2, double d2);
/// Same quantity by bisection on [0, S2^m] and [S2^m, inf).
std::optional<BreakEvenPair> lambda2_pair_bisect(const GrowthCurve& curve_h2, double d2);

/// H_i = lambda2^i + (k2/k1) lambda1, i = 1, 2.
std::optional<std::pair<double, double>> h_functions(std::optional<double> lambda1_value,
                                                     std::optional<BreakEvenPair> pair, double k1,
                                                     double k2);

/// Break-even concentrations for a given pair of removal rates, with the
/// achieved residuals |mu(lambda) - d|.
struct BreakEven {
    std::optional<double> lambda1;
    std::optional<BreakEvenPair> lambda2;
    double lambda1_residual = 0.0;
    double lambda2_residual = 0.0;
};

BreakEven break_even(const GrowthCurve& mu1, const GrowthCurve& mu2, double d1, double d2);

}  // namespace triad
