#include "triad/kinetics.hpp"

#include "triad/errors.hpp"
#include "triad/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace triad {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kPeakRelTol = 1e-10;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ParameterError(std::string("growth curve parameter ") + what +
                             " must be finite and > 0");
    }
}

void require_nonnegative_arg(double s) {
    if (!(s >= 0.0)) {
        throw DomainError("growth rate evaluated at negative concentration " + std::to_string(s));
    }
}

}  // namespace

std::string to_string(HypothesisClass h) {
    switch (h) {
        case HypothesisClass::H1: return "H1";
        case HypothesisClass::H2: return "H2";
        case HypothesisClass::H3: return "H3";
    }
    return "?";
}

GrowthCurve GrowthCurve::monod(double m, double K) {
    require_positive(m, "m");
    require_positive(K, "K");
    return GrowthCurve(Monod{m, K});
}

GrowthCurve GrowthCurve::haldane(double m, double K, double KI) {
    require_positive(m, "m");
    require_positive(K, "K");
    require_positive(KI, "KI");
    return GrowthCurve(Haldane{m, K, KI});
}

GrowthCurve GrowthCurve::linear(double c) {
    require_positive(c, "c");
    return GrowthCurve(Linear{c});
}

double GrowthCurve::operator()(double s) const {
    require_nonnegative_arg(s);
    if (s == 0.0) return 0.0;
    return std::visit(overloaded{
                          [s](const Monod& k) { return k.m * s / (k.K + s); },
                          [s](const Haldane& k) { return k.m * s / (k.K + s + s * s / k.KI); },
                          [s](const Linear& k) { return k.c * s; },
                      },
                      kind_);
}

double GrowthCurve::derivative(double s) const {
    require_nonnegative_arg(s);
    return std::visit(overloaded{
                          [s](const Monod& k) {
                              const double den = k.K + s;
                              return k.m * k.K / (den * den);
                          },
                          [s](const Haldane& k) {
                              const double den = k.K + s + s * s / k.KI;
                              return k.m * (k.K - s * s / k.KI) / (den * den);
                          },
                          [](const Linear& k) { return k.c; },
                      },
                      kind_);
}

bool GrowthCurve::admits(HypothesisClass h) const {
    const bool inhibited = std::holds_alternative<Haldane>(kind_);
    return h == HypothesisClass::H2 ? inhibited : !inhibited;
}

double GrowthCurve::supremum() const {
    return std::visit(overloaded{
                          [](const Monod& k) { return k.m; },
                          [](const Haldane& k) {
                              const double sm = std::sqrt(k.K * k.KI);
                              return k.m * sm / (2.0 * k.K + sm);
                          },
                          [](const Linear&) { return std::numeric_limits<double>::infinity(); },
                      },
                      kind_);
}

std::optional<double> GrowthCurve::peak_location() const {
    if (const auto* h = std::get_if<Haldane>(&kind_)) return std::sqrt(h->K * h->KI);
    return std::nullopt;
}

std::string GrowthCurve::kind_name() const {
    return std::visit(overloaded{
                          [](const Monod&) { return std::string("monod"); },
                          [](const Haldane&) { return std::string("haldane"); },
                          [](const Linear&) { return std::string("linear"); },
                      },
                      kind_);
}

bool operator==(const GrowthCurve& a, const GrowthCurve& b) {
    return std::visit(overloaded{
                          [](const Monod& x, const Monod& y) { return x.m == y.m && x.K == y.K; },
                          [](const Haldane& x, const Haldane& y) {
                              return x.m == y.m && x.K == y.K && x.KI == y.KI;
                          },
                          [](const Linear& x, const Linear& y) { return x.c == y.c; },
                          [](const auto&, const auto&) { return false; },
                      },
                      a.kind_, b.kind_);
}

// ---------------------------------------------------------------------------
// Break-even concentrations

namespace {

void require_class(const GrowthCurve& c, HypothesisClass h, const char* fn) {
    if (!c.admits(h)) {
        throw ClassError(std::string(fn) + ": " + c.kind_name() + " curve is not of class " +
                         to_string(h));
    }
}

void require_rate(double d, const char* fn) {
    if (!(d > 0.0)) throw DomainError(std::string(fn) + ": removal rate must be > 0");
}

}  // namespace

std::optional<double> lambda1(const GrowthCurve& curve, double d1) {
    require_class(curve, HypothesisClass::H1, "lambda1");
    require_rate(d1, "lambda1");
    if (d1 >= curve.supremum()) return std::nullopt;
    return std::visit(overloaded{
                          [d1](const Monod& k) { return k.K * d1 / (k.m - d1); },
                          [d1](const Linear& k) { return d1 / k.c; },
                          [](const Haldane&) { return std::numeric_limits<double>::quiet_NaN(); },
                      },
                      curve.kind());
}

std::optional<double> lambda1_bisect(const GrowthCurve& curve, double d1) {
    require_class(curve, HypothesisClass::H1, "lambda1_bisect");
    require_rate(d1, "lambda1_bisect");
    if (d1 >= curve.supremum()) return std::nullopt;
    auto f = [&](double s) { return curve(s) - d1; };
    double hi = 1.0;
    while (f(hi) <= 0.0) hi *= 2.0;
    return bisect(f, 0.0, hi).x;
}

std::optional<BreakEvenPair> lambda2_pair(const GrowthCurve& curve, double d2) {
    require_class(curve, HypothesisClass::H2, "lambda2_pair");
    require_rate(d2, "lambda2_pair");
    const auto& k = std::get<Haldane>(curve.kind());
    const double sm = std::sqrt(k.K * k.KI);
    const double peak = curve.supremum();
    if (std::abs(d2 - peak) <= kPeakRelTol * peak) return BreakEvenPair{sm, sm};
    if (d2 > peak) return std::nullopt;

    // d2 (K + S + S^2/KI) = m S  <=>  S^2 + KI (d2 - m)/d2 S + K KI = 0
    const double half_b = 0.5 * k.KI * (k.m - d2) / d2;  // -b/2 > 0
    const double disc = std::max(0.0, half_b * half_b - k.K * k.KI);
    const double high = half_b + std::sqrt(disc);
    const double low = k.K * k.KI / high;  // product of the roots
    return BreakEvenPair{low, high};
}

std::optional<BreakEvenPair> lambda2_pair_bisect(const GrowthCurve& curve, double d2) {
    require_class(curve, HypothesisClass::H2, "lambda2_pair_bisect");
    require_rate(d2, "lambda2_pair_bisect");
    const double sm = *curve.peak_location();
    const double peak = curve.supremum();
    if (std::abs(d2 - peak) <= kPeakRelTol * peak) return BreakEvenPair{sm, sm};
    if (d2 > peak) return std::nullopt;
    auto f = [&](double s) { return curve(s) - d2; };
    const double low = bisect(f, 0.0, sm).x;
    double hi = 2.0 * sm;
    while (f(hi) >= 0.0) hi *= 2.0;
    const double high = bisect(f, sm, hi).x;
    return BreakEvenPair{low, high};
}

std::optional<std::pair<double, double>> h_functions(std::optional<double> lambda1_value,
                                                     std::optional<BreakEvenPair> pair, double k1,
                                                     double k2) {
    if (!lambda1_value || !pair) return std::nullopt;
    const double shift = k2 / k1 * *lambda1_value;
    return std::pair{pair->low + shift, pair->high + shift};
}

BreakEven break_even(const GrowthCurve& mu1, const GrowthCurve& mu2, double d1, double d2) {
    BreakEven be;
    be.lambda1 = lambda1(mu1, d1);
    if (be.lambda1) be.lambda1_residual = std::abs(mu1(*be.lambda1) - d1);
    be.lambda2 = lambda2_pair(mu2, d2);
    if (be.lambda2) {
        be.lambda2_residual =
            std::max(std::abs(mu2(be.lambda2->low) - d2), std::abs(mu2(be.lambda2->high) - d2));
    }
    return be;
}

}  // namespace triad
