#include "triad/model.hpp"

#include "triad/errors.hpp"

#include <algorithm>
#include <cmath>

namespace triad {

std::string to_string(Hydrolysis h) {
    return h == Hydrolysis::FirstOrder ? "first_order" : "biomass";
}

namespace {

void check(bool ok, const std::string& msg) {
    if (!ok) throw ParameterError(msg);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void ModelParams::validate() const {
    check(std::isfinite(k0) && k0 >= 0.0 && k0 <= 1.0, "k0 must lie in [0, 1]");
    check(finite_nonneg(k2), "k2 must be >= 0");
    check(std::isfinite(k1) && k1 >= 1.0 + k2, "k1 must satisfy k1 >= 1 + k2");
    check(std::isfinite(k3) && k3 >= 1.0, "k3 must be >= 1");
    check(std::isfinite(D) && D > 0.0, "D must be > 0");
    check(finite_nonneg(X0in), "X0in must be >= 0");
    check(finite_nonneg(S1in), "S1in must be >= 0");
    check(finite_nonneg(S2in), "S2in must be >= 0");
    check(std::isfinite(alpha0) && alpha0 > 0.0 && alpha0 <= 1.0, "alpha0 must lie in (0, 1]");
    check(std::isfinite(alpha1) && alpha1 >= 0.0 && alpha1 <= 1.0, "alpha1 must lie in [0, 1]");
    check(std::isfinite(alpha2) && alpha2 >= 0.0 && alpha2 <= 1.0, "alpha2 must lie in [0, 1]");
    check(finite_nonneg(a1), "a1 must be >= 0");
    check(finite_nonneg(a2), "a2 must be >= 0");
    check(mu1.admits(HypothesisClass::H1), "mu1 must be of class H1 (monod or linear)");
    check(mu2.admits(HypothesisClass::H2), "mu2 must be of class H2 (haldane)");

    if (hydrolysis == Hydrolysis::FirstOrder) {
        check(finite_nonneg(k_hyd), "k_hyd must be >= 0");
        check(!mu0.has_value(), "mu0 is not used with first-order hydrolysis");
    } else {
        check(k_hyd == 0.0, "k_hyd is not used with biomass-dependent hydrolysis");
        check(mu0.has_value(), "mu0 is required with biomass-dependent hydrolysis");
        check(mu0->admits(HypothesisClass::H3), "mu0 must be of class H3 (monod or linear)");
        check(X0in > 0.0, "X0in must be > 0 with biomass-dependent hydrolysis");
    }

    const double d1 = alpha1 * D + a1;
    const double d2 = alpha2 * D + a2;
    check(std::min({alpha0 * D, d1, d2}) > 0.0, "Dmin = min(alpha0 D, D1, D2) must be > 0");
}

RemovalRates removal_rates(const ModelParams& p) {
    RemovalRates r;
    r.D1 = p.alpha1 * p.D + p.a1;
    r.D2 = p.alpha2 * p.D + p.a2;
    r.Dmin = std::min({p.alpha0 * p.D, r.D1, r.D2});
    if (!(r.Dmin > 0.0)) throw ParameterError("Dmin = min(alpha0 D, D1, D2) must be > 0");
    return r;
}

double hydrolysis_rate(const ModelParams& p, double x0, double x1) {
    if (p.hydrolysis == Hydrolysis::FirstOrder) return p.k_hyd * x0;
    return (*p.mu0)(x0) * x1;
}

namespace {

State field(const ModelParams& p, const State& x, double x0, double s1, double s2) {
    const double d1 = p.alpha1 * p.D + p.a1;
    const double d2 = p.alpha2 * p.D + p.a2;
    const double r0 = hydrolysis_rate(p, x0, x[var::X1]);
    const double g1 = p.mu1(s1);
    const double g2 = p.mu2(s2);
    const double X1 = x[var::X1];
    const double X2 = x[var::X2];
    return {
        p.D * p.X0in - p.alpha0 * p.D * x[var::X0] - r0,
        p.D * (p.S1in - x[var::S1]) + p.k0 * r0 - p.k1 * g1 * X1,
        (g1 - d1) * X1,
        p.D * (p.S2in - x[var::S2]) + p.k2 * g1 * X1 - p.k3 * g2 * X2,
        (g2 - d2) * X2,
    };
}

}  // namespace

State rhs(const ModelParams& p, const State& x) {
    for (double c : x) {
        if (!(c >= 0.0)) throw DomainError("rhs: state has a negative component");
    }
    return field(p, x, x[var::X0], x[var::S1], x[var::S2]);
}

State rhs_extended(const ModelParams& p, const State& x) {
    return field(p, x, std::max(x[var::X0], 0.0), std::max(x[var::S1], 0.0),
                 std::max(x[var::S2], 0.0));
}

double total_mass(const ModelParams& p, const State& x) {
    return p.k0 * x[var::X0] + x[var::S1] + x[var::S2] + (p.k1 - p.k2) * x[var::X1] +
           p.k3 * x[var::X2];
}

double input_mass(const ModelParams& p) { return p.k0 * p.X0in + p.S1in + p.S2in; }

double total_mass_rate(const ModelParams& p, const State& x) {
    const auto r = removal_rates(p);
    return p.D * input_mass(p) - p.alpha0 * p.D * p.k0 * x[var::X0] - p.D * x[var::S1] -
           r.D1 * (p.k1 - p.k2) * x[var::X1] - p.D * x[var::S2] - r.D2 * p.k3 * x[var::X2];
}

double omega_bound(const ModelParams& p) {
    return p.D / removal_rates(p).Dmin * input_mass(p);
}

double gronwall_envelope(const ModelParams& p, double z0, double t) {
    const double dmin = removal_rates(p).Dmin;
    const double bound = omega_bound(p);
    return bound + (z0 - bound) * std::exp(-dmin * t);
}

}  // namespace triad
