#include "triad/equilibria.hpp"

#include "triad/errors.hpp"
#include "triad/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace triad {

std::string EquilibriumLabel::str() const {
    std::string s = "E" + std::to_string(j) + std::to_string(i);
    if (k) s += "k" + std::to_string(*k);
    return s;
}

std::string to_string(BranchCase c) {
    switch (c) {
        case BranchCase::Lambda1Undefined: return "lambda1_undefined";
        case BranchCase::ShallowPersist: return "shallow_persist";
        case BranchCase::ShallowWashout: return "shallow_washout";
        case BranchCase::SteepAboveLambda: return "steep_above_lambda1";
        case BranchCase::SteepBistable: return "steep_bistable";
        case BranchCase::SteepWashout: return "steep_washout";
        case BranchCase::SteepTangent: return "steep_tangent";
    }
    return "?";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Relative residual a located root of xi = delta must meet.
constexpr double kRootResidualTol = 1e-8;
// Relative width of the S1in == S1bar tangency band.
constexpr double kTangentRelTol = 1e-12;

void finalize(EquilibriumRecord& r) {
    r.exists = std::all_of(r.existence_margins.begin(), r.existence_margins.end(),
                           [](const Margin& m) { return m.slack > 0.0; });
}

// Records for the X1 = 0 equilibria, shared by both hydrolysis modes.
void push_x1_washout(std::vector<EquilibriumRecord>& out, const ModelParams& p,
                     const RemovalRates& rr, const BreakEven& be, double x0, double s1) {
    EquilibriumRecord e00;
    e00.label = {0, 0, std::nullopt};
    e00.state = {x0, s1, 0.0, p.S2in, 0.0};
    finalize(e00);
    out.push_back(e00);

    for (int i = 1; i <= 2; ++i) {
        EquilibriumRecord r;
        r.label = {0, i, std::nullopt};
        if (be.lambda2) {
            const double l2 = i == 1 ? be.lambda2->low : be.lambda2->high;
            r.state = {x0, s1, 0.0, l2, p.D / (p.k3 * rr.D2) * (p.S2in - l2)};
            r.existence_margins.push_back({"S2in - lambda2_" + std::to_string(i), p.S2in - l2});
        } else {
            r.state = {x0, s1, 0.0, kNaN, kNaN};
            r.existence_margins.push_back({"mu2_peak - D2", p.mu2.supremum() - rr.D2});
        }
        finalize(r);
        out.push_back(r);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// First-order hydrolysis

double x0_star_firstorder(const ModelParams& p) {
    if (p.hydrolysis != Hydrolysis::FirstOrder) {
        throw ParameterError("x0_star_firstorder requires first-order hydrolysis");
    }
    return p.D * p.X0in / (p.k_hyd + p.alpha0 * p.D);
}

double s1in_star(const ModelParams& p) {
    if (p.hydrolysis != Hydrolysis::FirstOrder) {
        throw ParameterError("s1in_star requires first-order hydrolysis");
    }
    return p.S1in + p.k0 * p.k_hyd * p.X0in / (p.k_hyd + p.alpha0 * p.D);
}

std::vector<EquilibriumRecord> equilibria_firstorder(const ModelParams& p) {
    const auto rr = removal_rates(p);
    const auto be = break_even(p.mu1, p.mu2, rr.D1, rr.D2);
    const double x0 = x0_star_firstorder(p);
    const double s1_eff = s1in_star(p);

    std::vector<EquilibriumRecord> out;
    out.reserve(6);
    push_x1_washout(out, p, rr, be, x0, s1_eff);

    const double ratio = p.k2 / p.k1;
    // Total S2 available once S1 is drawn down to lambda1.
    const double s2_total = p.S2in + ratio * s1_eff;

    EquilibriumRecord e10;
    e10.label = {1, 0, std::nullopt};
    if (be.lambda1) {
        const double l1 = *be.lambda1;
        e10.state = {x0, l1, p.D / (p.k1 * rr.D1) * (s1_eff - l1), p.S2in + ratio * (s1_eff - l1),
                     0.0};
        e10.existence_margins.push_back({"S1in_star - lambda1", s1_eff - l1});
    } else {
        e10.state = {x0, kNaN, kNaN, kNaN, 0.0};
        e10.existence_margins.push_back({"mu1_sup - D1", p.mu1.supremum() - rr.D1});
    }
    finalize(e10);
    out.push_back(e10);

    const auto h = h_functions(be.lambda1, be.lambda2, p.k1, p.k2);
    for (int i = 1; i <= 2; ++i) {
        EquilibriumRecord r;
        r.label = {1, i, std::nullopt};
        r.existence_margins = e10.existence_margins;
        if (be.lambda1 && be.lambda2 && h) {
            const double l1 = *be.lambda1;
            const double l2 = i == 1 ? be.lambda2->low : be.lambda2->high;
            const double hi = i == 1 ? h->first : h->second;
            r.state = {x0, l1, e10.state[var::X1], l2, p.D / (p.k3 * rr.D2) * (s2_total - hi)};
            r.existence_margins.push_back(
                {"S2in + k2/k1 S1in_star - H_" + std::to_string(i), s2_total - hi});
        } else {
            r.state = {x0, e10.state[var::S1], e10.state[var::X1], kNaN, kNaN};
            if (!be.lambda2) {
                r.existence_margins.push_back({"mu2_peak - D2", p.mu2.supremum() - rr.D2});
            }
        }
        finalize(r);
        out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Biomass-dependent hydrolysis

namespace {

double x0_upper(const ModelParams& p) { return p.X0in / p.alpha0; }

void require_biomass(const ModelParams& p, const char* fn) {
    if (p.hydrolysis != Hydrolysis::BiomassDependent) {
        throw ParameterError(std::string(fn) + " requires biomass-dependent hydrolysis");
    }
}

void require_xi_domain(const ModelParams& p, double x0, const char* fn) {
    if (!(x0 > 0.0) || x0 > x0_upper(p)) {
        throw DomainError(std::string(fn) + ": x0 must lie in (0, X0in/alpha0]");
    }
}

}  // namespace

double xi(const ModelParams& p, double x0) {
    require_biomass(p, "xi");
    require_xi_domain(p, x0, "xi");
    return p.D * (p.X0in - p.alpha0 * x0) / (*p.mu0)(x0);
}

double xi_prime(const ModelParams& p, double x0) {
    require_biomass(p, "xi_prime");
    require_xi_domain(p, x0, "xi_prime");
    const double m0 = (*p.mu0)(x0);
    const double value = p.D * (p.X0in - p.alpha0 * x0) / m0;
    return -p.alpha0 * p.D / m0 - value / m0 * p.mu0->derivative(x0);
}

double delta_slope(const ModelParams& p) {
    const auto rr = removal_rates(p);
    return -p.alpha0 * p.D * p.k0 / (p.k1 * rr.D1);
}

std::optional<double> delta(const ModelParams& p, double x0) {
    require_biomass(p, "delta");
    const auto rr = removal_rates(p);
    const auto l1 = lambda1(p.mu1, rr.D1);
    if (!l1) return std::nullopt;
    return p.D / (p.k1 * rr.D1) * ((p.S1in - *l1) + p.k0 * (p.X0in - p.alpha0 * x0));
}

MultiplicityReport multiplicity(const ModelParams& p) {
    require_biomass(p, "multiplicity");
    const auto rr = removal_rates(p);
    MultiplicityReport rep;

    const auto l1 = lambda1(p.mu1, rr.D1);
    if (!l1) {
        rep.branch_case = BranchCase::Lambda1Undefined;
        return rep;
    }
    const double lam = *l1;
    const double upper = x0_upper(p);
    const double slope = delta_slope(p);
    const double coef = p.D / (p.k1 * rr.D1);

    auto delta_at = [&](double x) {
        return coef * ((p.S1in - lam) + p.k0 * (p.X0in - p.alpha0 * x));
    };
    auto phi = [&](double x) { return xi(p, x) - delta_at(x); };

    // phi -> +inf as X0 -> 0; start the bracket a hair inside the interval.
    double lo = 1e-12 * upper;
    while (phi(lo) <= 0.0) {
        lo *= 1e-3;
        if (lo < std::numeric_limits<double>::min()) {
            throw NumericError("multiplicity: xi - delta not positive near X0 = 0");
        }
    }

    auto solve = [&](double a, double b) {
        const RootResult r = bisect(phi, a, b, 0.0);
        const double scale = std::max(1.0, std::abs(xi(p, r.x)));
        if (!(r.residual <= kRootResidualTol * scale)) {
            std::ostringstream msg;
            msg << "multiplicity: root of xi = delta at X0 = " << r.x << " has residual "
                << r.residual << " after " << r.iterations << " iterations";
            throw NumericError(msg.str());
        }
        rep.max_root_residual = std::max(rep.max_root_residual, r.residual);
        rep.roots.push_back(r.x);
    };

    const bool steep = p.k0 * (*p.mu0)(upper) > p.k1 * rr.D1;
    if (!steep) {
        if (p.S1in > lam) {
            rep.branch_case = BranchCase::ShallowPersist;
            solve(lo, upper);
        } else {
            rep.branch_case = BranchCase::ShallowWashout;
        }
        rep.N = static_cast<int>(rep.roots.size());
        return rep;
    }

    // xi' increases from -inf to xi'(upper) > slope: one crossing.
    const double xbar = bisect([&](double x) { return xi_prime(p, x) - slope; }, lo, upper, 0.0).x;
    rep.xbar = xbar;
    rep.s1in_bar = lam + p.k1 * rr.D1 / p.D * xi(p, xbar) - p.k0 * (p.X0in - p.alpha0 * xbar);
    const double s1bar = *rep.s1in_bar;

    if (p.S1in >= lam) {
        // phi(upper) <= 0 and phi is increasing past xbar, so the single
        // crossing sits left of xbar.
        rep.branch_case = BranchCase::SteepAboveLambda;
        solve(lo, xbar);
    } else if (std::abs(p.S1in - s1bar) <= kTangentRelTol * std::max(1.0, std::abs(p.S1in))) {
        rep.branch_case = BranchCase::SteepTangent;
        rep.degenerate = true;
        rep.roots.push_back(xbar);
        rep.max_root_residual = std::abs(phi(xbar));
    } else if (p.S1in > s1bar) {
        rep.branch_case = BranchCase::SteepBistable;
        solve(lo, xbar);
        solve(xbar, upper);
    } else {
        rep.branch_case = BranchCase::SteepWashout;
    }
    rep.N = static_cast<int>(rep.roots.size());
    return rep;
}

std::vector<EquilibriumRecord> equilibria_biomass(const ModelParams& p) {
    require_biomass(p, "equilibria_biomass");
    const auto rr = removal_rates(p);
    const auto be = break_even(p.mu1, p.mu2, rr.D1, rr.D2);

    std::vector<EquilibriumRecord> out;
    push_x1_washout(out, p, rr, be, x0_upper(p), p.S1in);

    const auto rep = multiplicity(p);
    for (std::size_t idx = 0; idx < rep.roots.size(); ++idx) {
        const int k = static_cast<int>(idx) + 1;
        const double x0k = rep.roots[idx];
        const double x1k = xi(p, x0k);
        const double s2k = p.S2in + p.k2 * rr.D1 / p.D * x1k;

        EquilibriumRecord e10;
        e10.label = {1, 0, k};
        e10.state = {x0k, *be.lambda1, x1k, s2k, 0.0};
        e10.x1_aux = x1k;
        e10.s2_aux = s2k;
        finalize(e10);
        out.push_back(e10);

        for (int i = 1; i <= 2; ++i) {
            EquilibriumRecord r;
            r.label = {1, i, k};
            r.x1_aux = x1k;
            r.s2_aux = s2k;
            if (be.lambda2) {
                const double l2 = i == 1 ? be.lambda2->low : be.lambda2->high;
                r.state = {x0k, *be.lambda1, x1k, l2, p.D / (p.k3 * rr.D2) * (s2k - l2)};
                r.existence_margins.push_back({"S2k - lambda2_" + std::to_string(i), s2k - l2});
            } else {
                r.state = {x0k, *be.lambda1, x1k, kNaN, kNaN};
                r.existence_margins.push_back({"mu2_peak - D2", p.mu2.supremum() - rr.D2});
            }
            finalize(r);
            out.push_back(r);
        }
    }
    return out;
}

std::vector<EquilibriumRecord> equilibria(const ModelParams& p) {
    return p.hydrolysis == Hydrolysis::FirstOrder ? equilibria_firstorder(p)
                                                  : equilibria_biomass(p);
}

double residual_norm(const ModelParams& p, const State& x) {
    const State f = rhs(p, x);
    double n = 0.0;
    for (double v : f) n = std::max(n, std::abs(v));
    return n;
}

}  // namespace triad
