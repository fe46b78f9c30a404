#include "triad/stability.hpp"

#include "triad/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace triad {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "stable";
        case Verdict::Unstable: return "unstable";
        case Verdict::Marginal: return "marginal";
    }
    return "?";
}

char verdict_code(Verdict v) {
    switch (v) {
        case Verdict::Stable: return 'S';
        case Verdict::Unstable: return 'U';
        case Verdict::Marginal: return 'M';
    }
    return '?';
}

Verdict verdict_from(const std::vector<Condition>& conditions) {
    bool marginal = false;
    for (const auto& c : conditions) {
        const double tol = kMarginalRelTol * std::max(c.scale, 1e-300);
        if (c.slack < -tol) return Verdict::Unstable;
        if (!(c.slack > tol)) marginal = true;
    }
    return marginal ? Verdict::Marginal : Verdict::Stable;
}

Verdict spectral_verdict(double max_real_part, double tol) {
    if (max_real_part < -tol) return Verdict::Stable;
    if (max_real_part > tol) return Verdict::Unstable;
    return Verdict::Marginal;
}

Matrix5 jacobian(const ModelParams& p, const State& x) {
    const auto rr = removal_rates(p);
    const double X0 = x[var::X0], S1 = x[var::S1], X1 = x[var::X1];
    const double S2 = x[var::S2], X2 = x[var::X2];
    const double g1 = p.mu1(S1), g1p = p.mu1.derivative(S1);
    const double g2 = p.mu2(S2), g2p = p.mu2.derivative(S2);

    // r0 partials: d r0/d X0 and d r0/d X1.
    double r0_x0 = 0.0, r0_x1 = 0.0;
    if (p.hydrolysis == Hydrolysis::FirstOrder) {
        r0_x0 = p.k_hyd;
    } else {
        r0_x0 = p.mu0->derivative(X0) * X1;
        r0_x1 = (*p.mu0)(X0);
    }

    Matrix5 J{};
    J[0][0] = -p.alpha0 * p.D - r0_x0;
    J[0][2] = -r0_x1;
    J[1][0] = p.k0 * r0_x0;
    J[1][1] = -p.D - p.k1 * g1p * X1;
    J[1][2] = p.k0 * r0_x1 - p.k1 * g1;
    J[2][1] = g1p * X1;
    J[2][2] = g1 - rr.D1;
    J[3][1] = p.k2 * g1p * X1;
    J[3][2] = p.k2 * g1;
    J[3][3] = -p.D - p.k3 * g2p * X2;
    J[3][4] = -p.k3 * g2;
    J[4][3] = g2p * X2;
    J[4][4] = g2 - rr.D2;
    return J;
}

Matrix4 jacobian_reduced(const ModelParams& p, const State& x) {
    if (p.hydrolysis != Hydrolysis::FirstOrder) {
        throw ParameterError("jacobian_reduced requires first-order hydrolysis");
    }
    const Matrix5 J = jacobian(p, x);
    Matrix4 R{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) R[r][c] = J[r + 1][c + 1];
    }
    return R;
}

RouthReport routh_at(const ModelParams& p, double x0k, double x1k) {
    if (p.hydrolysis != Hydrolysis::BiomassDependent) {
        throw ParameterError("routh_at requires biomass-dependent hydrolysis");
    }
    const auto rr = removal_rates(p);
    const auto l1 = lambda1(p.mu1, rr.D1);
    if (!l1) throw ParameterError("routh_at: lambda1 undefined");
    const double a0D = p.alpha0 * p.D;
    const double mu0 = (*p.mu0)(x0k);
    const double mu0p = p.mu0->derivative(x0k);
    const double mu1p = p.mu1.derivative(*l1);

    RouthReport r{};
    r.m11 = a0D + mu0p * x1k;
    r.m13 = mu0;
    r.m21 = p.k0 * mu0p * x1k;
    r.m22 = p.D + p.k1 * mu1p * x1k;
    r.m32 = mu1p * x1k;
    r.theta = p.k0 * mu0 - p.k1 * rr.D1;
    r.c1 = r.m11 + r.m22;
    r.c2 = r.m11 * r.m22 - r.theta * r.m32;
    r.c3 = r.m32 * (r.m21 * r.m13 - r.theta * r.m11);
    r.c4 = r.c1 * r.c2 - r.c3;
    const double P = p.D * r.m11 + p.k1 * rr.D1 * r.m32;
    r.c4_expanded = p.k1 * r.m11 * r.m32 * (a0D - rr.D1) + mu0p * x1k * r.c2 + a0D * P +
                    r.m22 * r.c2;
    const double scale = std::max({std::abs(r.c4), std::abs(r.c4_expanded), 1e-300});
    r.c4_rel_discrepancy = std::abs(r.c4 - r.c4_expanded) / scale;
    r.slope_slack = delta_slope(p) - xi_prime(p, x0k);
    return r;
}

RouthReport routh_report(const ModelParams& p, int k) {
    const auto rep = multiplicity(p);
    if (k < 1 || k > rep.N) {
        throw std::out_of_range("routh_report: branch k = " + std::to_string(k) +
                                " does not exist (N = " + std::to_string(rep.N) + ")");
    }
    const double x0k = rep.roots[static_cast<std::size_t>(k - 1)];
    return routh_at(p, x0k, xi(p, x0k));
}

namespace {

void require_exists(const EquilibriumRecord& rec) {
    if (!rec.exists) {
        throw DomainError("stability of non-existent equilibrium " + rec.label.str() +
                          " is undefined");
    }
}

double branch_value(const BreakEvenPair& pair, int i) { return i == 1 ? pair.low : pair.high; }

Condition mu2_slope_condition(const ModelParams& p, const RemovalRates& rr, int i) {
    const auto pair = lambda2_pair(p.mu2, rr.D2);
    const double l2 = branch_value(*pair, i);
    return {"mu2'(lambda2_" + std::to_string(i) + ")", p.mu2.derivative(l2),
            p.mu2.derivative(0.0)};
}

Condition removal_exceeds_growth(const std::string& name, double removal, double growth) {
    return {name, removal - growth, removal};
}

void fill_numeric(const ModelParams& p, const EquilibriumRecord& rec, StabilityVerdict& v) {
    const Matrix5 J = jacobian(p, rec.state);
    double jmax = 0.0;
    for (const auto& row : J)
        for (double e : row) jmax = std::max(jmax, std::abs(e));
    v.eigenvalues = eigenvalues_5x5(J);
    v.max_real_part = v.eigenvalues[0].real();
    v.spectral_tol = kMarginalRelTol * std::max(1.0, jmax);
    v.numeric = spectral_verdict(v.max_real_part, v.spectral_tol);
    v.analytic = verdict_from(v.conditions);
    if (!v.table_literal_conditions.empty()) v.table_literal = verdict_from(v.table_literal_conditions);
    v.agreement = v.analytic == v.numeric || v.analytic == Verdict::Marginal ||
                  v.numeric == Verdict::Marginal;
}

}  // namespace

StabilityVerdict classify_firstorder(const ModelParams& p, const EquilibriumRecord& rec) {
    require_exists(rec);
    const auto rr = removal_rates(p);
    const double s1_eff = s1in_star(p);
    StabilityVerdict v;
    const auto& lab = rec.label;

    if (lab.j == 0) {
        // (S1, X1) block is triangular with eigenvalue mu1(S1in*) - D1.
        v.conditions.push_back(removal_exceeds_growth("D1 - mu1(S1in_star)", rr.D1, p.mu1(s1_eff)));
        v.table_literal_conditions.push_back(
            removal_exceeds_growth("D1 - mu1(S1in)", rr.D1, p.mu1(p.S1in)));
        Condition methanogen = lab.i == 0 ? removal_exceeds_growth("D2 - mu2(S2in)", rr.D2,
                                                                   p.mu2(p.S2in))
                                          : mu2_slope_condition(p, rr, lab.i);
        v.conditions.push_back(methanogen);
        v.table_literal_conditions.push_back(methanogen);
    } else if (lab.i == 0) {
        v.conditions.push_back(
            removal_exceeds_growth("D2 - mu2(S2_E10)", rr.D2, p.mu2(rec.state[var::S2])));
    } else {
        v.conditions.push_back(mu2_slope_condition(p, rr, lab.i));
    }

    fill_numeric(p, rec, v);
    return v;
}

StabilityVerdict classify_biomass(const ModelParams& p, const EquilibriumRecord& rec) {
    require_exists(rec);
    const auto rr = removal_rates(p);
    StabilityVerdict v;
    const auto& lab = rec.label;

    if (lab.j == 0) {
        v.conditions.push_back(removal_exceeds_growth("D1 - mu1(S1in)", rr.D1, p.mu1(p.S1in)));
        v.conditions.push_back(lab.i == 0 ? removal_exceeds_growth("D2 - mu2(S2in)", rr.D2,
                                                                   p.mu2(p.S2in))
                                          : mu2_slope_condition(p, rr, lab.i));
    } else {
        const RouthReport r = routh_at(p, rec.state[var::X0], rec.state[var::X1]);
        v.routh = r;
        const Condition slope{"delta_slope - xi'(X0k)", r.slope_slack,
                              std::abs(delta_slope(p)) + std::abs(xi_prime(p, rec.state[var::X0]))};
        const Condition c4{"c4", r.c4, std::abs(r.c1 * r.c2) + std::abs(r.c3)};
        v.conditions = {slope, c4};
        if (lab.i == 0) {
            v.conditions.push_back(
                removal_exceeds_growth("D2 - mu2(S2k)", rr.D2, p.mu2(rec.state[var::S2])));
        } else {
            v.conditions.push_back(mu2_slope_condition(p, rr, lab.i));
            v.table_literal_conditions = {slope, c4};
        }
    }

    fill_numeric(p, rec, v);
    return v;
}

StabilityVerdict classify(const ModelParams& p, const EquilibriumRecord& rec) {
    return p.hydrolysis == Hydrolysis::FirstOrder ? classify_firstorder(p, rec)
                                                  : classify_biomass(p, rec);
}

}  // namespace triad
