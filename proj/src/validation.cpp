#include "triad/validation.hpp"

#include "triad/equilibria.hpp"
#include "triad/io.hpp"
#include "triad/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace triad {

double log_uniform(Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

namespace {

GrowthCurve random_h1(Rng& rng) {
    if (std::bernoulli_distribution(0.5)(rng)) {
        const double m = log_uniform(rng, 1e-2, 1e1);
        return GrowthCurve::monod(m, log_uniform(rng, 1e-2, 1e1));
    }
    return GrowthCurve::linear(log_uniform(rng, 1e-2, 1e1));
}

double inf_norm(const State& x) {
    double n = 0.0;
    for (double c : x) n = std::max(n, std::abs(c));
    return n;
}

void check_draw(const ModelParams& p, ModeSummary& s) {
    for (const auto& e : equilibria(p)) {
        if (!e.exists) continue;
        ++s.existing;
        const double rel = residual_norm(p, e.state) / (1.0 + inf_norm(e.state));
        s.max_rel_residual = std::max(s.max_rel_residual, rel);

        const StabilityVerdict v = classify(p, e);
        if (v.routh) {
            s.max_c4_discrepancy = std::max(s.max_c4_discrepancy, v.routh->c4_rel_discrepancy);
            if ((v.routh->c3 > 0) != (v.routh->slope_slack > 0)) ++s.c3_sign_mismatches;
        }
        if (v.table_literal && *v.table_literal != v.analytic) ++s.table_literal_differs;

        double min_slack = std::numeric_limits<double>::infinity();
        for (const auto& c : v.conditions) min_slack = std::min(min_slack, std::abs(c.slack));
        if (min_slack <= kAgreementSlackMin || std::abs(v.max_real_part) <= kAgreementSpectralMin) {
            continue;
        }
        if (s.compared == 0 || min_slack < s.smallest_compared_slack) {
            s.smallest_compared_slack = min_slack;
        }
        ++s.compared;
        if (v.analytic == v.numeric) {
            ++s.agreements;
        } else {
            ++s.disagreements;
            if (!s.first_disagreement) {
                s.first_disagreement = p;
                s.first_disagreement_label = e.label.str();
            }
        }
    }
}

nlohmann::json mode_json(const ModeSummary& s) {
    nlohmann::json j = {{"draws", s.draws},
                        {"existing_equilibria", s.existing},
                        {"compared", s.compared},
                        {"agreements", s.agreements},
                        {"disagreements", s.disagreements},
                        {"table_literal_differs", s.table_literal_differs},
                        {"max_rel_residual", s.max_rel_residual},
                        {"max_c4_rel_discrepancy", s.max_c4_discrepancy},
                        {"c3_sign_mismatches", s.c3_sign_mismatches},
                        {"smallest_compared_slack", s.smallest_compared_slack}};
    if (s.first_disagreement) {
        j["first_disagreement"] = {{"label", s.first_disagreement_label},
                                   {"config", to_json(*s.first_disagreement)}};
    }
    return j;
}

}  // namespace

ModelParams random_params(Rng& rng, Hydrolysis mode) {
    ModelParams p;
    p.hydrolysis = mode;
    p.k0 = log_uniform(rng, 1e-2, 1.0);
    p.k2 = log_uniform(rng, 1e-2, 1e1);
    p.k1 = (1.0 + p.k2) * log_uniform(rng, 1.0, 1e1);
    p.k3 = log_uniform(rng, 1.0, 1e1);
    p.alpha0 = log_uniform(rng, 1e-2, 1.0);
    p.alpha1 = log_uniform(rng, 1e-2, 1.0);
    p.alpha2 = log_uniform(rng, 1e-2, 1.0);
    p.a1 = log_uniform(rng, 1e-2, 1e1);
    p.a2 = log_uniform(rng, 1e-2, 1e1);
    p.D = log_uniform(rng, 1e-2, 1e1);
    p.X0in = log_uniform(rng, 1e-2, 1e1);
    p.S1in = log_uniform(rng, 1e-2, 1e1);
    p.S2in = log_uniform(rng, 1e-2, 1e1);
    p.mu1 = random_h1(rng);
    {
        const double m = log_uniform(rng, 1e-2, 1e1);
        const double K = log_uniform(rng, 1e-2, 1e1);
        p.mu2 = GrowthCurve::haldane(m, K, log_uniform(rng, 1e-2, 1e1));
    }
    if (mode == Hydrolysis::FirstOrder) {
        p.k_hyd = log_uniform(rng, 1e-2, 1e1);
    } else {
        p.k_hyd = 0.0;
        p.mu0 = random_h1(rng);
    }
    p.validate();
    return p;
}

ValidationSummary run_validation(int draws, std::uint64_t seed) {
    ValidationSummary out;
    out.draws = draws;
    out.seed = seed;
    Rng rng(seed);
    for (int d = 0; d < draws; ++d) {
        const ModelParams fo = random_params(rng, Hydrolysis::FirstOrder);
        ++out.first_order.draws;
        check_draw(fo, out.first_order);
        const ModelParams bm = random_params(rng, Hydrolysis::BiomassDependent);
        ++out.biomass.draws;
        check_draw(bm, out.biomass);
    }
    return out;
}

nlohmann::json ValidationSummary::to_json() const {
    return {{"draws", draws},
            {"seed", seed},
            {"disagreements", disagreements()},
            {"first_order", mode_json(first_order)},
            {"biomass", mode_json(biomass)}};
}

}  // namespace triad
