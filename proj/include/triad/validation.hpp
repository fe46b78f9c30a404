#pragma once

// Randomized parameter draws and the analytic-vs-numeric cross-check that
// `triad validate` runs.
//
// Generator contract: std::mt19937_64 seeded with the user seed; every
// positive field is drawn log-uniformly. Results are reproducible for a
// given seed within one build.

#include "triad/model.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>

namespace triad {

using Rng = std::mt19937_64;

double log_uniform(Rng& rng, double lo, double hi);

/// A valid parameter set. Rates, inflows and kinetic constants are drawn
/// log-uniformly on [1e-2, 1e1]; alpha0..alpha2 and k0 on [1e-2, 1];
/// k1 = (1 + k2) u with u on [1, 10]; k3 on [1, 10]. mu1 and mu0 are Monod
/// or Linear with equal probability, mu2 is Haldane.
ModelParams random_params(Rng& rng, Hydrolysis mode);

/// Thresholds for counting an equilibrium as non-marginal.
inline constexpr double kAgreementSlackMin = 1e-6;
inline constexpr double kAgreementSpectralMin = 1e-6;

struct ModeSummary {
    int draws = 0;
    int existing = 0;          // existing equilibria examined
    int compared = 0;          // of which outside the marginal regime
    int agreements = 0;
    int disagreements = 0;
    int table_literal_differs = 0;  // diagnostic only
    double max_rel_residual = 0.0;  // ||rhs|| / (1 + ||state||)
    double max_c4_discrepancy = 0.0;
    int c3_sign_mismatches = 0;
    double smallest_compared_slack = 0.0;
    std::optional<ModelParams> first_disagreement;
    std::string first_disagreement_label;
};

struct ValidationSummary {
    int draws = 0;
    std::uint64_t seed = 0;
    ModeSummary first_order;
    ModeSummary biomass;

    int disagreements() const { return first_order.disagreements + biomass.disagreements; }
    nlohmann::json to_json() const;
};

/// `draws` random parameter sets per hydrolysis mode.
ValidationSummary run_validation(int draws, std::uint64_t seed);

}  // namespace triad
