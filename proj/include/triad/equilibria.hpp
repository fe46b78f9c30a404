#pragma once

/// Steady states of the three-stage chemostat.
///
/// Labels follow the E_j^i convention: j = 0/1 for washout/persistence of
/// the acidogens X1, i = 0 for washout of the methanogens X2 and i = 1, 2
/// for the low/high break-even branch of X2. With biomass-dependent
/// hydrolysis the X1-persistent equilibria additionally carry the index k of
/// the root X0^k of xi(X0) = delta(X0).
///
/// Non-existence is data, not an error: every candidate is returned with
/// its existence margins, and `exists` is true iff all margins are positive.

#include "triad/kinetics.hpp"
#include "triad/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace triad {

struct EquilibriumLabel {
    int j = 0;
    int i = 0;
    std::optional<int> k;

    /// "E00", "E12", "E10k1", ...
    std::string str() const;

    friend auto operator<=>(const EquilibriumLabel&, const EquilibriumLabel&) = default;
};

/// A named inequality "slack > 0".
struct Margin {
    std::string name;
    double slack;
};

struct EquilibriumRecord {
    EquilibriumLabel label;
    State state{};
    bool exists = false;
    std::vector<Margin> existence_margins;
    std::optional<double> x1_aux;  // X1^{k*}
    std::optional<double> s2_aux;  // S2^{k*}
};

/// Which line of the multiplicity case table applied.
enum class BranchCase {
    Lambda1Undefined,  // D1 >= sup mu1: no X1 > 0 equilibrium at all
    ShallowPersist,    // k0 mu0(X0in/alpha0) <= k1 D1 and S1in > lambda1: N = 1
    ShallowWashout,    // k0 mu0(X0in/alpha0) <= k1 D1 and S1in <= lambda1: N = 0
    SteepAboveLambda,  // k0 mu0(X0in/alpha0) > k1 D1 and S1in >= lambda1: N = 1
    SteepBistable,     // ... and S1bar < S1in < lambda1: N = 2
    SteepWashout,      // ... and S1in < S1bar: N = 0
    SteepTangent,      // ... and S1in == S1bar: N = 1, degenerate
};

std::string to_string(BranchCase c);

struct MultiplicityReport {
    int N = 0;
    std::vector<double> roots;  // X0^k, ascending
    std::optional<double> xbar;      // X0 where xi' equals the slope of delta
    std::optional<double> s1in_bar;  // S1in threshold for two roots
    BranchCase branch_case = BranchCase::Lambda1Undefined;
    bool degenerate = false;
    double max_root_residual = 0.0;  // max |xi - delta| over roots
};

// --- first-order hydrolysis ------------------------------------------------

/// Limit of X0: D X0in / (k_hyd + alpha0 D).
double x0_star_firstorder(const ModelParams& p);
/// Effective S1 input: S1in + k0 k_hyd X0in / (k_hyd + alpha0 D).
double s1in_star(const ModelParams& p);

/// E00, E01, E02, E10, E11, E12 in that order.
std::vector<EquilibriumRecord> equilibria_firstorder(const ModelParams& p);

// --- biomass-dependent hydrolysis ------------------------------------------

/// xi(X0) = D (X0in - alpha0 X0) / mu0(X0), the X1 value balancing the X0
/// equation. Defined for 0 < x0 <= X0in/alpha0.
double xi(const ModelParams& p, double x0);
double xi_prime(const ModelParams& p, double x0);
/// delta(X0) = D/(k1 D1) [(S1in - lambda1) + k0 (X0in - alpha0 X0)], the X1
/// value balancing the S1 equation. Empty when lambda1 is undefined.
std::optional<double> delta(const ModelParams& p, double x0);
/// Slope of delta: -alpha0 D k0 / (k1 D1).
double delta_slope(const ModelParams& p);

/// Number and location of the solutions of xi = delta on (0, X0in/alpha0).
/// Throws NumericError when a located root misses its residual tolerance.
MultiplicityReport multiplicity(const ModelParams& p);

/// E00, E01, E02, then E10k, E11k, E12k for k = 1..N.
std::vector<EquilibriumRecord> equilibria_biomass(const ModelParams& p);

/// Dispatch on p.hydrolysis.
std::vector<EquilibriumRecord> equilibria(const ModelParams& p);

/// ||rhs(p, state)||_inf.
double residual_norm(const ModelParams& p, const State& x);

}  // namespace triad
