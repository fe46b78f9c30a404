#pragma once

/// Local stability of the equilibria.
///
/// Every classification carries two independent verdicts. The analytic one
/// comes from closed-form sign conditions (break-even ordering, slope of xi
/// against delta, the Routh-Hurwitz quantity c4, sign of mu2' on the
/// methanogen branch). The numeric one comes from the eigenvalues of the
/// analytic 5x5 Jacobian. Conditions are stored as signed slacks, positive
/// meaning "satisfied"; a slack within 1e-9 of its scale is Marginal.

#include "triad/equilibria.hpp"
#include "triad/model.hpp"
#include "triad/spectrum.hpp"

#include <optional>
#include <string>
#include <vector>

namespace triad {

enum class Verdict { Stable, Unstable, Marginal };

std::string to_string(Verdict v);
/// "S", "U", "M".
char verdict_code(Verdict v);

inline constexpr double kMarginalRelTol = 1e-9;

struct Condition {
    std::string name;
    double slack;
    double scale;  // magnitude the slack is compared against
};

/// Stable iff every slack is clearly positive, Unstable as soon as one is
/// clearly negative, Marginal otherwise.
Verdict verdict_from(const std::vector<Condition>& conditions);

/// Coefficients of the characteristic polynomial of the (X0, S1, X1) block
/// at an X1-persistent equilibrium of the biomass-dependent model:
///
///     J_F = [ -m11    0    -m13 ]
///           [  m21  -m22  theta ]
///           [   0    m32    0   ]
struct RouthReport {
    double m11, m13, m21, m22, m32;
    double theta;
    double c1, c2, c3;
    double c4;           // c1 c2 - c3
    double c4_expanded;  // k1 m11 m32 (alpha0 D - D1) + mu0' X1 c2 + alpha0 D P + m22 c2
    double c4_rel_discrepancy;
    double slope_slack;  // delta_slope - xi'(X0^k)
};

/// Routh data at X1-persistent equilibrium (x0k, lambda1, x1k).
RouthReport routh_at(const ModelParams& p, double x0k, double x1k);
/// Routh data for branch k (1-based) of multiplicity(p). Throws
/// std::out_of_range when the branch does not exist.
RouthReport routh_report(const ModelParams& p, int k);

struct StabilityVerdict {
    Verdict analytic = Verdict::Marginal;
    Verdict numeric = Verdict::Marginal;
    Spectrum5 eigenvalues{};
    double max_real_part = 0.0;
    double spectral_tol = 0.0;
    std::vector<Condition> conditions;
    /// Condition-table reading where it differs
    /// from the Jacobian-derived one (E00/E0i with first-order hydrolysis:
    /// S1in instead of S1in*; E12k with biomass hydrolysis: no i = 1 test).
    std::optional<Verdict> table_literal;
    std::vector<Condition> table_literal_conditions;
    std::optional<RouthReport> routh;
    bool agreement = true;
};

/// Analytic Jacobian of the 5D vector field.
Matrix5 jacobian(const ModelParams& p, const State& x);

/// Jacobian of the reduced (S1, X1, S2, X2) system obtained with first-order
/// hydrolysis once X0 sits at its limit.
Matrix4 jacobian_reduced(const ModelParams& p, const State& x);

StabilityVerdict classify_firstorder(const ModelParams& p, const EquilibriumRecord& rec);
StabilityVerdict classify_biomass(const ModelParams& p, const EquilibriumRecord& rec);
/// Dispatch on p.hydrolysis. `rec` must exist.
StabilityVerdict classify(const ModelParams& p, const EquilibriumRecord& rec);

/// Numeric verdict from a spectrum with tolerance tol.
Verdict spectral_verdict(double max_real_part, double tol);

}  // namespace triad
