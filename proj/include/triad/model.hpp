#pragma once

// Three-stage chemostat: particulate substrate X0 is hydrolysed into S1,
// acidogens X1 grow on S1 and release S2, methanogens X2 grow on S2.
// Hydrolysis is either first order (k_hyd X0) or biomass dependent
// (mu0(X0) X1).

#include "triad/kinetics.hpp"

#include <array>
#include <optional>
#include <string>

namespace triad {

enum class Hydrolysis { FirstOrder, BiomassDependent };

std::string to_string(Hydrolysis h);

/// Component order X0, S1, X1, S2, X2.
using State = std::array<double, 5>;

namespace var {
inline constexpr std::size_t X0 = 0;
inline constexpr std::size_t S1 = 1;
inline constexpr std::size_t X1 = 2;
inline constexpr std::size_t S2 = 3;
inline constexpr std::size_t X2 = 4;
}  // namespace var

struct ModelParams {
    Hydrolysis hydrolysis = Hydrolysis::FirstOrder;

    double k0 = 1.0;
    double k1 = 2.0;
    double k2 = 1.0;
    double k3 = 1.0;
    double k_hyd = 0.0;  // FirstOrder only

    double alpha0 = 1.0;
    double alpha1 = 1.0;
    double alpha2 = 1.0;
    double a1 = 0.0;
    double a2 = 0.0;

    double D = 1.0;
    double X0in = 0.0;
    double S1in = 0.0;
    double S2in = 0.0;

    std::optional<GrowthCurve> mu0;  // BiomassDependent only
    GrowthCurve mu1 = GrowthCurve::monod(1.0, 1.0);
    GrowthCurve mu2 = GrowthCurve::haldane(1.0, 1.0, 1.0);

    /// Throws ParameterError naming the first violated constraint.
    void validate() const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct RemovalRates {
    double D1;
    double D2;
    double Dmin;
};

/// D_i = alpha_i D + a_i and Dmin = min(alpha0 D, D1, D2).
RemovalRates removal_rates(const ModelParams& p);

/// Right-hand side of the five-dimensional system. Throws DomainError for a
/// state with a negative component.
State rhs(const ModelParams& p, const State& x);

/// Same vector field with growth laws evaluated at max(s, 0); this is what
/// the integrator uses so that trial stages slightly below zero stay
/// evaluable.
State rhs_extended(const ModelParams& p, const State& x);

/// Hydrolysis rate r0.
double hydrolysis_rate(const ModelParams& p, double x0, double x1);

/// Z = k0 X0 + S1 + S2 + (k1 - k2) X1 + k3 X2.
double total_mass(const ModelParams& p, const State& x);
/// Z^in = k0 X0in + S1in + S2in.
double input_mass(const ModelParams& p);
/// dZ/dt = D Z^in - alpha0 D k0 X0 - D S1 - D1 (k1 - k2) X1 - D S2 - D2 k3 X2.
double total_mass_rate(const ModelParams& p, const State& x);
/// (D / Dmin) Z^in, the level set bounding the attracting region Omega.
double omega_bound(const ModelParams& p);
/// Right side of the Gronwall bound on Z(t) starting from Z(0) = z0.
double gronwall_envelope(const ModelParams& p, double z0, double t);

}  // namespace triad
