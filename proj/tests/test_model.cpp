#include "triad/errors.hpp"
#include "triad/model.hpp"
#include "triad/validation.hpp"

#include <doctest.h>

#include <cmath>

using namespace triad;

namespace {

// Written out from the model equations without sharing code with src/.
State reference_rhs(const ModelParams& p, const State& x) {
    const double X0 = x[0], S1 = x[1], X1 = x[2], S2 = x[3], X2 = x[4];
    const double D1 = p.alpha1 * p.D + p.a1;
    const double D2 = p.alpha2 * p.D + p.a2;
    double r0;
    if (p.hydrolysis == Hydrolysis::FirstOrder) {
        r0 = p.k_hyd * X0;
    } else {
        r0 = (*p.mu0)(X0) * X1;
    }
    const double m1 = p.mu1(S1);
    const double m2 = p.mu2(S2);
    State f;
    f[0] = p.D * p.X0in - p.alpha0 * p.D * X0 - r0;
    f[1] = p.D * (p.S1in - S1) + p.k0 * r0 - p.k1 * m1 * X1;
    f[2] = (m1 - D1) * X1;
    f[3] = p.D * (p.S2in - S2) + p.k2 * m1 * X1 - p.k3 * m2 * X2;
    f[4] = (m2 - D2) * X2;
    return f;
}

State random_state(Rng& rng) {
    State x;
    for (double& c : x) c = log_uniform(rng, 1e-3, 1e1);
    return x;
}

ModelParams base_params() {
    ModelParams p;
    p.k0 = 0.6;
    p.k1 = 3;
    p.k2 = 1;
    p.k3 = 2;
    p.k_hyd = 0.4;
    p.D = 0.5;
    p.X0in = 2;
    p.S1in = 1;
    p.S2in = 3;
    p.mu1 = GrowthCurve::monod(1.2, 2);
    p.mu2 = GrowthCurve::haldane(1, 1, 4);
    return p;
}

}  // namespace

TEST_CASE("removal rates") {
    ModelParams p = base_params();
    p.D = 1;
    CHECK(removal_rates(p).D1 == doctest::Approx(1.0));
    p.alpha1 = 0.5;
    p.a1 = 0.2;
    CHECK(removal_rates(p).D1 == doctest::Approx(0.7));
    p.alpha0 = 0.8;
    p.alpha2 = 0.9;
    CHECK(removal_rates(p).D2 == doctest::Approx(0.9));
    CHECK(removal_rates(p).Dmin == doctest::Approx(0.7));
    p.alpha1 = 0;
    p.a1 = 0;
    CHECK_THROWS_AS(removal_rates(p), ParameterError);
}

TEST_CASE("parameter validation") {
    ModelParams p = base_params();
    CHECK_NOTHROW(p.validate());
    auto bad = [&](auto mutate) {
        ModelParams q = base_params();
        mutate(q);
        CHECK_THROWS_AS(q.validate(), ParameterError);
    };
    bad([](ModelParams& q) { q.k0 = 1.1; });
    bad([](ModelParams& q) { q.k1 = 1.9; });
    bad([](ModelParams& q) { q.k3 = 0.5; });
    bad([](ModelParams& q) { q.D = 0; });
    bad([](ModelParams& q) { q.S2in = -1; });
    bad([](ModelParams& q) { q.alpha0 = 0; });
    bad([](ModelParams& q) { q.alpha0 = 1.2; });
    bad([](ModelParams& q) { q.alpha2 = 1.2; });
    bad([](ModelParams& q) { q.a1 = -0.1; });
    bad([](ModelParams& q) { q.mu1 = GrowthCurve::haldane(1, 1, 1); });
    bad([](ModelParams& q) { q.mu2 = GrowthCurve::monod(1, 1); });
    bad([](ModelParams& q) { q.mu0 = GrowthCurve::monod(1, 1); });
    bad([](ModelParams& q) {
        q.hydrolysis = Hydrolysis::BiomassDependent;
        q.k_hyd = 0;
    });
    bad([](ModelParams& q) {
        q.hydrolysis = Hydrolysis::BiomassDependent;
        q.k_hyd = 0.3;
        q.mu0 = GrowthCurve::monod(1, 1);
    });
    bad([](ModelParams& q) {
        q.hydrolysis = Hydrolysis::BiomassDependent;
        q.k_hyd = 0;
        q.mu0 = GrowthCurve::haldane(1, 1, 1);
    });
}

TEST_CASE("rhs at washout and X0 limit") {
    ModelParams p = base_params();
    const double x0s = p.D * p.X0in / (p.k_hyd + p.alpha0 * p.D);
    const double s1s = p.S1in + p.k0 * p.k_hyd * p.X0in / (p.k_hyd + p.alpha0 * p.D);
    for (double c : rhs(p, {x0s, s1s, 0, p.S2in, 0})) CHECK(std::abs(c) <= 1e-15);
    CHECK(rhs(p, {x0s, 0.3, 1.1, 0.2, 0.9})[0] == doctest::Approx(0.0));

    p.hydrolysis = Hydrolysis::BiomassDependent;
    p.k_hyd = 0;
    p.mu0 = GrowthCurve::monod(1, 1);
    for (double c : rhs(p, {p.X0in / p.alpha0, p.S1in, 0, p.S2in, 0})) CHECK(c == 0.0);

    CHECK_THROWS_AS(rhs(p, {-1e-12, 0, 0, 0, 0}), DomainError);
}

TEST_CASE("rhs matches the independent reference on random inputs") {
    Rng rng(7);
    for (int n = 0; n < 500; ++n) {
        const Hydrolysis mode = n % 2 ? Hydrolysis::FirstOrder : Hydrolysis::BiomassDependent;
        const ModelParams p = random_params(rng, mode);
        const State x = random_state(rng);
        const State a = rhs(p, x);
        const State b = reference_rhs(p, x);
        for (int i = 0; i < 5; ++i) CHECK(a[i] == b[i]);
        CHECK(rhs_extended(p, x) == a);
    }
}

TEST_CASE("quasi-positivity on the boundary faces") {
    Rng rng(8);
    for (int n = 0; n < 300; ++n) {
        const ModelParams p = random_params(rng, n % 2 ? Hydrolysis::FirstOrder
                                                       : Hydrolysis::BiomassDependent);
        for (int c = 0; c < 5; ++c) {
            State x = random_state(rng);
            x[c] = 0;
            CHECK(rhs(p, x)[c] >= 0.0);
        }
    }
}

TEST_CASE("total mass, its rate and the Omega bound") {
    ModelParams p;
    CHECK(total_mass(p, {0, 0, 0, 0, 0}) == 0.0);
    CHECK(total_mass(p, {1, 1, 1, 1, 1}) == doctest::Approx(5.0));

    p = base_params();
    CHECK(omega_bound(p) == doctest::Approx(input_mass(p)));
    p.k0 = 1;
    p.X0in = 1;
    p.S1in = 2;
    p.S2in = 3;
    p.D = 1;
    p.alpha1 = 0.5;
    CHECK(removal_rates(p).Dmin == doctest::Approx(0.5));
    CHECK(omega_bound(p) == doctest::Approx(12.0));

    Rng rng(9);
    for (int n = 0; n < 500; ++n) {
        const ModelParams q = random_params(rng, n % 2 ? Hydrolysis::FirstOrder
                                                       : Hydrolysis::BiomassDependent);
        const State x = random_state(rng);
        const State f = rhs(q, x);
        const double zdot = q.k0 * f[0] + f[1] + f[3] + (q.k1 - q.k2) * f[2] + q.k3 * f[4];
        const double closed = total_mass_rate(q, x);
        const double scale = q.D * input_mass(q) + q.D * total_mass(q, x) * 10;
        CHECK(std::abs(zdot - closed) <= 1e-12 * std::max(1.0, scale));

        const double dmin = removal_rates(q).Dmin;
        const double z = total_mass(q, x);
        CHECK(closed <= -dmin * (z - omega_bound(q)) + 1e-12 * std::max(1.0, scale));
    }
}

TEST_CASE("Gronwall envelope") {
    ModelParams p = base_params();
    p.alpha0 = 0.5;
    const double bound = omega_bound(p);
    const double dmin = removal_rates(p).Dmin;
    CHECK(gronwall_envelope(p, 7.0, 0.0) == doctest::Approx(7.0));
    CHECK(gronwall_envelope(p, 7.0, 1e6) == doctest::Approx(bound));
    CHECK(gronwall_envelope(p, 7.0, 2.0) ==
          doctest::Approx(bound + (7.0 - bound) * std::exp(-dmin * 2.0)));
}
