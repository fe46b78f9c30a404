#include "triad/equilibria.hpp"
#include "triad/errors.hpp"
#include "triad/validation.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace triad;

namespace {

double inf_norm(const State& x) {
    double n = 0;
    for (double c : x) n = std::max(n, std::abs(c));
    return n;
}

const EquilibriumRecord& find(const std::vector<EquilibriumRecord>& v, const std::string& label) {
    auto it = std::find_if(v.begin(), v.end(), [&](const auto& e) { return e.label.str() == label; });
    REQUIRE(it != v.end());
    return *it;
}

// D = 1, all removal rates 1, lambda1 = 1.
ModelParams biomass_params(double X0in, double S1in) {
    ModelParams p;
    p.hydrolysis = Hydrolysis::BiomassDependent;
    p.k0 = 1;
    p.k1 = 2;
    p.k2 = 1;
    p.k3 = 1;
    p.D = 1;
    p.X0in = X0in;
    p.S1in = S1in;
    p.S2in = 0.5;
    p.mu0 = GrowthCurve::linear(1);
    p.mu1 = GrowthCurve::monod(2, 1);
    p.mu2 = GrowthCurve::haldane(4, 1, 1);
    p.validate();
    return p;
}

ModelParams first_order_params() {
    ModelParams p;
    p.k0 = 0.8;
    p.k1 = 3;
    p.k2 = 1;
    p.k3 = 2;
    p.k_hyd = 1;
    p.D = 1;
    p.X0in = 2;
    p.S1in = 1;
    p.S2in = 4;
    p.mu1 = GrowthCurve::monod(3, 2);
    p.mu2 = GrowthCurve::haldane(4, 1, 4);
    return p;
}

// Sign changes of xi - delta on n uniform interior points of (0, X0in/alpha0).
int grid_sign_changes(const ModelParams& p, int n, double& min_abs) {
    const double L = p.X0in / p.alpha0;
    int changes = 0;
    int prev = 0;
    min_abs = INFINITY;
    for (int i = 1; i <= n; ++i) {
        const double x = L * i / (n + 1.0);
        const double g = xi(p, x) - *delta(p, x);
        min_abs = std::min(min_abs, std::abs(g));
        const int s = g > 0 ? 1 : (g < 0 ? -1 : 0);
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

}  // namespace

TEST_CASE("first-order X0 limit and effective S1 input") {
    ModelParams p = first_order_params();
    p.k_hyd = 0;
    p.alpha0 = 0.5;
    CHECK(x0_star_firstorder(p) == doctest::Approx(p.X0in / p.alpha0));
    CHECK(s1in_star(p) == doctest::Approx(p.S1in));

    p = first_order_params();
    CHECK(x0_star_firstorder(p) == doctest::Approx(1.0));
    CHECK(s1in_star(p) == doctest::Approx(1.8));
    CHECK(std::abs(rhs(p, {x0_star_firstorder(p), 1, 1, 1, 1})[0]) < 1e-15);

    p.k0 = 1;
    p.k_hyd = 1e12;
    CHECK(s1in_star(p) == doctest::Approx(p.S1in + p.X0in));

    p.hydrolysis = Hydrolysis::BiomassDependent;
    CHECK_THROWS(x0_star_firstorder(p));
}

TEST_CASE("first-order equilibria follow the component table") {
    const ModelParams p = first_order_params();
    const auto eqs = equilibria_firstorder(p);
    REQUIRE(eqs.size() == 6);

    const double X0s = 1.0, S1s = 1.8, D = 1.0, D1 = 1.0, D2 = 1.0;
    const double l1 = 2.0 * 1.0 / (3.0 - 1.0);  // K d / (m - d)
    // 4 s / (1 + s + s^2/4) = 1  ->  s^2 - 12 s + 4 = 0
    const double l2a = 6 - std::sqrt(32.0), l2b = 6 + std::sqrt(32.0);
    const double k1 = 3, k2 = 1, k3 = 2;

    auto near = [](const State& a, const State& b) {
        for (int i = 0; i < 5; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    };
    near(find(eqs, "E00").state, {X0s, S1s, 0, 4, 0});
    near(find(eqs, "E01").state, {X0s, S1s, 0, l2a, D / (k3 * D2) * (4 - l2a)});
    near(find(eqs, "E10").state,
         {X0s, l1, D / (k1 * D1) * (S1s - l1), 4 + k2 / k1 * (S1s - l1), 0});
    const double H1 = l2a + k2 / k1 * l1;
    near(find(eqs, "E11").state,
         {X0s, l1, D / (k1 * D1) * (S1s - l1), l2a, D / (k3 * D2) * (4 + k2 / k1 * S1s - H1)});

    CHECK(find(eqs, "E00").exists);
    CHECK(find(eqs, "E01").exists);
    CHECK_FALSE(find(eqs, "E02").exists);  // S2in < l2b
    CHECK(find(eqs, "E10").exists);
    CHECK(find(eqs, "E11").exists);
    CHECK_FALSE(find(eqs, "E12").exists);

    for (const auto& e : eqs) {
        if (e.exists) CHECK(residual_norm(p, e.state) <= 1e-12);
    }
}

TEST_CASE("first-order existence margins name the failing condition") {
    ModelParams p = first_order_params();
    p.S2in = 0.1;  // below lambda2^1
    auto eqs = equilibria_firstorder(p);
    CHECK_FALSE(find(eqs, "E01").exists);
    CHECK_FALSE(find(eqs, "E02").exists);

    p.mu1 = GrowthCurve::monod(0.5, 1);  // D1 above sup mu1
    eqs = equilibria_firstorder(p);
    const auto& e10 = find(eqs, "E10");
    CHECK_FALSE(e10.exists);
    REQUIRE_FALSE(e10.existence_margins.empty());
    CHECK(e10.existence_margins.front().slack < 0);
    CHECK(std::isnan(e10.state[1]));
    CHECK(find(eqs, "E00").exists);
}

TEST_CASE("xi and delta") {
    const ModelParams p = biomass_params(5, 1);
    const double L = p.X0in / p.alpha0;
    CHECK(xi(p, L) == 0.0);
    CHECK_THROWS_AS(xi(p, 0.0), DomainError);

    for (int i = 1; i < 50; ++i) {
        const double x = L * i / 50.0;
        const double h = 1e-6 * x;
        const double fd = (xi(p, x + h) - xi(p, x - h)) / (2 * h);
        CHECK(std::abs(fd - xi_prime(p, x)) <= 1e-6 * std::abs(xi_prime(p, x)));
        CHECK(xi_prime(p, x) < 0);
        if (i > 1) CHECK(xi_prime(p, x) > xi_prime(p, L * (i - 1) / 50.0));
    }

    CHECK(delta_slope(p) == doctest::Approx(-1.0 * 1 * 1 / (2 * 1.0)));
    const ModelParams q = biomass_params(5, 1);  // S1in = lambda1 = 1
    CHECK(std::abs(*delta(q, L)) < 1e-15);
    CHECK(*delta(q, 0.0) == doctest::Approx(1.0 / 2.0 * (0 + 1 * 5)));

    ModelParams none = p;
    none.mu1 = GrowthCurve::monod(0.5, 1);
    CHECK_FALSE(delta(none, 1.0).has_value());
    CHECK(multiplicity(none).N == 0);
    CHECK(multiplicity(none).branch_case == BranchCase::Lambda1Undefined);
}

TEST_CASE("multiplicity: the case table") {
    // Shallow: k0 mu0(X0in) = 1 <= k1 D1 = 2.
    CHECK(multiplicity(biomass_params(1, 2)).N == 1);
    CHECK(multiplicity(biomass_params(1, 2)).branch_case == BranchCase::ShallowPersist);
    CHECK(multiplicity(biomass_params(1, 0.5)).N == 0);
    CHECK(multiplicity(biomass_params(1, 0.5)).branch_case == BranchCase::ShallowWashout);

    // Steep: k0 mu0(X0in) = 5 > 2.
    const auto above = multiplicity(biomass_params(5, 2));
    CHECK(above.N == 1);
    CHECK(above.branch_case == BranchCase::SteepAboveLambda);
    REQUIRE(above.s1in_bar);

    // xi' = -X0in/x^2 = -1/2 at xbar = sqrt(10); S1bar = 1 + 2 xi(xbar) - (5 - xbar).
    const double xbar = std::sqrt(10.0);
    const double s1bar = 1 + 2 * (5 - xbar) / xbar - (5 - xbar);
    CHECK(*above.xbar == doctest::Approx(xbar).epsilon(1e-10));
    CHECK(*above.s1in_bar == doctest::Approx(s1bar).epsilon(1e-10));

    const auto two = multiplicity(biomass_params(5, 0.5 * (s1bar + 1)));
    CHECK(two.N == 2);
    CHECK(two.branch_case == BranchCase::SteepBistable);
    REQUIRE(two.roots.size() == 2);
    CHECK(two.roots[0] < xbar);
    CHECK(two.roots[1] > xbar);
    const ModelParams pt = biomass_params(5, 0.5 * (s1bar + 1));
    CHECK(xi_prime(pt, two.roots[0]) < delta_slope(pt));
    CHECK(xi_prime(pt, two.roots[1]) > delta_slope(pt));

    const auto none = multiplicity(biomass_params(5, 0.5 * s1bar));
    CHECK(none.N == 0);
    CHECK(none.branch_case == BranchCase::SteepWashout);

    // S1in exactly lambda1 with a steep xi: N = 1.
    CHECK(multiplicity(biomass_params(5, 1.0)).N == 1);
}

TEST_CASE("biomass equilibria follow the component table") {
    const ModelParams p = biomass_params(5, 2);
    const auto eqs = equilibria_biomass(p);
    const auto& e00 = find(eqs, "E00");
    CHECK(e00.exists);
    CHECK(e00.state == State{5, 2, 0, 0.5, 0});

    const auto m = multiplicity(p);
    REQUIRE(m.N == 1);
    const double x0 = m.roots[0];
    const double x1 = (5 - x0) / x0;
    const double s2 = 0.5 + 1 * 1 / 1 * x1;
    const auto& e10 = find(eqs, "E10k1");
    CHECK(e10.state[0] == doctest::Approx(x0));
    CHECK(e10.state[1] == doctest::Approx(1.0));
    CHECK(e10.state[2] == doctest::Approx(x1));
    CHECK(e10.state[3] == doctest::Approx(s2));
    CHECK(*e10.x1_aux == doctest::Approx(x1));
    CHECK(*e10.s2_aux == doctest::Approx(s2));

    const auto none = equilibria_biomass(biomass_params(1, 0.5));
    for (const auto& e : none) CHECK(e.label.j == 0);
}

TEST_CASE("random draws: residuals, root placement and grid oracle") {
    Rng rng(2024);
    int checked = 0;
    for (int n = 0; n < 300; ++n) {
        const Hydrolysis mode = n % 2 ? Hydrolysis::FirstOrder : Hydrolysis::BiomassDependent;
        const ModelParams p = random_params(rng, mode);
        for (const auto& e : equilibria(p)) {
            if (!e.exists) continue;
            for (double c : e.state) CHECK(c >= 0);
            CHECK(residual_norm(p, e.state) <= 1e-9 * (1 + inf_norm(e.state)));
        }
        if (mode == Hydrolysis::FirstOrder || !delta(p, 1.0)) continue;

        const auto m = multiplicity(p);
        const double L = p.X0in / p.alpha0;
        REQUIRE(static_cast<int>(m.roots.size()) == m.N);
        for (double r : m.roots) {
            CHECK(r > 0);
            CHECK(r < L);
            CHECK(std::abs(xi(p, r) - *delta(p, r)) <= 1e-10 * std::max(1.0, xi(p, r)));
        }
        if (n < 60) {
            double min_abs;
            const int count = grid_sign_changes(p, 10000, min_abs);
            if (min_abs < 1e-8) continue;
            CHECK(count == m.N);
            ++checked;
        }
    }
    CHECK(checked > 10);
}
