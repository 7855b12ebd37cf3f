#include <doctest.h>

#include <levydiv/levy_model.hpp>
#include <levydiv/numerics.hpp>
#include <levydiv/parisian_ruin.hpp>
#include <levydiv/scale.hpp>

#include <cmath>
#include <stdexcept>

using namespace levydiv;

namespace {
const RiskModel cl = CramerLundbergExp{2.0, 1.0, 1.0};
const RiskModel bm = BrownianDrift{1.0, 1.0};
} // namespace

TEST_SUITE("parisian_ruin") {

TEST_CASE("cl_survival_factor basics") {
    const auto tilted = std::get<CramerLundbergExp>(
        tilt(cl, phi(cl, 0.1).phi_q));
    // zeta = 0 means no grace window: D = 1
    CHECK(cl_survival_factor(tilted, 0.0, tilted.claim_rate) == 1.0);
    // frozen reference value for the default (tilted) radicand
    CHECK(cl_survival_factor(tilted, 1.0, tilted.claim_rate) ==
          doctest::Approx(0.22562775612421585).epsilon(1e-11));
    // D decreases with the window length and stays in (0, 1]
    double prev = 1.0;
    for (double z : {0.5, 1.0, 2.0, 4.0}) {
        const double d = cl_survival_factor(tilted, z, tilted.claim_rate);
        CHECK(d > 0.0);
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("bm_psi basics") {
    CHECK(bm_psi(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bm_psi(1.0) == doctest::Approx(1.8615277067962964).epsilon(1e-13));
    // Psi(x) ~ 2 sqrt(pi) x for large x (the N term saturates at 1)
    const double x = 10.0;
    CHECK(bm_psi(x) / (std::sqrt(M_PI) * x) ==
          doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("parisian_V_form shape") {
    for (const RiskModel& m : {cl, bm}) {
        const auto form = parisian_V_form(m, 0.1, ParisianSpec{1.0});
        CHECK(form.phi == doctest::Approx(phi(m, 0.1).phi_q).epsilon(1e-12));
        CHECK(form.gamma > 0.0);
        CHECK(form.factor > 0.0);
        // CL reference factor K and decay gamma = Phi - q_minus
        if (std::holds_alternative<CramerLundbergExp>(m)) {
            CHECK(form.factor ==
                  doctest::Approx(0.14001166865670635).epsilon(1e-10));
            CHECK(form.phi - form.gamma ==
                  doctest::Approx(-0.54221443851123801).epsilon(1e-10));
        }
    }
}

TEST_CASE("small zeta degenerates to the classical scale form") {
    // V^(q) -> psi'(Phi(q)) W^(q) as zeta -> 0 (the q-scale identity)
    for (const RiskModel& m : {cl, bm}) {
        const double q = 0.1;
        const double slope = laplace_exponent_prime(m, phi(m, q).phi_q);
        const ScaleEval w(m, q);
        for (double x : {0.5, 1.0, 3.0}) {
            CHECK(parisian_V(m, q, ParisianSpec{0.0}, x) ==
                  doctest::Approx(slope * w.W(x)).epsilon(1e-11));
            CHECK(parisian_V(m, q, ParisianSpec{1e-8}, x) ==
                  doctest::Approx(slope * w.W(x)).epsilon(1e-4));
        }
    }
}

TEST_CASE("parisian ruin probability reference values") {
    const ParisianSpec z1{1.0};
    CHECK(parisian_ruin_probability(bm, z1, 0.5) ==
          doctest::Approx(0.028292819213692640).epsilon(1e-11));
    CHECK(parisian_ruin_probability(bm, z1, 1.0) ==
          doctest::Approx(0.010408346521497894).epsilon(1e-11));
    CHECK(parisian_ruin_probability(bm, z1, 2.0) ==
          doctest::Approx(0.0014086165245117300).epsilon(1e-11));
    CHECK(parisian_ruin_probability(cl, z1, 0.5) ==
          doctest::Approx(0.16440628342992146).epsilon(1e-10));
    CHECK(parisian_ruin_probability(cl, z1, 1.0) ==
          doctest::Approx(0.12803974227708217).epsilon(1e-10));
    CHECK(parisian_ruin_probability(cl, z1, 2.0) ==
          doctest::Approx(0.077660029352754208).epsilon(1e-10));
    // BM survival at x = 0 with no discounting
    CHECK(1.0 - parisian_ruin_probability(bm, z1, 0.0) ==
          doctest::Approx(0.92309214365554236).epsilon(1e-11));
}

TEST_CASE("zeta = 0 recovers the classical ruin probability") {
    // CL classical ruin: (lambda/(c xi)) e^{-(xi - lambda/c) x}
    const ParisianSpec z0{0.0};
    for (double x : {0.0, 0.5, 1.5, 4.0}) {
        const double classical = 0.5 * std::exp(-0.5 * x);
        CHECK(parisian_ruin_probability(cl, z0, x) ==
              doctest::Approx(classical).epsilon(1e-11));
    }
}

TEST_CASE("ruin probability monotone in zeta and below classical") {
    for (const RiskModel& m : {cl, bm}) {
        const double classical = parisian_ruin_probability(m, ParisianSpec{0.0}, 1.0);
        double prev = classical;
        for (double z : {0.2, 0.5, 1.0, 2.0}) {
            const double p = parisian_ruin_probability(m, ParisianSpec{z}, 1.0);
            CHECK(p >= 0.0);
            CHECK(p <= prev + 1e-13);
            prev = p;
        }
    }
}

TEST_CASE("V bounds") {
    for (const RiskModel& m : {cl, bm}) {
        const double phi_q = phi(m, 0.1).phi_q;
        for (double z : {0.0, 0.5, 2.0}) {
            for (double x = 0.0; x <= 10.0; x += 0.5) {
                const double v = parisian_V(m, 0.1, ParisianSpec{z}, x);
                // W(0) = 0 for the Gaussian variant, so V(0) = 0 there
                CHECK(v >= 0.0);
                if (x > 0.0) CHECK(v > 0.0);
                CHECK(v <= std::exp(phi_q * x) + 1e-12);
            }
        }
    }
    // the BM survival factor (as a probability ratio) stays inside (-1, 1)
    const auto fb = parisian_V_form(bm, 0.1, ParisianSpec{1.0});
    CHECK(fb.factor > -1.0);
    CHECK(fb.factor < 1.0);
}

TEST_CASE("analytic derivatives match finite differences") {
    for (const RiskModel& m : {cl, bm}) {
        const ParisianSpec z1{1.0};
        for (double x : {0.5, 1.5, 3.0}) {
            for (int order : {1, 2}) {
                const double num = differentiate(
                    [&](double y) { return parisian_V(m, 0.1, z1, y); }, x, order,
                    1e-4);
                CHECK(parisian_V_derivative(m, 0.1, z1, x, order) ==
                      doctest::Approx(num).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("V'' changes sign exactly once") {
    for (const RiskModel& m : {cl, bm}) {
        int changes = 0;
        double prev = parisian_V_derivative(m, 0.1, ParisianSpec{1.0}, 0.01, 2);
        for (double x = 0.05; x <= 50.0; x += 0.05) {
            const double cur = parisian_V_derivative(m, 0.1, ParisianSpec{1.0}, x, 2);
            if ((prev < 0.0) != (cur < 0.0)) ++changes;
            prev = cur;
        }
        CHECK(changes == 1);
    }
}

TEST_CASE("V' approaches the leading exponential") {
    for (const RiskModel& m : {cl, bm}) {
        const double phi_q = phi(m, 0.1).phi_q;
        const double x = 40.0;
        CHECK(parisian_V_derivative(m, 0.1, ParisianSpec{1.0}, x, 1) /
                  (phi_q * std::exp(phi_q * x)) ==
              doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(parisian_V(cl, 0.1, ParisianSpec{-1.0}, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(parisian_V(cl, 0.1, ParisianSpec{1.0}, -0.5),
                    std::invalid_argument);
    // ruin probability needs a positive safety loading
    CHECK_THROWS_AS(parisian_ruin_probability(
                        RiskModel{CramerLundbergExp{1.0, 2.0, 1.0}},
                        ParisianSpec{1.0}, 1.0),
                    std::invalid_argument);
}

} // TEST_SUITE
