#include <doctest.h>

#include <levydiv/levy_model.hpp>

#include <cmath>
#include <stdexcept>

using namespace levydiv;

namespace {
const RiskModel cl = CramerLundbergExp{2.0, 1.0, 1.0};
const RiskModel bm = BrownianDrift{1.0, 1.0};
} // namespace

TEST_SUITE("levy_model") {

TEST_CASE("laplace_exponent examples") {
    // c theta - lambda theta / (xi + theta): 2 - 1/2 = 1.5 at theta = 1
    CHECK(laplace_exponent(cl, 1.0) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(laplace_exponent(cl, 0.0) == 0.0);
    // c theta + sigma^2 theta^2 / 2: 2 + 2 = 4 at theta = 2
    CHECK(laplace_exponent(bm, 2.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(laplace_exponent(bm, 0.0) == 0.0);
    CHECK_THROWS_AS(laplace_exponent(cl, -0.5), std::invalid_argument);
}

TEST_CASE("laplace_exponent_prime and drift_at_zero") {
    // psi'(0+) = c - lambda/xi = 1 for the CL example
    CHECK(drift_at_zero(cl) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(laplace_exponent_prime(cl, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    // psi'(theta) = c + sigma^2 theta
    CHECK(laplace_exponent_prime(bm, 2.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(drift_at_zero(bm) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("psi is convex") {
    for (const RiskModel& m : {cl, bm}) {
        for (double a = 0.0; a <= 3.0; a += 0.5) {
            const double b = a + 0.7, mid = 0.5 * (a + b);
            CHECK(laplace_exponent(m, mid) <=
                  0.5 * (laplace_exponent(m, a) + laplace_exponent(m, b)) + 1e-12);
        }
    }
}

TEST_CASE("phi reference values") {
    CHECK(phi(cl, 0.0).phi_q == doctest::Approx(0.0).epsilon(1e-12));
    const ModelConstants mc = phi(cl, 0.1);
    CHECK(mc.phi_q == doctest::Approx(0.09221443851123801).epsilon(1e-13));
    CHECK(mc.q_plus == doctest::Approx(mc.phi_q).epsilon(1e-14));
    CHECK(mc.q_minus == doctest::Approx(-0.54221443851123801).epsilon(1e-13));

    const ModelConstants mb = phi(bm, 0.05);
    CHECK(mb.c_q == doctest::Approx(1.0488088481701515).epsilon(1e-14));
    CHECK(mb.phi_q == doctest::Approx(0.048808848170151547).epsilon(1e-13));
}

TEST_CASE("psi(Phi(q)) = q") {
    for (const RiskModel& m : {cl, bm}) {
        for (double q : {0.0, 0.01, 0.05, 0.1, 1.0}) {
            const double p = phi(m, q).phi_q;
            CHECK(laplace_exponent(m, p) == doctest::Approx(q).epsilon(1e-10));
            CHECK(laplace_exponent_prime(m, p) > 0.0);
        }
    }
}

TEST_CASE("tilt examples") {
    // theta = 0 is the identity
    const auto& cl0 = std::get<CramerLundbergExp>(tilt(cl, 0.0));
    CHECK(cl0.premium_rate == 2.0);
    CHECK(cl0.claim_intensity == 1.0);
    CHECK(cl0.claim_rate == 1.0);

    // tilt by Phi(0.1): xi_q = xi + Phi, lambda_q = lambda xi / (xi + Phi)
    const double p = 0.09221443851123801;
    const auto& clq = std::get<CramerLundbergExp>(tilt(cl, p));
    CHECK(clq.claim_rate == doctest::Approx(1.0 + p).epsilon(1e-14));
    CHECK(clq.claim_intensity == doctest::Approx(1.0 / (1.0 + p)).epsilon(1e-13));
    CHECK(clq.premium_rate == 2.0);

    const ModelConstants mc = phi(cl, 0.1);
    CHECK(mc.xi_q == doctest::Approx(clq.claim_rate).epsilon(1e-13));
    CHECK(mc.lambda_q == doctest::Approx(clq.claim_intensity).epsilon(1e-13));

    // BM tilt by Phi(0.05) gives drift c_q
    const auto& bmq = std::get<BrownianDrift>(tilt(bm, 0.048808848170151547));
    CHECK(bmq.drift == doctest::Approx(1.0488088481701515).epsilon(1e-13));
    CHECK(bmq.volatility == 1.0);

    CHECK_THROWS_AS(tilt(cl, -0.1), std::invalid_argument);
}

TEST_CASE("tilt consistency: psi_theta(s) = psi(s + theta) - psi(theta)") {
    for (const RiskModel& m : {cl, bm}) {
        for (double theta : {0.05, 0.3, 1.0, 2.5}) {
            const RiskModel mt = tilt(m, theta);
            for (double s : {0.0, 0.1, 0.7, 1.4, 3.0}) {
                CHECK(laplace_exponent(mt, s) ==
                      doctest::Approx(laplace_exponent(m, s + theta) -
                                      laplace_exponent(m, theta))
                          .epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("tilted drift is positive under the Phi(q) tilt") {
    for (const RiskModel& m : {cl, bm}) {
        for (double q : {0.01, 0.1, 1.0}) {
            const RiskModel mt = tilt(m, phi(m, q).phi_q);
            CHECK(drift_at_zero(mt) > 0.0);
        }
    }
}

TEST_CASE("validate rejects bad parameters") {
    CHECK_NOTHROW(validate(cl));
    CHECK_NOTHROW(validate(bm));
    CHECK_THROWS_AS(validate(RiskModel{CramerLundbergExp{-1.0, 1.0, 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate(RiskModel{CramerLundbergExp{2.0, 0.0, 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate(RiskModel{CramerLundbergExp{2.0, 1.0, -2.0}}),
                    std::invalid_argument);
    // net profit violation: c <= lambda/xi
    CHECK_THROWS_AS(validate(RiskModel{CramerLundbergExp{1.0, 2.0, 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate(RiskModel{BrownianDrift{0.0, 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate(RiskModel{BrownianDrift{1.0, 0.0}}),
                    std::invalid_argument);
}

TEST_CASE("has_smooth_scale") {
    CHECK_FALSE(has_smooth_scale(cl));
    CHECK(has_smooth_scale(bm));
}

} // TEST_SUITE
