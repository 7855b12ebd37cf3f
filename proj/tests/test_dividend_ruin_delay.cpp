#include <doctest.h>

#include <levydiv/dividend_ruin_delay.hpp>
#include <levydiv/numerics.hpp>
#include <levydiv/scale.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace levydiv;

namespace {
const RiskModel cl = CramerLundbergExp{2.0, 1.0, 1.0};
const RiskModel bm = BrownianDrift{1.0, 1.0};
const ParisianSpec z1{1.0};
} // namespace

TEST_SUITE("dividend_ruin_delay") {

TEST_CASE("value function shape around the barrier") {
    for (const RiskModel& m : {cl, bm}) {
        const double q = std::holds_alternative<CramerLundbergExp>(m) ? 0.1 : 0.05;
        const BarrierPolicy pol{2.0};
        const double va = value_ruin_delay(m, q, z1, pol, 2.0);
        CHECK(va == doctest::Approx(parisian_V(m, q, z1, 2.0) /
                                    parisian_V_derivative(m, q, z1, 2.0, 1))
                        .epsilon(1e-12));
        // slope one above the barrier
        CHECK(value_ruin_delay(m, q, z1, pol, 7.0) ==
              doctest::Approx(va + 5.0).epsilon(1e-12));
        CHECK(value_ruin_delay_prime(m, q, z1, pol, 5.0) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("frozen reference values") {
    CHECK(optimal_barrier(cl, 0.1, z1) ==
          doctest::Approx(2.4857950840696507).epsilon(1e-9));
    CHECK(optimal_barrier(bm, 0.05, z1) ==
          doctest::Approx(2.2777226884115413).epsilon(1e-9));
    const BarrierPolicy astar{2.4857950840696507};
    CHECK(value_ruin_delay(cl, 0.1, z1, astar, 1.0) ==
          doctest::Approx(7.4814260300688931).epsilon(1e-10));
    CHECK(parisian_V(cl, 0.1, z1, 1.0) ==
          doctest::Approx(1.0151888744865882).epsilon(1e-11));
    CHECK(parisian_V_derivative(cl, 0.1, z1, astar.a, 1) ==
          doctest::Approx(0.13569456817542574).epsilon(1e-10));
    // value at the BM optimal barrier equals the perpetuity c/q
    const BarrierPolicy bstar{2.2777226884115413};
    CHECK(value_ruin_delay(bm, 0.05, z1, bstar, bstar.a) ==
          doctest::Approx(20.0).epsilon(1e-9));
}

TEST_CASE("optimal barrier is the zero of V''") {
    for (const RiskModel& m : {cl, bm}) {
        const double q = std::holds_alternative<CramerLundbergExp>(m) ? 0.1 : 0.05;
        const double a = optimal_barrier(m, q, z1);
        const double eps = 1e-6;
        CHECK(parisian_V_derivative(m, q, z1, a - eps, 2) < 0.0);
        CHECK(parisian_V_derivative(m, q, z1, a + eps, 2) > 0.0);
        CHECK(std::abs(parisian_V_derivative(m, q, z1, a, 2)) < 1e-10);
    }
}

TEST_CASE("optimal barrier degenerates with a tiny delay window") {
    // zeta -> 0: a* tends to the classical argmin of W'
    const double a = optimal_barrier(cl, 0.1, ParisianSpec{1e-6});
    const ScaleEval w(cl, 0.1);
    double best = 0.0, best_val = w.W_prime(1e-6);
    for (double x = 1e-3; x <= 10.0; x += 1e-3) {
        const double v = w.W_prime(x);
        if (v < best_val) { best_val = v; best = x; }
    }
    CHECK(a == doctest::Approx(best).epsilon(2e-3));
}

TEST_CASE("generator_apply examples") {
    for (const RiskModel& m : {cl, bm}) {
        CHECK(std::abs(generator_apply(m, [](double) { return 1.0; }, 1.0)) <=
              1e-9);
        for (double theta : {0.1, 0.5}) {
            for (double x : {0.5, 1.0}) {
                const double ana =
                    laplace_exponent(m, theta) * std::exp(theta * x);
                CHECK(generator_apply(
                          m, [theta](double y) { return std::exp(theta * y); },
                          x) == doctest::Approx(ana).epsilon(1e-4));
            }
        }
    }
    // identity map: Gamma x = psi'(0+) = c for the Brownian variant
    CHECK(generator_apply(bm, [](double y) { return y; }, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("hjb_verify passes at the optimum and fails away from it") {
    for (const RiskModel& m : {cl, bm}) {
        const double q = std::holds_alternative<CramerLundbergExp>(m) ? 0.1 : 0.05;
        const double astar = optimal_barrier(m, q, z1);
        const auto grid = default_verify_grid(astar);
        const auto good = hjb_verify(m, q, z1, BarrierPolicy{astar}, grid, 1e-6);
        CHECK(good.passed);
        CHECK(good.max_violation <= 1e-6);
        CHECK(good.grid.size() == grid.size());

        const auto bad =
            hjb_verify(m, q, z1, BarrierPolicy{0.5 * astar},
                       default_verify_grid(0.5 * astar), 1e-6);
        CHECK_FALSE(bad.passed);
    }
}

TEST_CASE("value function is nondecreasing with derivative >= 1 below a*") {
    for (const RiskModel& m : {cl, bm}) {
        const double q = std::holds_alternative<CramerLundbergExp>(m) ? 0.1 : 0.05;
        const double astar = optimal_barrier(m, q, z1);
        const BarrierPolicy pol{astar};
        double prev = value_ruin_delay(m, q, z1, pol, 0.0);
        for (double x = 0.05; x <= astar + 3.0; x += 0.05) {
            const double v = value_ruin_delay(m, q, z1, pol, x);
            CHECK(v >= prev);
            prev = v;
        }
        for (double x = 0.1; x <= astar; x += 0.1)
            CHECK(value_ruin_delay_prime(m, q, z1, pol, x) >= 1.0 - 1e-10);
    }
}

TEST_CASE("a* dominates nearby barriers") {
    for (const RiskModel& m : {cl, bm}) {
        const double q = std::holds_alternative<CramerLundbergExp>(m) ? 0.1 : 0.05;
        const double astar = optimal_barrier(m, q, z1);
        const double x0 = 0.5 * astar;
        const double best = value_ruin_delay(m, q, z1, BarrierPolicy{astar}, x0);
        for (double a = astar - 1.0; a <= astar + 1.0; a += 0.1) {
            if (a <= x0) continue;
            CHECK(value_ruin_delay(m, q, z1, BarrierPolicy{a}, x0) <=
                  best + 1e-10);
        }
    }
}

TEST_CASE("C1 paste at the barrier") {
    for (const RiskModel& m : {cl, bm}) {
        const double q = std::holds_alternative<CramerLundbergExp>(m) ? 0.1 : 0.05;
        const double astar = optimal_barrier(m, q, z1);
        const BarrierPolicy pol{astar};
        const double h = 1e-6;
        const double left =
            (value_ruin_delay(m, q, z1, pol, astar) -
             value_ruin_delay(m, q, z1, pol, astar - h)) / h;
        CHECK(left == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(value_ruin_delay(cl, -0.1, z1, BarrierPolicy{1.0}, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(value_ruin_delay(cl, 0.1, z1, BarrierPolicy{-1.0}, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(value_ruin_delay(cl, 0.1, z1, BarrierPolicy{1.0}, -0.5),
                    std::invalid_argument);
}

} // TEST_SUITE
