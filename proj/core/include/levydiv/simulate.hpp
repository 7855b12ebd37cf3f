#pragma once

#include "levydiv/dividend_payment_delay.hpp"
#include "levydiv/dividend_ruin_delay.hpp"
#include "levydiv/levy_model.hpp"
#include "levydiv/parisian_ruin.hpp"

#include <cstdint>

namespace levydiv {

struct SimConfig {
    std::uint64_t n_paths = 10'000;
    std::uint64_t seed = 1;
    double euler_step = 1e-3;        // BM paths only
    double horizon_epsilon = 1e-10;  // simulate until e^{-q t} < horizon_epsilon
    std::uint64_t batch_size = 1'000;

    void validate() const;
};

struct SimEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_effective = 0;
    double censoring_bias_bound = 0.0;
};

/// Discounted dividends of the barrier strategy with Parisian ruin delay.
/// Compound Poisson paths are exact (event-driven, closed-form discounted
/// accrual at the barrier); Brownian paths use Euler steps with
/// running-supremum reflection and a per-step Parisian clock.
SimEstimate simulate_ruin_delay(const RiskModel& model, double q,
                                const ParisianSpec& spec, const BarrierPolicy& policy,
                                double x, const SimConfig& cfg);

/// Discounted dividends of the payment-delay strategy: the clock runs while
/// the surplus stays at or above the barrier, dips below cancel the pending
/// decision, expiry pays the excess as a lump and restarts from the barrier;
/// hitting zero is classical ruin.
SimEstimate simulate_payment_delay(const RiskModel& model, double q,
                                   const PaymentDelaySpec& spec,
                                   const BarrierPolicy& policy, double x,
                                   const SimConfig& cfg);

/// Fraction of paths with a completed excursion below zero of length >= zeta
/// before time_cap; the classical-ruin tail from the terminal position of
/// surviving paths is reported as censoring_bias_bound. x may be negative
/// (path starts mid-excursion with a fresh clock); a zero claim intensity is
/// accepted to exercise the deterministic return-time logic.
SimEstimate simulate_parisian_ruin_prob(const RiskModel& model,
                                        const ParisianSpec& spec, double x,
                                        const SimConfig& cfg, double time_cap);

/// Mean of the free (uncontrolled, unkilled) surplus at time t; exact events
/// for the compound Poisson variant, Euler for the Brownian one. Exposed for
/// drift calibration checks against x + psi'(0+) t.
SimEstimate simulate_free_position_mean(const RiskModel& model, double x, double t,
                                        const SimConfig& cfg);

} // namespace levydiv
