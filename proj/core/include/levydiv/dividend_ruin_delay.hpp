#pragma once

#include "levydiv/levy_model.hpp"
#include "levydiv/parisian_ruin.hpp"

#include <functional>
#include <span>
#include <vector>

namespace levydiv {

/// Reflecting dividend barrier: everything above `a` is paid out.
struct BarrierPolicy {
    double a = 0.0;

    void validate() const;
};

/// Grid-wise variational-inequality check results for a candidate value
/// function.
struct VerifyReport {
    std::vector<double> grid;
    std::vector<double> hjb_values;        // (Gamma v - q v)(x)
    std::vector<double> derivative_values; // v'(x)
    double max_violation = 0.0;
    bool passed = false;
};

/// Value of the barrier strategy with Parisian ruin delay:
/// V(x)/V'(a) below the barrier, linear with slope one above it.
double value_ruin_delay(const RiskModel& model, double q, const ParisianSpec& spec,
                        const BarrierPolicy& policy, double x,
                        DBesselVariant variant = DBesselVariant::tilted);

/// One-sided derivative of the value function (left branch at the barrier).
double value_ruin_delay_prime(const RiskModel& model, double q,
                              const ParisianSpec& spec, const BarrierPolicy& policy,
                              double x,
                              DBesselVariant variant = DBesselVariant::tilted);

/// Barrier minimizing V'; closed form via V''(a*) = 0 when the log argument
/// is admissible, zero otherwise.
double optimal_barrier(const RiskModel& model, double q, const ParisianSpec& spec,
                       DBesselVariant variant = DBesselVariant::tilted);

/// Extended generator applied to f at x; derivatives of f taken by central
/// difference, the jump integral by quadrature.
double generator_apply(const RiskModel& model,
                       const std::function<double(double)>& f, double x);

/// Grid check of the variational inequalities for the barrier-strategy value
/// function: equality (within tol) at or below the barrier, <= slack above,
/// v' >= 1 - slack everywhere.
VerifyReport hjb_verify(const RiskModel& model, double q, const ParisianSpec& spec,
                        const BarrierPolicy& policy, std::span<const double> grid,
                        double tol,
                        DBesselVariant variant = DBesselVariant::tilted);

/// 200 geometrically spaced points on (0.01, a + 10].
std::vector<double> default_verify_grid(double a);

} // namespace levydiv
