#pragma once

#include "levydiv/levy_model.hpp"

namespace levydiv {

/// Implementation delay for dividend decisions: a decision taken at the
/// barrier pays out only after the surplus has stayed above the barrier for
/// an uninterrupted period d; dipping below the barrier cancels the pending
/// payment, hitting zero is classical ruin.
struct PaymentDelaySpec {
    double d = 0.0;

    void validate() const;
};

/// Free transition density of the compound Poisson surplus started at z:
/// an atom at z + c s (no claims) plus an absolutely continuous part.
struct ClTransitionDensity {
    double atom_position;
    double atom_weight;

    /// Absolutely continuous part at y (zero for y >= atom_position).
    double density(double y) const;

    double z, s;
    CramerLundbergExp model;
};

ClTransitionDensity transition_density_cl(double z, double s,
                                          const CramerLundbergExp& model);

/// P_x(tau_0^- < t): finite-horizon ruin probabilities.
double finite_time_ruin_cl(double x, double t, const CramerLundbergExp& model);
double finite_time_ruin_bm(double x, double t, const BrownianDrift& model);

/// Defective first-passage density d/dt P_z(tau_0^- < t); numerical for the
/// compound Poisson variant, closed inverse-Gaussian form for the Brownian one.
double first_passage_density_cl(double z, double t, const CramerLundbergExp& model);
double first_passage_density_bm(double z, double t, const BrownianDrift& model);

/// Absolutely continuous part of P_z(tau_0^- > d, X_d in dy). For the
/// compound Poisson variant the surviving atom equals the free atom
/// (weight e^{-lambda d} at z + c d) and is not included here.
double killed_density(const RiskModel& model, double z, double d, double y);

/// v(x) = (W(x)/W(a)) v(a) for 0 <= x <= a.
double value_below(const RiskModel& model, double q, double a, double va, double x);

/// Value above the barrier given the boundary value va = v(a).
double value_above_cl(const CramerLundbergExp& model, double q,
                      const PaymentDelaySpec& spec, double a, double va, double x);
double value_above_bm(const BrownianDrift& model, double q,
                      const PaymentDelaySpec& spec, double a, double va, double x);
double value_above(const RiskModel& model, double q, const PaymentDelaySpec& spec,
                   double a, double va, double x);

/// Boundary value v(a): linear solve at x = a for the compound Poisson
/// variant, smooth paste of the one-sided derivatives for the Brownian one.
double solve_boundary_value(const RiskModel& model, double q,
                            const PaymentDelaySpec& spec, double a);

} // namespace levydiv
