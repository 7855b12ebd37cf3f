#pragma once

#include <variant>

namespace levydiv {

/// Compound Poisson surplus: x + c t - sum of Exp(claim_rate) claims arriving
/// at rate claim_intensity.
struct CramerLundbergExp {
    double premium_rate;    // c
    double claim_intensity; // lambda
    double claim_rate;      // xi
};

/// Linear drift plus Brownian perturbation: x + drift t + volatility B_t.
struct BrownianDrift {
    double drift;      // c
    double volatility; // sigma
};

using RiskModel = std::variant<CramerLundbergExp, BrownianDrift>;

/// Constants derived from (model, q); variant-specific fields are only
/// meaningful for their variant.
struct ModelConstants {
    double q = 0.0;
    double phi_q = 0.0; // largest root of psi(theta) = q

    // CramerLundbergExp
    double xi_q = 0.0;     // claim rate under the Phi(q) tilt
    double lambda_q = 0.0; // arrival intensity under the Phi(q) tilt
    double q_plus = 0.0;   // largest root of psi = q (== phi_q)
    double q_minus = 0.0;  // smallest root of psi = q
    double a_plus = 0.0;
    double a_minus = 0.0;

    // BrownianDrift
    double c_q = 0.0;   // sqrt(c^2 + 2 q sigma^2)
    double delta = 0.0; // c_q / sigma^2
    double omega = 0.0; // c / sigma^2
};

/// Parameter validation: positivity plus the net profit condition for the
/// compound Poisson variant.
void validate(const RiskModel& model);

/// True when the scale function is smooth (Gaussian component present).
/// The compound Poisson variant has bounded variation and an atom W(0) = 1/c.
bool has_smooth_scale(const RiskModel& model);

/// Laplace exponent psi(theta), theta >= 0.
double laplace_exponent(const RiskModel& model, double theta);

/// psi'(theta).
double laplace_exponent_prime(const RiskModel& model, double theta);

/// psi'(0+), the net drift of the surplus.
double drift_at_zero(const RiskModel& model);

/// Right inverse Phi(q) of psi plus all derived constants, in closed form.
ModelConstants phi(const RiskModel& model, double q);

/// Esscher tilt by theta: the model class is closed under tilting and the
/// tilted exponent is psi(s + theta) - psi(theta).
RiskModel tilt(const RiskModel& model, double theta);

} // namespace levydiv
