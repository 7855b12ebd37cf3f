#pragma once

#include "levydiv/levy_model.hpp"

namespace levydiv {

/// Grace window for ruin: ruin is declared only after the surplus stays
/// below zero for an uninterrupted stretch of length zeta.
struct ParisianSpec {
    double zeta = 0.0;

    void validate() const;
};

/// Which claim rate enters the Bessel radicand of the survival factor D for
/// the compound Poisson variant. The source identity prints the base (pre-
/// tilt) rate where every other occurrence is tilted; cross-validation against
/// simulation selects `tilted`, which is the default everywhere.
enum class DBesselVariant { tilted, base };

/// Survival factor D for a (tilted) compound Poisson model:
/// D = 1 - int_0^zeta sqrt(c xi/lambda) e^{-(lambda + c xi) t} t^{-1}
///       I1(2 t sqrt(c lambda xi_bessel)) dt.
/// `bessel_claim_rate` is the rate used inside the radicand.
double cl_survival_factor(const CramerLundbergExp& tilted_model, double zeta,
                          double bessel_claim_rate);

/// Psi(x) = 2 sqrt(pi) x N(sqrt(2) x) - sqrt(pi) x + e^{-x^2}.
double bm_psi(double x);

/// Tilted Parisian survival function V^(q)(x) = e^{Phi(q) x} times the
/// survival probability of the Phi(q)-tilted model, in closed form for both
/// variants.
double parisian_V(const RiskModel& model, double q, const ParisianSpec& spec,
                  double x, DBesselVariant variant = DBesselVariant::tilted);

/// d^k/dx^k V^(q)(x) for k = 1, 2 (analytic; V is a sum of two exponentials).
double parisian_V_derivative(const RiskModel& model, double q,
                             const ParisianSpec& spec, double x, int order,
                             DBesselVariant variant = DBesselVariant::tilted);

/// 1 - V^(0)(x); requires psi'(0+) > 0.
double parisian_ruin_probability(const RiskModel& model, const ParisianSpec& spec,
                                 double x,
                                 DBesselVariant variant = DBesselVariant::tilted);

/// Internal shape of V: V(x) = e^{phi x} - factor * e^{(phi - gamma) x}.
/// Exposed so the barrier optimizer can use the closed form directly.
struct ParisianVForm {
    double phi;    // Phi(q)
    double gamma;  // decay rate of the correction term
    double factor; // multiplicative survival factor
};

ParisianVForm parisian_V_form(const RiskModel& model, double q,
                              const ParisianSpec& spec,
                              DBesselVariant variant = DBesselVariant::tilted);

} // namespace levydiv
