#pragma once

#include "levydiv/levy_model.hpp"

#include <array>

namespace levydiv {

/// Evaluator for the q-scale function W^(q), its antiderivative and the
/// companion function Z^(q). Both supported variants have W as a sum of two
/// exponentials, so everything here is closed form.
class ScaleEval {
public:
    ScaleEval(RiskModel model, double q);

    const RiskModel& model() const noexcept { return model_; }
    double q() const noexcept { return q_; }
    const ModelConstants& constants() const noexcept { return constants_; }

    /// W^(q)(x); zero for x < 0.
    double W(double x) const;

    /// W^(q)'(x) for x > 0.
    double W_prime(double x) const;

    /// Antiderivative of W^(q) on [0, x]; zero for x <= 0.
    double W_bar(double x) const;

    /// Z^(q)(x) = 1 + q W_bar(x).
    double Z(double x) const;

    /// E_z[e^{-q tau_a^+}; tau_0^- > tau_a^+] = W(z)/W(a), 0 <= z <= a.
    double exit_up(double z, double a) const;

    /// E_z[e^{-q tau_0^-}; tau_0^- < tau_a^+] = Z(z) - Z(a) W(z)/W(a).
    double exit_down(double z, double a) const;

    /// Integral of e^{-beta y} W^(q)(y) over [0, x], closed form.
    double W_laplace_partial(double beta, double x) const;

    /// e^{beta z} Z_beta^{(u)}(z) - (u / (Phi(q) - beta)) W(z) with the growing
    /// exponential cancelled analytically; stable for large q where the naive
    /// difference of the two terms loses all precision. The u -> 0 limit of
    /// u / (Phi(q) - beta) is psi'(beta).
    double down_transform_core(double u, double beta, double z) const;

private:
    struct ExpTerm {
        double coeff;
        double rate;
    };

    RiskModel model_;
    double q_;
    ModelConstants constants_;
    std::array<ExpTerm, 2> terms_{};
};

/// H_q(beta, z): double Laplace transform (rate alpha in time, beta in the
/// undershoot) of the discounted joint law of the first passage below zero,
/// built from the tilted-scale relation e^{beta z} W_beta^{(u)} = W^{(p)}
/// with p = alpha + q.
double one_sided_down_transform(const RiskModel& model, double q, double alpha,
                                double beta, double z);

/// Time-Laplace transform of E_z[X_s; tau_0^- > s]:
/// z/alpha + psi'(0+)(1 - alpha H_0(0, z))/alpha^2 - d/dbeta H_0(beta, z)|_0,
/// accounting for the drift accrued after ruin.
double expected_position_transform(const RiskModel& model, double alpha, double z);

} // namespace levydiv
