#include "levydiv/scale.hpp"

#include <cmath>
#include <stdexcept>

namespace levydiv {

namespace {

// (e^{r x} - 1) / r with the r -> 0 limit.
double exp_integral(double r, double x) {
    if (std::abs(r * x) < 1e-8)
        return x * (1.0 + 0.5 * r * x + r * r * x * x / 6.0);
    return std::expm1(r * x) / r;
}

// psi extended to slightly negative theta (needed for the beta-derivative of
// the transforms); valid for theta > -claim_rate in the compound Poisson case.
double psi_ext(const RiskModel& model, double theta) {
    return std::visit([theta](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CramerLundbergExp>) {
            if (theta <= -m.claim_rate)
                throw std::invalid_argument("psi: theta outside the analytic domain");
            return m.premium_rate * theta -
                   m.claim_intensity * theta / (m.claim_rate + theta);
        } else {
            return m.drift * theta + 0.5 * m.volatility * m.volatility * theta * theta;
        }
    }, model);
}

} // namespace

ScaleEval::ScaleEval(RiskModel model, double q)
    : model_(std::move(model)), q_(q), constants_(phi(model_, q)) {
    std::visit([&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CramerLundbergExp>) {
            const double c = m.premium_rate;
            terms_[0] = {constants_.a_plus / c, constants_.q_plus};
            terms_[1] = {-constants_.a_minus / c, constants_.q_minus};
        } else {
            const double s2 = m.volatility * m.volatility;
            const double d = constants_.delta, w = constants_.omega;
            terms_[0] = {1.0 / (s2 * d), d - w};
            terms_[1] = {-1.0 / (s2 * d), -(d + w)};
        }
    }, model_);
}

double ScaleEval::W(double x) const {
    if (x < 0.0) return 0.0;
    return terms_[0].coeff * std::exp(terms_[0].rate * x) +
           terms_[1].coeff * std::exp(terms_[1].rate * x);
}

double ScaleEval::W_prime(double x) const {
    return terms_[0].coeff * terms_[0].rate * std::exp(terms_[0].rate * x) +
           terms_[1].coeff * terms_[1].rate * std::exp(terms_[1].rate * x);
}

double ScaleEval::W_bar(double x) const {
    if (x <= 0.0) return 0.0;
    return terms_[0].coeff * exp_integral(terms_[0].rate, x) +
           terms_[1].coeff * exp_integral(terms_[1].rate, x);
}

double ScaleEval::Z(double x) const { return 1.0 + q_ * W_bar(x); }

double ScaleEval::exit_up(double z, double a) const {
    if (!(a > 0.0) || !(z >= 0.0 && z <= a))
        throw std::invalid_argument("exit_up: requires 0 <= z <= a, a > 0");
    const double wa = W(a);
    if (!(wa > 0.0)) throw std::invalid_argument("exit_up: W(a) vanishes");
    return W(z) / wa;
}

double ScaleEval::exit_down(double z, double a) const {
    if (!(a > 0.0) || !(z >= 0.0 && z <= a))
        throw std::invalid_argument("exit_down: requires 0 <= z <= a, a > 0");
    const double wa = W(a);
    if (!(wa > 0.0)) throw std::invalid_argument("exit_down: W(a) vanishes");
    return Z(z) - Z(a) * W(z) / wa;
}

double ScaleEval::W_laplace_partial(double beta, double x) const {
    if (x <= 0.0) return 0.0;
    return terms_[0].coeff * exp_integral(terms_[0].rate - beta, x) +
           terms_[1].coeff * exp_integral(terms_[1].rate - beta, x);
}

double ScaleEval::down_transform_core(double u, double beta, double z) const {
    // Expanding e^{beta z} Z_beta^{(u)}(z) - ratio W(z) over the two
    // exponential terms, the e^{r0 z} = e^{Phi(q) z} contributions cancel
    // exactly, leaving only bounded factors:
    //   e^{beta z} [1 - ratio c0 - u c1/(r1 - beta)]
    //     + c1 e^{r1 z} [u/(r1 - beta) - ratio],
    // with ratio = u / (Phi(q) - beta) and r1 < 0.
    const double r0 = terms_[0].rate, r1 = terms_[1].rate;
    const double c0 = terms_[0].coeff, c1 = terms_[1].coeff;
    double ratio;
    if (std::abs(u) < 1e-11 * std::max(1.0, std::abs(q_))) {
        // beta == Phi(q) up to roundoff: take the limit psi'(beta)
        ratio = laplace_exponent_prime(model_, beta);
    } else {
        ratio = u / (r0 - beta);
    }
    const double t1 = u * c1 / (r1 - beta);
    return std::exp(beta * z) * (1.0 - ratio * c0 - t1) +
           std::exp(r1 * z) * (t1 - ratio * c1);
}

namespace {

// Shared by the public transform and its beta-derivative; beta may dip
// slightly below zero inside the analytic domain.
double transform_impl(const RiskModel& model, double q, double alpha,
                      double beta, double z) {
    const double p = alpha + q;
    const double u = p - psi_ext(model, beta);
    const ScaleEval sp(model, p);
    return sp.down_transform_core(u, beta, z) / alpha;
}

} // namespace

double one_sided_down_transform(const RiskModel& model, double q, double alpha,
                                double beta, double z) {
    if (!(alpha > 0.0)) throw std::invalid_argument("one_sided_down_transform: alpha must be > 0");
    if (!(beta >= 0.0)) throw std::invalid_argument("one_sided_down_transform: beta must be >= 0");
    if (!(z >= 0.0)) throw std::invalid_argument("one_sided_down_transform: z must be >= 0");
    return transform_impl(model, q, alpha, beta, z);
}

double expected_position_transform(const RiskModel& model, double alpha, double z) {
    if (!(alpha > 0.0)) throw std::invalid_argument("expected_position_transform: alpha must be > 0");
    if (!(z >= 0.0)) throw std::invalid_argument("expected_position_transform: z must be >= 0");
    const double h = 1e-5;
    const double d_beta = (transform_impl(model, 0.0, alpha, h, z) -
                           transform_impl(model, 0.0, alpha, -h, z)) /
                          (2.0 * h);
    // After ruin the free process keeps drifting at psi'(0+); the transform of
    // E_z[X_s] splits into the stopped part (d_beta) plus that drift tail.
    const double h0 = transform_impl(model, 0.0, alpha, 0.0, z);
    return z / alpha +
           drift_at_zero(model) * (1.0 - alpha * h0) / (alpha * alpha) - d_beta;
}

} // namespace levydiv
