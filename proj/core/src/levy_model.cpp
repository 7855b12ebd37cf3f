#include "levydiv/levy_model.hpp"

#include <cmath>
#include <stdexcept>

namespace levydiv {

void validate(const RiskModel& model) {
    std::visit([](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CramerLundbergExp>) {
            if (!(m.premium_rate > 0.0 && m.claim_intensity > 0.0 && m.claim_rate > 0.0))
                throw std::invalid_argument("CramerLundbergExp: parameters must be > 0");
            if (!(m.claim_intensity / (m.premium_rate * m.claim_rate) < 1.0))
                throw std::invalid_argument("CramerLundbergExp: net profit condition lambda/(c xi) < 1 violated");
        } else {
            if (!(m.drift > 0.0 && m.volatility > 0.0))
                throw std::invalid_argument("BrownianDrift: parameters must be > 0");
        }
    }, model);
}

bool has_smooth_scale(const RiskModel& model) {
    return std::holds_alternative<BrownianDrift>(model);
}

double laplace_exponent(const RiskModel& model, double theta) {
    if (!(theta >= 0.0) || !std::isfinite(theta))
        throw std::invalid_argument("laplace_exponent: theta must be finite and >= 0");
    return std::visit([theta](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CramerLundbergExp>) {
            return m.premium_rate * theta -
                   m.claim_intensity * theta / (m.claim_rate + theta);
        } else {
            return m.drift * theta + 0.5 * m.volatility * m.volatility * theta * theta;
        }
    }, model);
}

double laplace_exponent_prime(const RiskModel& model, double theta) {
    return std::visit([theta](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CramerLundbergExp>) {
            const double s = m.claim_rate + theta;
            return m.premium_rate - m.claim_intensity * m.claim_rate / (s * s);
        } else {
            return m.drift + m.volatility * m.volatility * theta;
        }
    }, model);
}

double drift_at_zero(const RiskModel& model) {
    return laplace_exponent_prime(model, 0.0);
}

ModelConstants phi(const RiskModel& model, double q) {
    if (!(q >= 0.0)) throw std::invalid_argument("phi: q must be >= 0");
    validate(model);
    ModelConstants k;
    k.q = q;
    std::visit([&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CramerLundbergExp>) {
            const double c = m.premium_rate, lam = m.claim_intensity, xi = m.claim_rate;
            const double b = q + lam - xi * c;
            const double disc = std::sqrt(b * b + 4.0 * c * q * xi);
            k.q_plus = (b + disc) / (2.0 * c);
            k.q_minus = (b - disc) / (2.0 * c);
            k.phi_q = k.q_plus;
            k.xi_q = xi + k.phi_q;
            k.lambda_q = lam * xi / k.xi_q;
            k.a_plus = (xi + k.q_plus) / (k.q_plus - k.q_minus);
            k.a_minus = (xi + k.q_minus) / (k.q_plus - k.q_minus);
        } else {
            const double c = m.drift, s2 = m.volatility * m.volatility;
            k.c_q = std::sqrt(c * c + 2.0 * q * s2);
            k.phi_q = (k.c_q - c) / s2;
            k.delta = k.c_q / s2;
            k.omega = c / s2;
        }
    }, model);
    return k;
}

RiskModel tilt(const RiskModel& model, double theta) {
    if (!(theta >= 0.0)) throw std::invalid_argument("tilt: theta must be >= 0");
    return std::visit([theta](const auto& m) -> RiskModel {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CramerLundbergExp>) {
            const double xi_t = m.claim_rate + theta;
            return CramerLundbergExp{m.premium_rate,
                                     m.claim_intensity * m.claim_rate / xi_t, xi_t};
        } else {
            return BrownianDrift{m.drift + m.volatility * m.volatility * theta,
                                 m.volatility};
        }
    }, model);
}

} // namespace levydiv
