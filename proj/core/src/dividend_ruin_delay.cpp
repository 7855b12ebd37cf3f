#include "levydiv/dividend_ruin_delay.hpp"

#include "levydiv/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace levydiv {

void BarrierPolicy::validate() const {
    if (!(a >= 0.0)) throw std::invalid_argument("BarrierPolicy: a must be >= 0");
}

double value_ruin_delay(const RiskModel& model, double q, const ParisianSpec& spec,
                        const BarrierPolicy& policy, double x,
                        DBesselVariant variant) {
    if (!(q > 0.0)) throw std::invalid_argument("value_ruin_delay: q must be > 0");
    if (!(x >= 0.0)) throw std::invalid_argument("value_ruin_delay: x must be >= 0");
    policy.validate();
    const double vpa = parisian_V_derivative(model, q, spec, policy.a, 1, variant);
    if (!(vpa > 0.0))
        throw std::logic_error("value_ruin_delay: V'(a) <= 0, internal inconsistency");
    if (x <= policy.a) return parisian_V(model, q, spec, x, variant) / vpa;
    return x - policy.a + parisian_V(model, q, spec, policy.a, variant) / vpa;
}

double value_ruin_delay_prime(const RiskModel& model, double q,
                              const ParisianSpec& spec, const BarrierPolicy& policy,
                              double x, DBesselVariant variant) {
    if (x > policy.a) return 1.0;
    const double vpa = parisian_V_derivative(model, q, spec, policy.a, 1, variant);
    if (!(vpa > 0.0))
        throw std::logic_error("value_ruin_delay_prime: V'(a) <= 0, internal inconsistency");
    return parisian_V_derivative(model, q, spec, x, 1, variant) / vpa;
}

double optimal_barrier(const RiskModel& model, double q, const ParisianSpec& spec,
                       DBesselVariant variant) {
    if (!(q > 0.0)) throw std::invalid_argument("optimal_barrier: q must be > 0");
    const ParisianVForm f = parisian_V_form(model, q, spec, variant);
    const double ratio = 1.0 - f.gamma / f.phi;
    const double arg = f.factor * ratio * ratio;
    if (!(arg > 1.0)) return 0.0; // infimum convention: V' minimized at the origin
    const double a_star = std::log(arg) / f.gamma;

    // Internal consistency: a_star solves V''(a) = 0.
    const double second = parisian_V_derivative(model, q, spec, a_star, 2, variant);
    const double scale = f.phi * f.phi * std::exp(f.phi * a_star) +
                         std::abs(f.factor) * (f.phi - f.gamma) * (f.phi - f.gamma) *
                             std::exp((f.phi - f.gamma) * a_star);
    if (std::abs(second) > 1e-6 * scale)
        throw std::logic_error("optimal_barrier: closed form does not satisfy V''(a*) = 0");
    return a_star;
}

double generator_apply(const RiskModel& model,
                       const std::function<double(double)>& f, double x) {
    return std::visit([&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        const double h = 1e-5 * std::max(1.0, std::abs(x));
        if constexpr (std::is_same_v<T, BrownianDrift>) {
            const double f1 = differentiate(f, x, 1, h);
            const double f2 = differentiate(f, x, 2, h);
            return 0.5 * m.volatility * m.volatility * f2 + m.drift * f1;
        } else {
            const double xi = m.claim_rate;
            const double fx = f(x);
            const double z_max = -std::log(1e-12) / xi;
            const double jump = integrate(
                [&](double z) { return (f(x - z) - fx) * xi * std::exp(-xi * z); },
                0.0, z_max, {1e-11, 1e-11, 1'000'000});
            return m.premium_rate * differentiate(f, x, 1, h) + m.claim_intensity * jump;
        }
    }, model);
}

namespace {

// Closed-form int_0^inf v(x - z) xi e^{-xi z} dz for the piecewise value
// function (exponential below the barrier, linear above), split at z = x - a.
double jump_average_cl(const CramerLundbergExp& m, const ParisianVForm& f,
                       double vpa, double va, double a, double x) {
    const double xi = m.claim_rate;
    const double r_minus = f.phi - f.gamma; // the other root of psi = q
    auto below_part = [&](double y) {
        // int_0^inf v(y - w) xi e^{-xi w} dw for y <= a
        return (std::exp(f.phi * y) * xi / (xi + f.phi) -
                f.factor * std::exp(r_minus * y) * xi / (xi + r_minus)) /
               vpa;
    };
    if (x <= a) return below_part(x);
    // z in [0, x - a): linear branch; z >= x - a: exponential branch shifted.
    const double s = x - a;
    const double e = std::exp(-xi * s);
    // int_0^s (x - a - z + va) xi e^{-xi z} dz
    const double linear = (s + va) * (1.0 - e) - (1.0 / xi - (s + 1.0 / xi) * e);
    return linear + e * below_part(a);
}

} // namespace

VerifyReport hjb_verify(const RiskModel& model, double q, const ParisianSpec& spec,
                        const BarrierPolicy& policy, std::span<const double> grid,
                        double tol, DBesselVariant variant) {
    if (!(tol > 0.0)) throw std::invalid_argument("hjb_verify: tol must be > 0");
    const double a = policy.a;
    const ParisianVForm f = parisian_V_form(model, q, spec, variant);
    const double vpa = parisian_V_derivative(model, q, spec, a, 1, variant);
    const double va = parisian_V(model, q, spec, a, variant) / vpa;
    constexpr double kIneqSlack = 1e-8;
    constexpr double kDerivSlack = 1e-8;

    VerifyReport report;
    report.grid.assign(grid.begin(), grid.end());
    report.passed = true;

    for (double x : grid) {
        const double vx = value_ruin_delay(model, q, spec, policy, x, variant);
        const double vp = value_ruin_delay_prime(model, q, spec, policy, x, variant);
        double hjb = 0.0;
        std::visit([&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, BrownianDrift>) {
                const double vpp =
                    x <= a ? parisian_V_derivative(model, q, spec, x, 2, variant) / vpa
                           : 0.0;
                hjb = 0.5 * m.volatility * m.volatility * vpp + m.drift * vp - q * vx;
            } else {
                const double avg = jump_average_cl(m, f, vpa, va, a, x);
                hjb = m.premium_rate * vp + m.claim_intensity * (avg - vx) - q * vx;
            }
        }, model);

        report.hjb_values.push_back(hjb);
        report.derivative_values.push_back(vp);

        const double eq_violation = x <= a ? std::abs(hjb) : std::max(hjb, 0.0);
        const double deriv_violation = std::max(1.0 - vp, 0.0);
        report.max_violation =
            std::max({report.max_violation, eq_violation, deriv_violation});
        if (x <= a && std::abs(hjb) > tol) report.passed = false;
        if (x > a && hjb > kIneqSlack) report.passed = false;
        if (vp < 1.0 - kDerivSlack) report.passed = false;
    }
    return report;
}

std::vector<double> default_verify_grid(double a) {
    constexpr int n = 200;
    const double lo = 0.01, hi = a + 10.0;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i)
        grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return grid;
}

} // namespace levydiv
