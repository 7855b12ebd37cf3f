#include "levydiv/dividend_payment_delay.hpp"

#include "levydiv/numerics.hpp"
#include "levydiv/scale.hpp"

#include <cmath>
#include <stdexcept>

namespace levydiv {

void PaymentDelaySpec::validate() const {
    if (!(d >= 0.0)) throw std::invalid_argument("PaymentDelaySpec: d must be >= 0");
}

double ClTransitionDensity::density(double y) const {
    const double w = atom_position - y;
    if (w <= 0.0) return 0.0;
    const double lam_s = model.claim_intensity * s;
    const double xi = model.claim_rate;
    // sum_{k>=1} Po(k; lambda s) Erlang(k, xi)(w), truncated at a Poisson tail
    // below 1e-12.
    double poisson = std::exp(-lam_s); // k = 0 mass
    double tail = 1.0 - poisson;
    double erlang = xi * std::exp(-xi * w); // Erlang(1) at w
    double sum = 0.0;
    for (int k = 1; k < 10'000; ++k) {
        poisson *= lam_s / k;
        sum += poisson * erlang;
        tail -= poisson;
        if (tail < 1e-12) break;
        erlang *= xi * w / k;
    }
    return sum;
}

ClTransitionDensity transition_density_cl(double z, double s,
                                          const CramerLundbergExp& model) {
    if (!(s > 0.0)) throw std::invalid_argument("transition_density_cl: s must be > 0");
    validate(RiskModel{model});
    ClTransitionDensity out;
    out.z = z;
    out.s = s;
    out.model = model;
    out.atom_position = z + model.premium_rate * s;
    out.atom_weight = std::exp(-model.claim_intensity * s);
    return out;
}

double finite_time_ruin_cl(double x, double t, const CramerLundbergExp& model) {
    if (!(x >= 0.0 && t >= 0.0))
        throw std::invalid_argument("finite_time_ruin_cl: requires x, t >= 0");
    if (t == 0.0) return 0.0;
    const double c = model.premium_rate, lam = model.claim_intensity,
                 xi = model.claim_rate;
    // Reduce to premium 1 and unit-mean claims: u = xi x, T = c xi t,
    // rho = lambda / (c xi) < 1 by net profit.
    const double rho = lam / (c * xi);
    const double u = xi * x;
    const double T = c * xi * t;
    const double sr = std::sqrt(rho);

    auto integrand = [&](double theta) {
        const double ct = std::cos(theta), st = std::sin(theta);
        const double f1 =
            rho * std::exp(2.0 * sr * T * ct - (1.0 + rho) * T + u * (sr * ct - 1.0));
        const double f2 = std::cos(u * sr * st) - std::cos(u * sr * st + 2.0 * theta);
        const double f3 = 1.0 + rho - 2.0 * sr * ct;
        return f1 * f2 / f3;
    };
    const double correction = integrate(integrand, 0.0, M_PI, {1e-11, 1e-11, 1'000'000});
    const double p = rho * std::exp(-(1.0 - rho) * u) - correction / M_PI;
    return std::clamp(p, 0.0, 1.0);
}

double finite_time_ruin_bm(double x, double t, const BrownianDrift& model) {
    if (!(x >= 0.0 && t >= 0.0))
        throw std::invalid_argument("finite_time_ruin_bm: requires x, t >= 0");
    if (t == 0.0) return x > 0.0 ? 0.0 : 1.0;
    const double c = model.drift, sigma = model.volatility;
    const double s = sigma * std::sqrt(t);
    // Inverse-Gaussian first passage of x + c t + sigma B_t below zero.
    return std_normal_cdf((-x - c * t) / s) +
           std::exp(-2.0 * c * x / (sigma * sigma)) * std_normal_cdf((-x + c * t) / s);
}

double first_passage_density_cl(double z, double t, const CramerLundbergExp& model) {
    if (!(t > 0.0)) throw std::invalid_argument("first_passage_density_cl: t must be > 0");
    // h large enough that the quadrature error inside finite_time_ruin_cl
    // stays well below the O(h^2) difference bias.
    const double h = std::min(1e-3 * std::max(1.0, t), 0.5 * t);
    return (finite_time_ruin_cl(z, t + h, model) -
            finite_time_ruin_cl(z, t - h, model)) /
           (2.0 * h);
}

double first_passage_density_bm(double z, double t, const BrownianDrift& model) {
    if (!(t > 0.0)) throw std::invalid_argument("first_passage_density_bm: t must be > 0");
    if (!(z > 0.0)) throw std::invalid_argument("first_passage_density_bm: z must be > 0");
    const double c = model.drift, s2 = model.volatility * model.volatility;
    const double dev = z + c * t;
    return z / std::sqrt(2.0 * M_PI * t * t * t * s2) *
           std::exp(-dev * dev / (2.0 * s2 * t));
}

namespace {

// Density at y of the position s time units after passing below zero, the
// undershoot being Exp(xi) by lack of memory:
// xi e^{-lambda s - xi(cs - y)} I0(2 sqrt(lambda s xi (cs - y))), y < cs.
double overshoot_kernel_cl(double s, double y, const CramerLundbergExp& m) {
    const double u = m.premium_rate * s - y;
    if (u <= 0.0 || s <= 0.0) return 0.0;
    const double lam_s = m.claim_intensity * s;
    const double xi = m.claim_rate;
    return xi * std::exp(-lam_s - xi * u) * bessel_i0(2.0 * std::sqrt(lam_s * xi * u));
}

double killed_density_cl(double z, double d, double y, const CramerLundbergExp& m) {
    const ClTransitionDensity free = transition_density_cl(z, d, m);
    auto corr = [&](double t) {
        if (t <= 0.0) return 0.0;
        return first_passage_density_cl(z, t, m) * overshoot_kernel_cl(d - t, y, m);
    };
    // Kernel support requires c(d - t) > y.
    const double t_hi = y > 0.0 ? std::min(d, d - y / m.premium_rate) : d;
    double correction = 0.0;
    if (t_hi > 0.0)
        correction = integrate(corr, 0.0, t_hi, {1e-7, 1e-6, 200'000});
    return free.density(y) - correction;
}

// Reflection form of free density minus the first-passage convolution; the
// convolution spikes at t ~ (z/sigma)^2 and is hostile to quadrature, the
// closed form is exact.
double killed_density_bm(double z, double d, double y, const BrownianDrift& m) {
    if (z == 0.0) return 0.0; // killed immediately at the boundary
    const double sigma = m.volatility, c = m.drift;
    const double sd = sigma * std::sqrt(d);
    return (std_normal_pdf((y - z - c * d) / sd) -
            std::exp(-2.0 * c * z / (sigma * sigma)) *
                std_normal_pdf((y + z - c * d) / sd)) /
           sd;
}

// E_z[e^{-q tau}; tau <= d]: Esscher tilt by Phi-hat turns the discounting
// into a drift change, leaving the passage CDF at drift c_q.
double discounted_passage_bm(double z, double q, double d, const BrownianDrift& m) {
    if (z == 0.0) return 1.0; // tau = 0 at the boundary
    const double s2 = m.volatility * m.volatility;
    const double c_q = std::sqrt(m.drift * m.drift + 2.0 * q * s2);
    return std::exp((c_q - m.drift) * z / s2) *
           finite_time_ruin_bm(z, d, BrownianDrift{c_q, m.volatility});
}

} // namespace

double killed_density(const RiskModel& model, double z, double d, double y) {
    if (!(z >= 0.0 && d > 0.0))
        throw std::invalid_argument("killed_density: requires z >= 0, d > 0");
    return std::visit([&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CramerLundbergExp>)
            return killed_density_cl(z, d, y, m);
        else
            return killed_density_bm(z, d, y, m);
    }, model);
}

double value_below(const RiskModel& model, double q, double a, double va, double x) {
    if (!(a > 0.0) || !(x >= 0.0 && x <= a))
        throw std::invalid_argument("value_below: requires 0 <= x <= a, a > 0");
    const ScaleEval sq(model, q);
    return sq.W(x) / sq.W(a) * va;
}

double value_above_cl(const CramerLundbergExp& model, double q,
                      const PaymentDelaySpec& spec, double a, double va, double x) {
    spec.validate();
    if (!(x >= a)) throw std::invalid_argument("value_above_cl: requires x >= a");
    if (spec.d == 0.0) return (x - a) + va;
    const double c = model.premium_rate, xi = model.claim_rate;
    const double d = spec.d;
    const double z = x - a;
    const double disc = std::exp(-q * d);

    // Mean of y over the killed law: free part minus the first-passage
    // convolution, both restricted to y >= 0.
    const ClTransitionDensity free = transition_density_cl(z, d, model);
    double mean_free = free.atom_position * free.atom_weight;
    mean_free += integrate([&](double y) { return y * free.density(y); }, 0.0,
                           free.atom_position, {1e-9, 1e-8, 200'000});
    auto kernel_mean = [&](double s) {
        if (!(c * s > 0.0)) return 0.0;
        return integrate([&](double y) { return y * overshoot_kernel_cl(s, y, model); },
                         0.0, c * s, {1e-9, 1e-8, 200'000});
    };
    const double mean_corr = integrate(
        [&](double t) {
            if (t <= 0.0) return 0.0;
            return first_passage_density_cl(z, t, model) * kernel_mean(d - t);
        },
        0.0, d, {1e-7, 1e-6, 200'000});
    const double first_term = disc * (mean_free - mean_corr);

    const double ruin_by_d = finite_time_ruin_cl(z, d, model);
    const double survive_term = disc * (1.0 - ruin_by_d);

    // int_0^d e^{-qt} P_z(tau in dt) by parts: e^{-qd} F(d) + q int e^{-qt} F(t) dt.
    const double discounted_passage =
        disc * ruin_by_d +
        q * integrate([&](double t) { return std::exp(-q * t) * finite_time_ruin_cl(z, t, model); },
                      0.0, d, {1e-9, 1e-8, 200'000});

    // Re-ascent factor int_0^a (W(a - y)/W(a)) xi e^{-xi y} dy, closed form.
    const ScaleEval sq(RiskModel{model}, q);
    const double reascent =
        xi * std::exp(-xi * a) * sq.W_laplace_partial(-xi, a) / sq.W(a);

    return first_term + va * (survive_term + discounted_passage * reascent);
}

double value_above_bm(const BrownianDrift& model, double q,
                      const PaymentDelaySpec& spec, double a, double va, double x) {
    spec.validate();
    if (!(x >= a)) throw std::invalid_argument("value_above_bm: requires x >= a");
    if (spec.d == 0.0) return (x - a) + va;
    const double d = spec.d;
    const double z = x - a;
    const double disc = std::exp(-q * d);
    const double sigma = model.volatility, c = model.drift;

    const double y_hi = z + c * d + 10.0 * sigma * std::sqrt(d);
    const double first_term =
        z == 0.0 ? 0.0
                 : disc * integrate(
                       [&](double y) { return y * killed_density_bm(z, d, y, model); },
                       1e-10, y_hi, {1e-8, 1e-7, 200'000});

    const double ruin_by_d = finite_time_ruin_bm(z, d, model);
    const double discounted_passage = discounted_passage_bm(z, q, d, model);
    return first_term + va * (disc * (1.0 - ruin_by_d) + discounted_passage);
}

double value_above(const RiskModel& model, double q, const PaymentDelaySpec& spec,
                   double a, double va, double x) {
    return std::visit([&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CramerLundbergExp>)
            return value_above_cl(m, q, spec, a, va, x);
        else
            return value_above_bm(m, q, spec, a, va, x);
    }, model);
}

namespace {

// One-sided derivative at z = 0+ of g, second order, Richardson once.
double forward_derivative(const std::function<double(double)>& g, double h) {
    auto d2 = [&](double step) {
        return (-3.0 * g(0.0) + 4.0 * g(step) - g(2.0 * step)) / (2.0 * step);
    };
    const double coarse = d2(h), fine = d2(0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

} // namespace

double solve_boundary_value(const RiskModel& model, double q,
                            const PaymentDelaySpec& spec, double a) {
    spec.validate();
    if (!(a > 0.0)) throw std::invalid_argument("solve_boundary_value: a must be > 0");
    if (!(q > 0.0)) throw std::invalid_argument("solve_boundary_value: q must be > 0");

    const ScaleEval sq(model, q);
    if (spec.d == 0.0) return sq.W(a) / sq.W_prime(a); // classical barrier value

    return std::visit([&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CramerLundbergExp>) {
            // v(a) = A + B v(a) with A, B read off at x = a.
            const double a_coef = value_above_cl(m, q, spec, a, 0.0, a);
            const double b_coef = value_above_cl(m, q, spec, a, 1.0, a) - a_coef;
            if (!(b_coef < 1.0 - 1e-12))
                throw std::runtime_error("solve_boundary_value: ill-posed boundary (B >= 1)");
            return a_coef / (1.0 - b_coef);
        } else {
            // Smooth paste: va W'(a)/W(a) = A' + B' va.
            const double h = 1e-4 * std::max(1.0, a);
            const double a_prime = forward_derivative(
                [&](double z) { return value_above_bm(m, q, spec, a, 0.0, a + z); }, h);
            const double b_prime =
                forward_derivative(
                    [&](double z) { return value_above_bm(m, q, spec, a, 1.0, a + z); },
                    h) -
                a_prime;
            const double denom = sq.W_prime(a) / sq.W(a) - b_prime;
            if (!(std::abs(denom) > 1e-12))
                throw std::runtime_error("solve_boundary_value: degenerate smooth-paste solve");
            const double va = a_prime / denom;
            if (!(va > 0.0))
                throw std::runtime_error("solve_boundary_value: non-positive boundary value");
            return va;
        }
    }, model);
}

} // namespace levydiv
