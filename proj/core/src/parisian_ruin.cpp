#include "levydiv/parisian_ruin.hpp"

#include "levydiv/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace levydiv {

void ParisianSpec::validate() const {
    if (!(zeta >= 0.0)) throw std::invalid_argument("ParisianSpec: zeta must be >= 0");
}

double cl_survival_factor(const CramerLundbergExp& tilted_model, double zeta,
                          double bessel_claim_rate) {
    validate(RiskModel{tilted_model});
    if (!(zeta >= 0.0)) throw std::invalid_argument("cl_survival_factor: zeta must be >= 0");
    if (!(bessel_claim_rate > 0.0))
        throw std::invalid_argument("cl_survival_factor: bessel_claim_rate must be > 0");
    if (zeta == 0.0) return 1.0;

    const double c = tilted_model.premium_rate;
    const double lam = tilted_model.claim_intensity;
    const double xi = tilted_model.claim_rate;
    const double front = std::sqrt(c * xi / lam);
    const double decay = lam + c * xi;
    const double root = std::sqrt(c * lam * bessel_claim_rate);

    auto integrand = [&](double t) {
        const double y = 2.0 * t * root;
        if (y < 1e-4) {
            // I1(y)/t = 2 root (1/2 + y^2/16 + ...) near t = 0
            return front * std::exp(-decay * t) * root * (1.0 + y * y / 8.0);
        }
        return front * std::exp(-decay * t) * bessel_i1(y) / t;
    };

    // Integrable endpoint: series value on [0, 1e-6], adaptive beyond.
    const double cut = std::min(zeta, 1e-6);
    double integral = integrand(0.5 * cut) * cut;
    if (zeta > cut) integral += integrate(integrand, cut, zeta, {1e-12, 1e-12, 1'000'000});
    return 1.0 - integral;
}

double bm_psi(double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("bm_psi: x must be >= 0");
    const double spi = std::sqrt(M_PI);
    return 2.0 * spi * x * std_normal_cdf(std::sqrt(2.0) * x) - spi * x +
           std::exp(-x * x);
}

namespace {

ParisianVForm compute_form(const RiskModel& model, double q,
                           const ParisianSpec& spec, DBesselVariant variant) {
    ParisianVForm form{};
    std::visit([&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        const ModelConstants k = phi(model, q);
        form.phi = k.phi_q;
        if constexpr (std::is_same_v<T, CramerLundbergExp>) {
            const double c = m.premium_rate;
            const CramerLundbergExp tilted{c, k.lambda_q, k.xi_q};
            const double bessel_rate =
                variant == DBesselVariant::tilted ? k.xi_q : m.claim_rate;
            const double d = cl_survival_factor(tilted, spec.zeta, bessel_rate);
            form.gamma = (c * k.xi_q - k.lambda_q) / c;
            form.factor = k.lambda_q * d / (c * k.xi_q - k.lambda_q * (1.0 - d));
        } else {
            const double sigma = m.volatility;
            const double eta = k.c_q / sigma * std::sqrt(spec.zeta / 2.0);
            const double psi_eta = bm_psi(eta);
            const double corr = eta * std::sqrt(M_PI);
            form.gamma = 2.0 * k.c_q / (sigma * sigma);
            form.factor = (psi_eta - corr) / (psi_eta + corr);
        }
    }, model);
    return form;
}

} // namespace

ParisianVForm parisian_V_form(const RiskModel& model, double q,
                              const ParisianSpec& spec, DBesselVariant variant) {
    spec.validate();
    if (!(q >= 0.0)) throw std::invalid_argument("parisian_V_form: q must be >= 0");

    using Key = std::tuple<double, double, double, double, double, int, int>;
    static std::mutex mutex;
    static std::map<Key, ParisianVForm> cache;

    Key key = std::visit([&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CramerLundbergExp>) {
            return Key{m.premium_rate, m.claim_intensity, m.claim_rate, q,
                       spec.zeta, static_cast<int>(variant), 0};
        } else {
            return Key{m.drift, m.volatility, 0.0, q, spec.zeta,
                       static_cast<int>(variant), 1};
        }
    }, model);

    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    const ParisianVForm form = compute_form(model, q, spec, variant);
    std::lock_guard lock(mutex);
    return cache.emplace(key, form).first->second;
}

double parisian_V(const RiskModel& model, double q, const ParisianSpec& spec,
                  double x, DBesselVariant variant) {
    if (!(x >= 0.0)) throw std::invalid_argument("parisian_V: x must be >= 0");
    const ParisianVForm f = parisian_V_form(model, q, spec, variant);
    return std::exp(f.phi * x) - f.factor * std::exp((f.phi - f.gamma) * x);
}

double parisian_V_derivative(const RiskModel& model, double q,
                             const ParisianSpec& spec, double x, int order,
                             DBesselVariant variant) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("parisian_V_derivative: order must be 1 or 2");
    if (!(x >= 0.0))
        throw std::invalid_argument("parisian_V_derivative: x must be >= 0");
    const ParisianVForm f = parisian_V_form(model, q, spec, variant);
    const double r = f.phi - f.gamma;
    const double p1 = order == 1 ? f.phi : f.phi * f.phi;
    const double p2 = order == 1 ? r : r * r;
    return p1 * std::exp(f.phi * x) - f.factor * p2 * std::exp(r * x);
}

double parisian_ruin_probability(const RiskModel& model, const ParisianSpec& spec,
                                 double x, DBesselVariant variant) {
    if (!(x >= 0.0)) throw std::invalid_argument("parisian_ruin_probability: x must be >= 0");
    if (!(drift_at_zero(model) > 0.0))
        throw std::invalid_argument(
            "parisian_ruin_probability: requires psi'(0+) > 0 (net profit)");
    return 1.0 - parisian_V(model, 0.0, spec, x, variant);
}

} // namespace levydiv
