#include "levydiv/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace levydiv {

void SimConfig::validate() const {
    if (n_paths < 1) throw std::invalid_argument("SimConfig: n_paths must be >= 1");
    if (!(euler_step > 0.0)) throw std::invalid_argument("SimConfig: euler_step must be > 0");
    if (!(horizon_epsilon > 0.0 && horizon_epsilon < 1.0))
        throw std::invalid_argument("SimConfig: horizon_epsilon must be in (0, 1)");
    if (batch_size < 1) throw std::invalid_argument("SimConfig: batch_size must be >= 1");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SplitMix64 {
    std::uint64_t s;
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

// Marsaglia-Tsang ziggurat tables for standard normal sampling (128 layers).
struct ZigguratTables {
    std::uint32_t kn[128];
    double wn[128], fn[128];

    ZigguratTables() {
        const double m1 = 2147483648.0;
        double dn = 3.442619855899, tn = dn;
        const double vn = 9.91256303526217e-3;
        const double q = vn / std::exp(-0.5 * dn * dn);
        kn[0] = static_cast<std::uint32_t>(dn / q * m1);
        kn[1] = 0;
        wn[0] = q / m1;
        wn[127] = dn / m1;
        fn[0] = 1.0;
        fn[127] = std::exp(-0.5 * dn * dn);
        for (int i = 126; i >= 1; --i) {
            dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
            kn[i + 1] = static_cast<std::uint32_t>(dn / tn * m1);
            tn = dn;
            fn[i] = std::exp(-0.5 * dn * dn);
            wn[i] = dn / m1;
        }
    }
};

const ZigguratTables g_zig;

// xoshiro256++, one instance per batch; streams derived from the master seed
// and the batch index through splitmix64.
class Rng {
public:
    Rng(std::uint64_t master_seed, std::uint64_t batch_index) {
        SplitMix64 sm{master_seed ^ (0x9E3779B97F4A7C15ULL * (batch_index + 1))};
        for (auto& w : s_) w = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    double uniform() { // (0, 1]
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    double normal() {
        for (;;) {
            const auto hz =
                static_cast<std::int32_t>(static_cast<std::uint32_t>(next()));
            const std::uint32_t iz = static_cast<std::uint32_t>(hz) & 127u;
            const std::uint32_t az =
                hz < 0 ? static_cast<std::uint32_t>(-static_cast<std::int64_t>(hz))
                       : static_cast<std::uint32_t>(hz);
            if (az < g_zig.kn[iz]) return hz * g_zig.wn[iz];
            if (iz == 0) { // tail beyond the base strip
                constexpr double r = 3.442619855899;
                double x, y;
                do {
                    x = -std::log(uniform()) / r;
                    y = -std::log(uniform());
                } while (y + y < x * x);
                return hz > 0 ? r + x : -(r + x);
            }
            const double x = hz * g_zig.wn[iz];
            if (g_zig.fn[iz] + uniform() * (g_zig.fn[iz - 1] - g_zig.fn[iz]) <
                std::exp(-0.5 * x * x))
                return x;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }
    std::uint64_t s_[4];
};

struct PathResult {
    double value;
    double bias;
};

// Batches run in fixed index order with per-batch streams, so the estimate is
// a pure function of (seed, n_paths, batch_size).
template <class PathFn>
SimEstimate run_batches(const SimConfig& cfg, PathFn&& path) {
    cfg.validate();
    double sum = 0.0, sumsq = 0.0, bias = 0.0;
    std::uint64_t done = 0;
    for (std::uint64_t batch = 0; done < cfg.n_paths; ++batch) {
        const std::uint64_t m =
            std::min<std::uint64_t>(cfg.batch_size, cfg.n_paths - done);
        Rng rng(cfg.seed, batch);
        double bsum = 0.0, bsumsq = 0.0, bbias = 0.0;
        for (std::uint64_t i = 0; i < m; ++i) {
            const PathResult r = path(rng);
            bsum += r.value;
            bsumsq += r.value * r.value;
            bbias += r.bias;
        }
        sum += bsum;
        sumsq += bsumsq;
        bias += bbias;
        done += m;
    }
    SimEstimate est;
    est.n_effective = cfg.n_paths;
    const auto n = static_cast<double>(cfg.n_paths);
    est.mean = sum / n;
    if (cfg.n_paths > 1) {
        const double var = std::max(0.0, (sumsq - n * est.mean * est.mean) / (n - 1.0));
        est.std_error = std::sqrt(var / n);
    }
    est.censoring_bias_bound = bias / n;
    return est;
}

// --- Parisian-delay barrier strategy ---------------------------------------

PathResult ruin_delay_cl(const CramerLundbergExp& m, double q, double zeta,
                         double a, double x, double t_max, Rng& rng) {
    const double c = m.premium_rate, lam = m.claim_intensity, xi = m.claim_rate;
    double value = 0.0, t = 0.0, U = x;
    if (U > a) {
        value += U - a;
        U = a;
    }
    double next_claim = rng.exponential(lam);
    double deadline = 0.0; // Parisian ruin time of the running excursion
    while (t < t_max) {
        if (U < 0.0) {
            const double back = t - U / c; // deterministic return absent claims
            if (deadline <= std::min(back, next_claim)) return {value, 0.0};
            if (next_claim < back) {
                U += c * (next_claim - t);
                t = next_claim;
                U -= rng.exponential(xi);
                next_claim = t + rng.exponential(lam);
            } else {
                t = back;
                U = 0.0;
            }
        } else if (U < a) {
            const double hit = t + (a - U) / c;
            if (next_claim < hit) {
                U += c * (next_claim - t);
                t = next_claim;
                U -= rng.exponential(xi);
                if (U < 0.0) deadline = t + zeta;
                next_claim = t + rng.exponential(lam);
            } else {
                t = hit;
                U = a;
            }
        } else { // at the barrier: continuous payout at rate c until a claim
            const double t2 = std::min(next_claim, t_max);
            value += c * (std::exp(-q * t) - std::exp(-q * t2)) / q;
            if (next_claim >= t_max) return {value, std::exp(-q * t_max) * c / q};
            t = next_claim;
            U = a - rng.exponential(xi);
            if (U < 0.0) deadline = t + zeta;
            next_claim = t + rng.exponential(lam);
        }
    }
    const double excess = U > a ? U - a : 0.0;
    return {value, std::exp(-q * t) * (excess + c / q)};
}

PathResult ruin_delay_bm(const BrownianDrift& m, double q, double zeta, double a,
                         double x, double t_max, double dt, Rng& rng) {
    const double mu = m.drift * dt, sg = m.volatility * std::sqrt(dt);
    const double df = std::exp(-q * dt);
    double value = x > a ? x - a : 0.0;
    double disc = 1.0, X = x, xbar = x, clock = 0.0;
    const auto n_steps = static_cast<long>(std::ceil(t_max / dt));
    for (long i = 0; i < n_steps; ++i) {
        X += mu + sg * rng.normal();
        disc *= df;
        if (X > xbar) {
            const double lo = xbar > a ? xbar : a;
            if (X > lo) value += (X - lo) * disc;
            xbar = X;
        }
        const double U = X - (xbar > a ? xbar - a : 0.0);
        if (U < 0.0) {
            clock += dt;
            if (clock >= zeta) return {value, 0.0};
        } else {
            clock = 0.0;
        }
    }
    return {value, disc * m.drift / q}; // U <= a at the horizon
}

// --- Payment-delay strategy ------------------------------------------------

PathResult payment_delay_cl(const CramerLundbergExp& m, double q, double d,
                            double a, double x, double t_max, Rng& rng) {
    const double c = m.premium_rate, lam = m.claim_intensity, xi = m.claim_rate;
    double value = 0.0, t = 0.0, U = x;
    bool armed = U >= a;
    double expiry = d;
    double next_claim = rng.exponential(lam);
    while (t < t_max) {
        if (armed) {
            if (expiry <= next_claim) {
                if (expiry >= t_max) break;
                U += c * (expiry - t);
                t = expiry;
                value += (U - a) * std::exp(-q * t);
                U = a;
                expiry = t + d; // decision renews from the barrier
            } else {
                U += c * (next_claim - t);
                t = next_claim;
                U -= rng.exponential(xi);
                next_claim = t + rng.exponential(lam);
                if (U < 0.0) return {value, 0.0}; // classical ruin
                if (U < a) armed = false;        // pending payment cancelled
            }
        } else {
            const double hit = t + (a - U) / c;
            if (next_claim < hit) {
                U += c * (next_claim - t);
                t = next_claim;
                U -= rng.exponential(xi);
                next_claim = t + rng.exponential(lam);
                if (U < 0.0) return {value, 0.0};
            } else {
                if (hit >= t_max) break;
                t = hit;
                U = a;
                armed = true;
                expiry = t + d;
            }
        }
    }
    const double excess = U > a ? U - a : 0.0;
    return {value, std::exp(-q * t) * (excess + c / q)};
}

PathResult payment_delay_bm(const BrownianDrift& m, double q, double d, double a,
                            double x, double t_max, double dt, Rng& rng) {
    const double mu = m.drift * dt, sg = m.volatility * std::sqrt(dt);
    const double df = std::exp(-q * dt);
    double value = 0.0, disc = 1.0, X = x, clock = 0.0;
    bool armed = X >= a;
    const auto n_steps = static_cast<long>(std::ceil(t_max / dt));
    for (long i = 0; i < n_steps; ++i) {
        X += mu + sg * rng.normal();
        disc *= df;
        if (X < 0.0) return {value, 0.0};
        if (X >= a) {
            if (!armed) {
                armed = true;
                clock = 0.0;
            } else {
                clock += dt;
                if (clock >= d) {
                    value += (X - a) * disc;
                    X = a;
                    clock = 0.0;
                }
            }
        } else {
            armed = false;
        }
    }
    const double excess = X > a ? X - a : 0.0;
    return {value, disc * (excess + m.drift / q)};
}

// --- Parisian ruin probability (q = 0) -------------------------------------

PathResult parisian_ruin_cl(const CramerLundbergExp& m, double zeta, double x,
                            double time_cap, Rng& rng) {
    const double c = m.premium_rate, lam = m.claim_intensity, xi = m.claim_rate;
    const double rho = lam / (c * xi);
    const double tail_rate = xi - lam / c; // classical adjustment coefficient
    auto tail = [&](double u) { return rho * std::exp(-tail_rate * u); };
    double t = 0.0, U = x;
    double deadline = U < 0.0 ? zeta : 0.0;
    double next_claim = lam > 0.0 ? rng.exponential(lam) : kInf;
    while (t < time_cap) {
        if (U < 0.0) {
            const double back = t - U / c;
            if (deadline <= std::min(back, next_claim))
                return deadline <= time_cap ? PathResult{1.0, 0.0}
                                            : PathResult{0.0, 1.0};
            if (next_claim < back) {
                U += c * (next_claim - t);
                t = next_claim;
                U -= rng.exponential(xi);
                next_claim = t + rng.exponential(lam);
            } else {
                t = back;
                U = 0.0;
            }
        } else {
            const double b = tail(U);
            if (b < 1e-12) return {0.0, b}; // ruin from here is negligible
            if (next_claim >= time_cap) return {0.0, tail(U + c * (time_cap - t))};
            U += c * (next_claim - t);
            t = next_claim;
            U -= rng.exponential(xi);
            if (U < 0.0) deadline = t + zeta;
            next_claim = t + rng.exponential(lam);
        }
    }
    return {0.0, U >= 0.0 ? std::min(1.0, tail(U)) : 1.0};
}

PathResult parisian_ruin_bm(const BrownianDrift& m, double zeta, double x,
                            double time_cap, double dt, Rng& rng) {
    const double mu = m.drift * dt, sg = m.volatility * std::sqrt(dt);
    const double tail_rate = 2.0 * m.drift / (m.volatility * m.volatility);
    const double stop_level = -std::log(1e-12) / tail_rate;
    double X = x, clock = 0.0;
    const auto n_steps = static_cast<long>(std::ceil(time_cap / dt));
    for (long i = 0; i < n_steps; ++i) {
        X += mu + sg * rng.normal();
        if (X < 0.0) {
            clock += dt;
            if (clock >= zeta) return {1.0, 0.0};
        } else {
            clock = 0.0;
            if (X > stop_level) return {0.0, std::exp(-tail_rate * X)};
        }
    }
    return {0.0, X >= 0.0 ? std::min(1.0, std::exp(-tail_rate * X)) : 1.0};
}

// Relaxed model check for ruin-probability runs: a zero claim intensity is a
// legitimate degenerate case for clock tests.
void validate_for_ruin_prob(const RiskModel& model) {
    std::visit([](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CramerLundbergExp>) {
            if (!(m.premium_rate > 0.0 && m.claim_intensity >= 0.0 && m.claim_rate > 0.0))
                throw std::invalid_argument(
                    "simulate_parisian_ruin_prob: invalid model parameters");
        } else {
            if (!(m.drift > 0.0 && m.volatility > 0.0))
                throw std::invalid_argument(
                    "simulate_parisian_ruin_prob: invalid model parameters");
        }
    }, model);
    if (!(drift_at_zero(model) > 0.0))
        throw std::invalid_argument("simulate_parisian_ruin_prob: requires psi'(0+) > 0");
}

} // namespace

SimEstimate simulate_ruin_delay(const RiskModel& model, double q,
                                const ParisianSpec& spec, const BarrierPolicy& policy,
                                double x, const SimConfig& cfg) {
    validate(model);
    spec.validate();
    policy.validate();
    if (!(q > 0.0)) throw std::invalid_argument("simulate_ruin_delay: q must be > 0");
    if (!(x >= 0.0)) throw std::invalid_argument("simulate_ruin_delay: x must be >= 0");
    const double t_max = std::log(1.0 / cfg.horizon_epsilon) / q;
    return run_batches(cfg, [&](Rng& rng) {
        return std::visit([&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, CramerLundbergExp>)
                return ruin_delay_cl(m, q, spec.zeta, policy.a, x, t_max, rng);
            else
                return ruin_delay_bm(m, q, spec.zeta, policy.a, x, t_max,
                                     cfg.euler_step, rng);
        }, model);
    });
}

SimEstimate simulate_payment_delay(const RiskModel& model, double q,
                                   const PaymentDelaySpec& spec,
                                   const BarrierPolicy& policy, double x,
                                   const SimConfig& cfg) {
    validate(model);
    spec.validate();
    policy.validate();
    if (!(q > 0.0)) throw std::invalid_argument("simulate_payment_delay: q must be > 0");
    if (!(policy.a > 0.0))
        throw std::invalid_argument("simulate_payment_delay: a must be > 0");
    if (!(x >= 0.0)) throw std::invalid_argument("simulate_payment_delay: x must be >= 0");
    if (spec.d == 0.0) // immediate payout of the excess: the classical barrier
        return simulate_ruin_delay(model, q, ParisianSpec{0.0}, policy, x, cfg);
    const double t_max = std::log(1.0 / cfg.horizon_epsilon) / q;
    return run_batches(cfg, [&](Rng& rng) {
        return std::visit([&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, CramerLundbergExp>)
                return payment_delay_cl(m, q, spec.d, policy.a, x, t_max, rng);
            else
                return payment_delay_bm(m, q, spec.d, policy.a, x, t_max,
                                        cfg.euler_step, rng);
        }, model);
    });
}

SimEstimate simulate_parisian_ruin_prob(const RiskModel& model,
                                        const ParisianSpec& spec, double x,
                                        const SimConfig& cfg, double time_cap) {
    validate_for_ruin_prob(model);
    spec.validate();
    if (!(time_cap > 0.0))
        throw std::invalid_argument("simulate_parisian_ruin_prob: time_cap must be > 0");
    return run_batches(cfg, [&](Rng& rng) {
        return std::visit([&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, CramerLundbergExp>)
                return parisian_ruin_cl(m, spec.zeta, x, time_cap, rng);
            else
                return parisian_ruin_bm(m, spec.zeta, x, time_cap, cfg.euler_step,
                                        rng);
        }, model);
    });
}

SimEstimate simulate_free_position_mean(const RiskModel& model, double x, double t,
                                        const SimConfig& cfg) {
    validate(model);
    if (!(t > 0.0))
        throw std::invalid_argument("simulate_free_position_mean: t must be > 0");
    return run_batches(cfg, [&](Rng& rng) {
        return std::visit([&](const auto& m) -> PathResult {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, CramerLundbergExp>) {
                double X = x + m.premium_rate * t;
                for (double s = rng.exponential(m.claim_intensity); s < t;
                     s += rng.exponential(m.claim_intensity))
                    X -= rng.exponential(m.claim_rate);
                return {X, 0.0};
            } else {
                const double dt = cfg.euler_step;
                const double mu = m.drift * dt, sg = m.volatility * std::sqrt(dt);
                double X = x;
                const auto n_steps = static_cast<long>(std::ceil(t / dt));
                for (long i = 0; i < n_steps; ++i) X += mu + sg * rng.normal();
                return {X, 0.0};
            }
        }, model);
    });
}

} // namespace levydiv
