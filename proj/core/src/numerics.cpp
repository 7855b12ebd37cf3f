#include "levydiv/numerics.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace levydiv {

void Tolerance::validate() const {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("Tolerance: abs_tol must be > 0");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("Tolerance: rel_tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("Tolerance: max_iter must be >= 1");
}

namespace {

void require_finite(double x, const char* who) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(who) + ": non-finite argument");
}

// Ascending series sum_{k>=0} (x/2)^{2k+nu} / (k! (k+nu)!).
double bessel_i_series(double x, int nu) {
    const double half = x / 2.0;
    double term = 1.0;
    for (int k = 1; k <= nu; ++k) term *= half / k;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= half * half / (static_cast<double>(k) * (k + nu));
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

// Asymptotic expansion I_nu(x) ~ e^x/sqrt(2 pi x) * sum_k (-1)^k a_k(nu)/x^k
// with a_k(nu) = prod_{j=1..k} (4nu^2-(2j-1)^2) / (8^k k!).
double bessel_i_asymptotic(double x, int nu) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 30; ++k) {
        const double num = mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
        term *= -num / (8.0 * k * x);
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        sum += term;
    }
    return std::exp(x) / std::sqrt(2.0 * M_PI * x) * sum;
}

} // namespace

double bessel_i0(double x) {
    require_finite(x, "bessel_i0");
    if (x < 0.0) throw std::invalid_argument("bessel_i0: x must be >= 0");
    return x <= 15.0 ? bessel_i_series(x, 0) : bessel_i_asymptotic(x, 0);
}

double bessel_i1(double x) {
    require_finite(x, "bessel_i1");
    if (x < 0.0) throw std::invalid_argument("bessel_i1: x must be >= 0");
    return x <= 15.0 ? bessel_i_series(x, 1) : bessel_i_asymptotic(x, 1);
}

double std_normal_cdf(double x) {
    require_finite(x, "std_normal_cdf");
    return 0.5 * std::erfc(-x / M_SQRT2);
}

double std_normal_pdf(double x) {
    require_finite(x, "std_normal_pdf");
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

namespace {

struct SimpsonPanel {
    double a, b;
    double fa, fm, fb;
    double estimate;
};

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

} // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol) {
    tol.validate();
    if (!(lo <= hi)) throw std::invalid_argument("integrate: requires lo <= hi");
    if (lo == hi) return 0.0;

    auto eval = [&](double x) {
        double v = f(x);
        if (!std::isfinite(v))
            throw std::invalid_argument("integrate: integrand not finite at x=" + std::to_string(x));
        return v;
    };

    const double fa = eval(lo), fb = eval(hi), fm = eval(0.5 * (lo + hi));
    std::vector<SimpsonPanel> stack;
    stack.push_back({lo, hi, fa, fm, fb, simpson(fa, fm, fb, hi - lo)});

    double result = 0.0;
    long used = 0;
    while (!stack.empty()) {
        SimpsonPanel p = stack.back();
        stack.pop_back();
        const double m = 0.5 * (p.a + p.b);
        const double lm = 0.5 * (p.a + m), rm = 0.5 * (m + p.b);
        const double flm = eval(lm), frm = eval(rm);
        const double left = simpson(p.fa, flm, p.fm, m - p.a);
        const double right = simpson(p.fm, frm, p.fb, p.b - m);
        const double refined = left + right;
        // Local error budget proportional to panel width.
        const double width_frac = (p.b - p.a) / (hi - lo);
        const double budget =
            std::max(tol.abs_tol, tol.rel_tol * std::abs(result + refined)) * width_frac;
        if (std::abs(refined - p.estimate) <= 15.0 * budget || (p.b - p.a) < 1e-14 * (hi - lo)) {
            result += refined + (refined - p.estimate) / 15.0;
            continue;
        }
        if (++used > tol.max_iter) {
            double best = result + refined;
            for (const auto& rest : stack) best += rest.estimate;
            throw convergence_error("integrate: subdivision budget exhausted", best);
        }
        stack.push_back({p.a, m, p.fa, flm, p.fm, left});
        stack.push_back({m, p.b, p.fm, frm, p.fb, right});
    }
    return result;
}

double find_root_increasing(const std::function<double(double)>& f, double lo,
                            double hi, const Tolerance& tol) {
    tol.validate();
    if (!(lo <= hi)) throw std::invalid_argument("find_root_increasing: requires lo <= hi");
    double flo = f(lo), fhi = f(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi))
        throw std::invalid_argument("find_root_increasing: non-finite endpoint value");
    if (flo > 0.0 || fhi < 0.0)
        throw std::invalid_argument("find_root_increasing: root not bracketed by [lo, hi]");
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;

    double a = lo, b = hi;
    double x = 0.5 * (a + b);
    for (long it = 0; it < tol.max_iter; ++it) {
        // Secant proposal, clipped to the bracket; bisection fallback.
        double xs = a - flo * (b - a) / (fhi - flo);
        if (!(xs > a && xs < b)) xs = 0.5 * (a + b);
        x = xs;
        const double fx = f(x);
        if (!std::isfinite(fx))
            throw std::invalid_argument("find_root_increasing: non-finite value during iteration");
        if (std::abs(fx) <= tol.abs_tol && (b - a) <= tol.abs_tol) return x;
        if ((b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)))
            return x; // bracket at machine resolution
        if (fx < 0.0) {
            a = x;
            flo = fx;
        } else {
            b = x;
            fhi = fx;
        }
        // Keep the bracket shrinking even when the secant step stagnates.
        if ((b - a) > 0.5 * (hi - lo)) {
            const double m = 0.5 * (a + b);
            const double fmv = f(m);
            if (fmv < 0.0) {
                a = m;
                flo = fmv;
            } else {
                b = m;
                fhi = fmv;
            }
        }
    }
    throw convergence_error("find_root_increasing: iteration budget exhausted", x);
}

double differentiate(const std::function<double(double)>& f, double x,
                     int order, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("differentiate: h must be > 0");
    if (order != 1 && order != 2)
        throw std::invalid_argument("differentiate: order must be 1 or 2");
    auto eval = [&](double y) {
        double v = f(y);
        if (!std::isfinite(v))
            throw std::invalid_argument("differentiate: non-finite sample at x=" + std::to_string(y));
        return v;
    };
    if (order == 1) return (eval(x + h) - eval(x - h)) / (2.0 * h);
    return (eval(x + h) - 2.0 * eval(x) + eval(x - h)) / (h * h);
}

} // namespace levydiv
