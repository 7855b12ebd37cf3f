#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace levydiv {

/// Accuracy request shared by the quadrature and root-finding routines.
struct Tolerance {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    long max_iter = 1'000'000;

    void validate() const;
};

/// Thrown when an iterative routine exhausts its budget; carries the best
/// estimate reached so far.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double best_estimate)
        : std::runtime_error(what), best_(best_estimate) {}

    double best_estimate() const noexcept { return best_; }

private:
    double best_;
};

/// Modified Bessel function I0(x), x >= 0.
double bessel_i0(double x);

/// Modified Bessel function I1(x), x >= 0.
/// Ascending series for x <= 15, large-argument asymptotic expansion beyond.
double bessel_i1(double x);

/// Standard normal distribution function.
double std_normal_cdf(double x);

/// Standard normal density.
double std_normal_pdf(double x);

/// Adaptive Simpson quadrature of f over [lo, hi].
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol = {});

/// Bracketed root of a strictly increasing function with f(lo) <= 0 <= f(hi).
double find_root_increasing(const std::function<double(double)>& f, double lo,
                            double hi, const Tolerance& tol = {});

/// Central-difference derivative of order 1 or 2, O(h^2) accurate.
double differentiate(const std::function<double(double)>& f, double x,
                     int order, double h);

} // namespace levydiv
