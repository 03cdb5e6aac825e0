#pragma once

// Independent reference computations used by the test suites and by the
// CLI's self-validation command. Nothing in the core library depends on
// this target, and nothing here calls the core special functions.

#include <cstddef>
#include <functional>
#include <vector>

namespace bsauth::oracles {

/// Globally adaptive 15-point Gauss-Kronrod quadrature. Subdivides the
/// interval with the largest |K15 - G7| until the summed error estimate falls
/// below rel_tol * |integral| (or abs_tol), or `max_intervals` is reached.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol = 1e-13, double abs_tol = 0.0, std::size_t max_intervals = 20000);

/// exp(-x) I0(x) via (1/pi) * integral_0^pi exp(x (cos t - 1)) dt.
double bessel_i0_scaled_quadrature(double x);

/// Q1(a, b) by direct quadrature of the defining integral
/// integral_b^inf x exp(-(x - a)^2 / 2) [e^{-ax} I0(ax)] dx.
double marcum_q1_quadrature(double a, double b);

/// Two-sample Kolmogorov-Smirnov statistic sup |F1 - F2|. Sorts copies.
double ks_statistic(std::vector<double> first, std::vector<double> second);

/// Asymptotic two-sample KS critical value at significance `alpha`:
/// sqrt(-ln(alpha / 2) / 2) * sqrt((n + m) / (n m)).
double ks_critical_value(double alpha, std::size_t n, std::size_t m);

/// sqrt(p (1 - p) / n).
double binomial_stderr(double p, double n);

}  // namespace bsauth::oracles
