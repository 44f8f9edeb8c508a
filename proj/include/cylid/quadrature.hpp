#pragma once

#include <complex>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace cylid {

using ComplexIntegrand = std::function<std::complex<double>(double)>;

struct IntegralResult {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;
    bool converged = true;
    int panels = 0;
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    int max_panels = 4000;
};

/**
 * Globally adaptive Gauss-Kronrod (7/15) quadrature of a complex integrand
 * over a union of intervals. Infinite endpoints are mapped onto [0, 1) by
 * s = a + x / (1 - x). The panel with the largest error is bisected until the
 * summed error drops below abs_tol or max_panels is reached.
 */
IntegralResult integrate(const ComplexIntegrand& f,
                         std::span<const std::pair<double, double>> intervals,
                         const QuadratureOptions& opts = {});

/// Splits [lo, hi] at every breakpoint strictly inside it.
std::vector<std::pair<double, double>> split_interval(double lo, double hi, std::span<const double> breakpoints);

} // namespace cylid
