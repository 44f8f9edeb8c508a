#include "cylid/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace cylid {

TruncationFunction::TruncationFunction(std::string name,
                                       std::function<double(double)> fn,
                                       double bound,
                                       double identity_radius,
                                       bool continuous,
                                       std::vector<double> kinks)
    : name_(std::move(name)),
      fn_(std::move(fn)),
      bound_(bound),
      identity_radius_(identity_radius),
      continuous_(continuous),
      kinks_(std::move(kinks)) {
    if (!fn_) throw std::invalid_argument("truncation function: empty callable");
    if (!(identity_radius_ > 0.0)) throw std::invalid_argument("truncation function: identity radius must be positive");
    if (!(bound_ >= identity_radius_)) throw std::invalid_argument("truncation function: bound below identity radius");
}

TruncationFunction TruncationFunction::indicator() {
    return {"indicator", [](double s) { return std::abs(s) <= 1.0 ? s : 0.0; }, 1.0, 1.0, false, {-1.0, 1.0}};
}

TruncationFunction TruncationFunction::ramp() {
    return {"ramp",
            [](double s) { return s * std::clamp(2.0 - std::abs(s), 0.0, 1.0); },
            1.0,
            1.0,
            true,
            {-2.0, -1.0, 1.0, 2.0}};
}

TruncationFunction TruncationFunction::by_name(std::string_view name) {
    if (name == "indicator") return indicator();
    if (name == "ramp") return ramp();
    throw std::invalid_argument("unknown truncation function '" + std::string(name) + "'");
}

namespace {
// cos(x) - 1 without cancellation near 0
double cosm1(double x) {
    const double half = std::sin(0.5 * x);
    return -2.0 * half * half;
}
} // namespace

Complex psi(const TruncationFunction& h, double t) {
    return {cosm1(t), std::sin(t) - h(t)};
}

Complex psi_tilde(const TruncationFunction& h, double s, double t) {
    const double x = s * t;
    return {cosm1(x), std::sin(x) - t * h(s)};
}

} // namespace cylid
