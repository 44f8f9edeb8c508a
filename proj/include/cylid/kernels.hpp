#pragma once

#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace cylid {

using Complex = std::complex<double>;

/**
 * A bounded function h with h(s) = s on [-identity_radius, identity_radius].
 *
 * The metadata (bound, radius, kinks) is declared, not derived; the test
 * suite verifies it for the built-in instances. Two truncations compare equal
 * when their names agree.
 */
class TruncationFunction {
  public:
    TruncationFunction(std::string name,
                       std::function<double(double)> fn,
                       double bound,
                       double identity_radius,
                       bool continuous,
                       std::vector<double> kinks = {});

    /// h_I(s) = s 1_{[-1,1]}(s)
    static TruncationFunction indicator();
    /// h_C(s) = s clamp(2 - |s|, 0, 1)
    static TruncationFunction ramp();
    /// "indicator" | "ramp"; throws std::invalid_argument otherwise.
    static TruncationFunction by_name(std::string_view name);

    double operator()(double s) const { return fn_(s); }

    const std::string& name() const noexcept { return name_; }
    double bound() const noexcept { return bound_; }
    double identity_radius() const noexcept { return identity_radius_; }
    bool is_continuous() const noexcept { return continuous_; }
    /// Points where h is not smooth; quadrature splits there.
    const std::vector<double>& kinks() const noexcept { return kinks_; }

    friend bool operator==(const TruncationFunction& a, const TruncationFunction& b) {
        return a.name_ == b.name_;
    }

  private:
    std::string name_;
    std::function<double(double)> fn_;
    double bound_;
    double identity_radius_;
    bool continuous_;
    std::vector<double> kinks_;
};

/// e^{it} - 1 - i h(t)
Complex psi(const TruncationFunction& h, double t);

/// e^{ist} - 1 - i t h(s)
Complex psi_tilde(const TruncationFunction& h, double s, double t);

} // namespace cylid
