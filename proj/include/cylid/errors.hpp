#pragma once

#include <stdexcept>
#include <string>

namespace cylid {

/// Adaptive quadrature stopped before reaching its tolerance.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double error_estimate)
        : std::runtime_error(what), error_estimate_(error_estimate) {}
    double error_estimate() const noexcept { return error_estimate_; }

  private:
    double error_estimate_;
};

/// An integrand/measure pair whose integral is not known to be finite.
class IntegrabilityError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Hypothesis of a construction (e.g. finite mass outside the unit ball) fails.
class HypothesisError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Operands live on different spaces or use different truncations.
class MismatchError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

} // namespace cylid

namespace cylid {

/// A configuration document is malformed.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

} // namespace cylid
