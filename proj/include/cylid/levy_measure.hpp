#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cylid/quadrature.hpp"

namespace cylid {

struct Atom {
    double location;
    double weight;
};

/**
 * Named density family on the line, restricted to a support interval and to
 * |s| >= gap. Families:
 *   exponential  scale * exp(-rate |s|)
 *   gaussian     mass * N(mean, sd^2) density
 *   uniform      intensity (bounded support only)
 *   power        scale * |s|^{-1-alpha}, 0 < alpha < 2
 */
class Density1D {
  public:
    enum class Family { exponential, gaussian, uniform, power };

    static Density1D exponential(double scale, double rate, double lo, double hi, double gap = 0.0);
    static Density1D gaussian(double mass, double mean, double sd, double lo, double hi, double gap = 0.0);
    static Density1D uniform(double intensity, double lo, double hi, double gap = 0.0);
    static Density1D power(double scale, double alpha, double lo, double hi, double gap = 0.0);

    double operator()(double s) const;

    Family family() const noexcept { return family_; }
    std::string family_name() const;
    double p1() const noexcept { return p1_; }
    double p2() const noexcept { return p2_; }
    double p3() const noexcept { return p3_; }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double gap() const noexcept { return gap_; }

    /// Intervals carrying mass: the support minus (-gap, gap), split at 0.
    std::vector<std::pair<double, double>> pieces() const;
    /// Mass of the piece [a, b] (a, b of equal sign); +inf when not finite.
    double piece_mass(double a, double b) const;
    double total_mass() const;
    /// Inverse CDF of the normalized restriction to [a, b] at u in (0, 1).
    double piece_quantile(double a, double b, double u) const;
    /// Finite window outside which the mass is negligible (used for discretization).
    std::pair<double, double> effective_bounds() const;

  private:
    Density1D(Family f, double p1, double p2, double p3, double lo, double hi, double gap);
    void check() const;

    Family family_;
    double p1_;
    double p2_;
    double p3_;
    double lo_;
    double hi_;
    double gap_;
};

/**
 * A Levy measure on the line: a finite list of atoms plus scaled density
 * terms. Sums concatenate and scaling multiplies weights, so the Atomic,
 * Density and Sum forms share one representation.
 */
class LevyMeasureR {
  public:
    struct DensityTerm {
        Density1D density;
        double factor;
    };

    LevyMeasureR() = default;

    /// Rejects atoms at 0 and negative weights; zero weights are dropped.
    static LevyMeasureR atomic(std::vector<Atom> atoms);
    static LevyMeasureR dirac(double location, double weight = 1.0);
    static LevyMeasureR density(Density1D d, double factor = 1.0);

    /// Pushforward under s -> c s. Atoms mapped to 0 are dropped.
    LevyMeasureR pushforward_scale(double c) const;
    LevyMeasureR scaled(double factor) const;
    LevyMeasureR operator+(const LevyMeasureR& other) const;
    /// Restriction to {|s| > eps}.
    LevyMeasureR restricted_outside(double eps) const;

    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    const std::vector<DensityTerm>& densities() const noexcept { return densities_; }

    bool is_zero() const noexcept { return atoms_.empty() && densities_.empty(); }
    bool has_finite_mass() const;
    double total_mass() const;
    /// All integration breakpoints of the density terms (support ends, gaps, 0).
    std::vector<double> breakpoints() const;

  private:
    std::vector<Atom> atoms_;
    std::vector<DensityTerm> densities_;
};

struct LevyIntegralOptions {
    QuadratureOptions quadrature{};
    std::vector<double> breakpoints{};
    /// Declared C with |g(s)| <= C (s^2 ^ 1); required when the measure has infinite mass.
    std::optional<double> growth_constant{};

    /// Declares g(s) = exp(i frequency s) + remainder(s) on {|s| >= start}. Unbounded density
    /// pieces are then cut at +-start: the exponential part of each tail goes to a Fourier-type
    /// rule, the remainder to the adaptive rule. Without it, long oscillatory tails rarely converge.
    struct OscillatoryTail {
        double frequency;
        double start;
        ComplexIntegrand remainder;
    };
    std::optional<OscillatoryTail> oscillatory_tail{};
};

/// Integral of g against eta: exact sum over atoms, adaptive quadrature per density term.
IntegralResult levy_integral(const LevyMeasureR& eta, const ComplexIntegrand& g, const LevyIntegralOptions& opts = {});

/// The integral of (s^2 ^ 1) against eta; finite for every valid Levy measure.
IntegralResult levy_integrability(const LevyMeasureR& eta);

/// Throws IntegrabilityError when the (s^2 ^ 1) integral is not finite.
void validate_levy_measure(const LevyMeasureR& eta);

} // namespace cylid
