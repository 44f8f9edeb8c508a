#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "cylid/levy_measure.hpp"
#include "cylid/space.hpp"

namespace cylid {

struct AtomU {
    Vector point;
    double weight;
};

/// Value of a Monte Carlo or exact integral; std_error is 0 for exact values.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

struct MonteCarloSpec {
    std::size_t samples = 100000;
    std::uint64_t seed = 0x6a09e667f3bcc909ULL;
};

/**
 * A sigma-finite measure on the ambient space R^d.
 *
 * Variants:
 *   atoms              finitely many weighted points u_j != 0 (integrals exact)
 *   gaussian           mass * N(mean, sd^2 I); one-dimensional projections are
 *                      closed-form, other integrals use a fixed Monte Carlo sample
 *   lebesgue_exterior  intensity * Lebesgue measure on {||u||_2 >= radius};
 *                      infinite mass outside every ball, kept as a negative case
 */
class MeasureOnU {
  public:
    enum class Kind { atoms, gaussian, lebesgue_exterior };

    static MeasureOnU atoms(int dim, std::vector<AtomU> atoms);
    static MeasureOnU gaussian(double mass, Vector mean, double sd, MonteCarloSpec mc = {});
    static MeasureOnU lebesgue_exterior(int dim, double intensity, double radius);

    Kind kind() const noexcept { return kind_; }
    int dim() const noexcept { return dim_; }
    const std::vector<AtomU>& atom_list() const noexcept { return atoms_; }
    double mass() const noexcept { return mass_; }
    const Vector& mean() const noexcept { return mean_; }
    double sd() const noexcept { return sd_; }
    double radius() const noexcept { return radius_; }
    const MonteCarloSpec& monte_carlo() const noexcept { return mc_; }
    bool is_zero() const noexcept { return kind_ == Kind::atoms && atoms_.empty(); }

    MeasureOnU scaled(double factor) const;

    /// nu o a^{-1} on the line; mass sent to 0 is dropped.
    LevyMeasureR project(const Vector& a) const;
    /// nu o (a_1..a_n)^{-1} as atoms in R^n; atomic variant only. The atom at 0 is dropped.
    std::vector<std::pair<Vector, double>> project_n(std::span<const Vector> functionals) const;

    /// Integral of f against the measure: exact for atoms, Monte Carlo for gaussian.
    Estimate integral(const std::function<double(const Vector&)>& f) const;
    /// nu(B_U^c) in the given norm; +inf for lebesgue_exterior.
    Estimate outside_ball_mass(const FunctionalSpace& space) const;

  private:
    MeasureOnU() = default;

    Kind kind_ = Kind::atoms;
    int dim_ = 1;
    std::vector<AtomU> atoms_;
    double mass_ = 0.0;
    Vector mean_;
    double sd_ = 0.0;
    double radius_ = 0.0;
    MonteCarloSpec mc_{};
    std::shared_ptr<const Matrix> samples_;
};

} // namespace cylid
