#pragma once

#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "cylid/kernels.hpp"
#include "cylid/levy_measure.hpp"
#include "cylid/measure_on_u.hpp"
#include "cylid/onedim.hpp"
#include "cylid/space.hpp"

namespace cylid {

/**
 * Cylindrical Levy measure, kept as a weighted sum of leaves:
 *   AtomicFunctional  rate * delta_{l(a)} for the linear map l(a) = <coeffs, a>;
 *                     on a dimension family this realizes a linear functional
 *                     whose norm grows without bound.
 *   MeasureOnU        a sigma-finite measure on the ambient space, projected by pushforward.
 * The zero measure is the empty sum.
 */
class CylindricalLevyMeasure {
  public:
    struct AtomicFunctional {
        Vector coeffs;
        double rate;
    };
    using Leaf = std::variant<AtomicFunctional, MeasureOnU>;
    struct Term {
        double weight;
        Leaf leaf;
    };

    CylindricalLevyMeasure() = default;
    static CylindricalLevyMeasure atomic_functional(Vector coeffs, double rate);
    static CylindricalLevyMeasure on_u(MeasureOnU nu);

    CylindricalLevyMeasure operator+(const CylindricalLevyMeasure& other) const;
    CylindricalLevyMeasure scaled(double factor) const;

    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// nu o a^{-1}; any mass sent to 0 is dropped.
    LevyMeasureR project(const Vector& a) const;
    /// nu o (a_1, ..., a_n)^{-1} as weighted points of R^n (atomic leaves only).
    std::vector<std::pair<Vector, double>> project_n(std::span<const Vector> functionals) const;

  private:
    std::vector<Term> terms_;
};

/**
 * The drift p : U* -> R as a weighted sum of leaves.
 *   Linear           <coeffs, a>
 *   PoissonDrift     rate * h(<coeffs, a>)
 *   SecondMoment     int (h(s) - s) (nu o a^{-1})(ds)
 *   Dnu              int (h(<u,a>) - <u,a> 1_{B_U}(u)) nu(du)
 *   TruncationShift  int (to(s) - from(s)) (nu o a^{-1})(ds)
 */
class DriftFunctional {
  public:
    struct Linear {
        Vector coeffs;
    };
    struct PoissonDrift {
        Vector coeffs;
        double rate;
        TruncationFunction h;
    };
    struct SecondMoment {
        CylindricalLevyMeasure nu;
        TruncationFunction h;
    };
    struct Dnu {
        MeasureOnU nu;
        TruncationFunction h;
        FunctionalSpace space;
        /// int u 1_{B_U}(u) nu(du); Monte Carlo for density measures, fixed at construction.
        Vector ball_moment;
    };
    struct TruncationShift {
        CylindricalLevyMeasure nu;
        TruncationFunction from;
        TruncationFunction to;
    };
    using Leaf = std::variant<Linear, PoissonDrift, SecondMoment, Dnu, TruncationShift>;
    struct Term {
        double weight;
        Leaf leaf;
    };

    DriftFunctional() = default;
    static DriftFunctional linear(Vector coeffs);
    static DriftFunctional poisson_drift(Vector coeffs, double rate, TruncationFunction h);
    static DriftFunctional second_moment(CylindricalLevyMeasure nu, TruncationFunction h);
    static DriftFunctional d_nu(MeasureOnU nu, TruncationFunction h, FunctionalSpace space);
    static DriftFunctional truncation_shift(CylindricalLevyMeasure nu, TruncationFunction from, TruncationFunction to);

    double operator()(const Vector& a) const;

    DriftFunctional operator+(const DriftFunctional& other) const;
    DriftFunctional scaled(double factor) const;

    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

  private:
    std::vector<Term> terms_;
};

/// q(a) = a^T Q a for a symmetric positive-semidefinite Q.
class QuadraticForm {
  public:
    explicit QuadraticForm(Matrix q);
    static QuadraticForm zero(int dim) { return QuadraticForm(Matrix::Zero(dim, dim)); }

    double operator()(const Vector& a) const { return a.dot(q_ * a); }
    const Matrix& matrix() const noexcept { return q_; }
    int dim() const noexcept { return static_cast<int>(q_.rows()); }

  private:
    Matrix q_;
};

/// (p, q, nu)_h over a functional space.
struct CylindricalCharacteristics {
    FunctionalSpace space;
    DriftFunctional p;
    QuadraticForm q;
    CylindricalLevyMeasure nu;
    TruncationFunction h;

    CylindricalCharacteristics(FunctionalSpace space,
                               DriftFunctional p,
                               QuadraticForm q,
                               CylindricalLevyMeasure nu,
                               TruncationFunction h);
};

/// int psi_h(s) (nu o a^{-1})(ds)
Complex levy_exponent_integral(const CylindricalLevyMeasure& nu, const TruncationFunction& h, const Vector& a);

/// i p(a) - q(a)/2 + int psi_h(<u,a>) nu(du)
Complex exponent_cyl(const CylindricalCharacteristics& ch, const Vector& a);
Complex cf_cyl(const CylindricalCharacteristics& ch, const Vector& a);

/// phi(t_1 a_1 + ... + t_n a_n), the characteristic function of the projection onto R^n.
Complex cf_projection(const CylindricalCharacteristics& ch, std::span<const Vector> functionals, const Vector& t);

/// (p(a), sqrt(q(a)), nu o a^{-1})_h
IdCharacteristics1D project_1d(const CylindricalCharacteristics& ch, const Vector& a);

/// -(i p(a) + int psi_h(<u,a>) nu(du))
Complex kappa(const CylindricalCharacteristics& ch, const Vector& a);

/// (p1 + p2, Q1 + Q2, nu1 + nu2)_h; throws MismatchError on differing space or truncation.
CylindricalCharacteristics convolve(const CylindricalCharacteristics& c1, const CylindricalCharacteristics& c2);

/// (t p, t Q, t nu)_h, the marginal at time t of the associated cylindrical Levy process.
CylindricalCharacteristics time_scale(const CylindricalCharacteristics& ch, double t);

/// (p', q, nu)_{h_new} with p'(a) = p(a) + int (h_new - h)(<u,a>) nu(du).
CylindricalCharacteristics convert_truncation_cyl(const CylindricalCharacteristics& ch, const TruncationFunction& h_new);

/// The drift-free Gaussian part (0, q, 0)_h and the remainder (p, 0, nu)_h.
CylindricalCharacteristics gaussian_part(const CylindricalCharacteristics& ch);
CylindricalCharacteristics jump_part(const CylindricalCharacteristics& ch);

/**
 * Logarithm of s -> phi(s a), tracked continuously from s = 0 to s = 1.
 * The ray is cut into `initial_steps` pieces; any step whose ratio
 * phi(s_{k+1}) / phi(s_k) has a phase above `max_phase_step` is bisected.
 * Throws std::runtime_error when the phase cannot be resolved (the function
 * is discontinuous or vanishes along the ray).
 */
Complex continuous_log_cf(const CylindricalCharacteristics& ch,
                          const Vector& a,
                          int initial_steps = 32,
                          double max_phase_step = 0.25);

/// exp(L(a) / k) with L the continuous logarithm above.
Complex cf_root(const CylindricalCharacteristics& ch, const Vector& a, int k);

} // namespace cylid
