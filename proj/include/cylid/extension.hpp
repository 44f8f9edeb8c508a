#pragma once

#include <array>
#include <string>
#include <vector>

#include "cylid/cylindrical.hpp"
#include "cylid/measure_on_u.hpp"

namespace cylid {

struct IntegrabilityValue {
    double value = 0.0;
    double error = 0.0;  // quadrature error estimate or Monte Carlo standard error
    bool finite = true;
};

/// int (|<u,a>|^2 ^ 1) nu(du)
IntegrabilityValue weak_pairing_integrability(const MeasureOnU& nu, const Vector& a);

/// int (||u||^2 ^ 1) nu(du), the Hilbert-space criterion; diagnostic only.
IntegrabilityValue strong_integrability(const MeasureOnU& nu, const FunctionalSpace& space);

/// int u 1_{B_U}(u) nu(du) with its componentwise standard error.
std::pair<Vector, Vector> ball_first_moment(const MeasureOnU& nu, const FunctionalSpace& space);

/// One piece of the domain decomposition of the d_nu integrand.
struct DnuPiece {
    std::string domain;
    double integral = 0.0;      // int f_a over the piece
    double abs_integral = 0.0;  // int |f_a| over the piece
    double bound = 0.0;         // a priori bound for abs_integral
    double std_error = 0.0;
    bool within_bound = true;
};

struct DnuResult {
    double value = 0.0;
    double std_error = 0.0;
    double c = 0.0;  // radius with {|t| <= c} inside the identity region of h
    double outside_ball_mass = 0.0;
    std::array<DnuPiece, 3> pieces{};
    bool bounds_hold = true;
};

/**
 * d_nu(a) = int (h(<u,a>) - <u,a> 1_{B_U}(u)) nu(du).
 *
 * The integrand vanishes on D(a) n B_U with D(a) = {|<u,a>| <= c}. The three
 * remaining pieces are integrated separately and each is checked against
 *   D(a) n B^c    c nu(B^c)
 *   D^c(a) n B    (||h|| + ||a||) (nu o a^{-1})({|s| > c})
 *   D^c(a) n B^c  ||h|| nu(B^c)
 * Monte Carlo pieces pass when they are within 3 standard errors of the bound.
 *
 * Throws HypothesisError when nu(B^c) is infinite or nu o a^{-1} is not a Levy measure.
 */
DnuResult d_nu(const MeasureOnU& nu, const Vector& a, const TruncationFunction& h, const FunctionalSpace& space);

/// Checks nu(B_U^c) < infinity; throws HypothesisError otherwise.
void require_finite_outside_ball(const MeasureOnU& nu, const FunctionalSpace& space);

/**
 * (d_nu, 0, nu)_h. This certifies the cylindrical side only: whether the
 * resulting cylindrical measure extends to a Radon measure is not tested.
 */
CylindricalCharacteristics make_id_from_levy(const MeasureOnU& nu, const TruncationFunction& h, const FunctionalSpace& space);

/// A finite measure on the line; atoms may sit at 0.
struct FiniteMeasureR {
    std::vector<Atom> atoms;
};

/**
 * Bounded-Lipschitz distance sup { int f d(m1 - m2) : |f| <= 1, Lip(f) <= 1 }.
 * Solved exactly on the joint support: the test function only matters at the
 * atoms, and the chain of constraints |f_k| <= 1, |f_{k+1} - f_k| <= gap_k is
 * maximized by dynamic programming over concave piecewise-linear value functions.
 */
double bl_distance(const FiniteMeasureR& m1, const FiniteMeasureR& m2);

/**
 * q delta_0 + (s^2 ^ 1) eta(ds) as a finite measure. Density terms are
 * discretized with trapezoid weights on `grid`, which must be sorted.
 */
FiniteMeasureR weighted_levy_measure(const LevyMeasureR& eta, double q, std::span<const double> grid);

/// Uniform grid of `points` nodes over the joint effective support of the density terms, padded by 10%.
std::vector<double> joint_grid(std::span<const LevyMeasureR> measures, int points = 10000);

struct ContinuityOptions {
    int monotone_from = 4;      // monotonicity is required for n >= monotone_from (1-based)
    double threshold = 1e-4;    // final distance must fall below this
    int grid_points = 10000;
    double rel_slack = 1e-9;    // tolerated relative increase between consecutive terms
};

struct ContinuityRow {
    int n = 0;
    double drift_gap = 0.0;           // |p(a_n) - p(a)|
    double quadratic_gap = 0.0;       // |q(a_n) - q(a)|
    double combined_distance = 0.0;   // BL(q(a_n) delta_0 + (s^2^1) nu o a_n^{-1}, same at a)
    double levy_distance = 0.0;       // BL((s^2^1) nu o a_n^{-1}, same at a)
};

struct TrendVerdict {
    std::string column;
    bool monotone = true;
    double final_value = 0.0;
    bool below_threshold = true;
    bool pass() const { return monotone && below_threshold; }
};

struct ContinuityReport {
    std::vector<ContinuityRow> rows;
    std::vector<TrendVerdict> verdicts;
    bool continuity_pass = true;          // drift, combined distance
    bool regular_continuity_pass = true;  // drift, quadratic gap, levy-only distance
};

/// Tabulates the continuity criteria along a_n -> a.
ContinuityReport continuity_report(const CylindricalCharacteristics& ch,
                                   std::span<const Vector> sequence,
                                   const Vector& limit,
                                   const ContinuityOptions& opts = {});

} // namespace cylid
