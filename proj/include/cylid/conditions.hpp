#pragma once

#include <string>
#include <vector>

#include "cylid/cylindrical.hpp"
#include "cylid/definiteness.hpp"

namespace cylid {

/// A sequence a_n -> a inside a finite-dimensional span.
struct FunctionalSequence {
    std::vector<Vector> terms;
    Vector limit;
};

struct ConditionsGrid {
    std::vector<std::vector<Vector>> point_sets;
    std::vector<FunctionalSequence> sequences;
    std::vector<int> divisors{1, 2, 3, 4};
    std::vector<double> homogeneity_scales{-2.0, -0.5, 0.5, 3.0};
    double continuity_tol = 1e-6;
    double eigen_tol = kDefaultEigenTolerance;
    double hermitian_tol = kDefaultHermitianTolerance;
};

struct ConditionRow {
    int index = 0;  // 1..4
    std::string name;
    bool pass = true;
    /// Worst observed quantity; the pass rule is stated in `detail`.
    double margin = 0.0;
    std::string detail;
};

struct ConditionsReport {
    std::vector<ConditionRow> conditions;
    /// One entry per point set: the negative-definite check of kappa, then one Schoenberg report per divisor.
    std::vector<DefinitenessReport> negative_definite;
    std::vector<std::vector<DefinitenessReport>> schoenberg;

    bool all_pass() const;
};

/**
 * Checks the four conditions of the characterization theorem on finite grids:
 *   1  p(0) = 0 and |p(a_n) - p(a)| small at the end of every supplied sequence
 *   2  Q symmetric, positive semidefinite and q(ta) = t^2 q(a)
 *   3  int (s^2 ^ 1) d(nu o a^{-1}) finite on every test functional
 *   4  kappa negative-definite and exp(-kappa/k) positive-definite on each point set
 * Failures are recorded, never thrown.
 */
ConditionsReport id_conditions_report(const CylindricalCharacteristics& ch, const ConditionsGrid& grid);

} // namespace cylid
