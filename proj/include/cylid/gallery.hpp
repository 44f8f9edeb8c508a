#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cylid/conditions.hpp"
#include "cylid/cylindrical.hpp"
#include "cylid/extension.hpp"

namespace cylid {

/// A named check and whether the entry must pass it.
struct ExpectedProperty {
    std::string name;
    bool should_pass;
};

struct PropertyOutcome {
    std::string name;
    bool expected;
    bool observed;
    std::string detail;
};

/**
 * A ready-made characteristics triplet with the properties it must exhibit.
 * Property names:
 *   id_conditions        all four conditions of id_conditions_report
 *   drift_only_fails     the drift part alone (p, 0, 0)_h fails condition 4
 *   regular_continuity   continuity_report along a + v/n passes both verdicts
 */
struct GalleryEntry {
    std::string name;
    std::string description;
    CylindricalCharacteristics ch;
    std::vector<ExpectedProperty> expected;
    /// Point sets added to the default grid when verifying (e.g. a known witness).
    std::vector<std::vector<Vector>> extra_point_sets{};
};

inline constexpr int kGalleryDim = 4;

/// Deterministic grid used to verify gallery entries: random point sets and one sequence.
ConditionsGrid default_conditions_grid(int dim, std::uint64_t seed = 7, int sets = 3, int set_size = 6);

/// The sequence a + v/n, n = 1..count.
FunctionalSequence harmonic_sequence(const Vector& limit, const Vector& direction, int count = 64);

/// Evaluates every expected property of the entry.
std::vector<PropertyOutcome> verify_entry(const GalleryEntry& entry);

/// (0, Q, 0); all conditions pass.
GalleryEntry gaussian_cyl(const Matrix& q, NormKind norm = NormKind::l2);

/**
 * p(a) = lambda h(l(a)), Q = 0, nu o a^{-1} = lambda delta_{l(a)} with l(a) = sum j a_j.
 * The full triplet satisfies every condition while its drift part alone does not.
 */
GalleryEntry poisson_noncontinuous(int dim, double lambda, const TruncationFunction& h);

/// The drift part of poisson_noncontinuous alone: p(a) = lambda h(l(a)), nu = 0; condition 4 fails.
GalleryEntry poisson_drift_only(int dim, double lambda, const TruncationFunction& h);

/// p(a) = int (h(<u,a>) - <u,a>) nu(du) for nu with finite weak second moments.
GalleryEntry second_moment_drift(const MeasureOnU& nu, const TruncationFunction& h);

/// (d_nu, 0, nu)_h
GalleryEntry dnu_entry(const MeasureOnU& nu, const TruncationFunction& h, NormKind norm = NormKind::l2);

/// Names accepted by build_gallery_entry.
std::vector<std::string> gallery_names();

/// Builds a named default entry and re-verifies its expected properties;
/// throws std::logic_error on a mismatch and std::invalid_argument on an unknown name.
GalleryEntry build_gallery_entry(const std::string& name);

struct NormGrowthRow {
    int dim;
    double functional_norm;  // sup of |sum j a_j| over ||a||_{U*} <= 1
};

/// Norm of l(a) = sum j a_j on dimension d when U carries `norm`.
std::vector<NormGrowthRow> norm_growth_table(const std::vector<int>& dims, NormKind norm = NormKind::l2);

} // namespace cylid
