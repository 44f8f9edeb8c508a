#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cylid/kernels.hpp"
#include "cylid/space.hpp"

namespace cylid {

using FunctionalKernel = std::function<Complex(const Vector&)>;

enum class Verdict { pass, not_semidefinite, not_hermitian, bad_origin };

std::string verdict_name(Verdict v);

/**
 * Outcome of one definiteness test on a finite point set.
 *
 * min_eigenvalue refers to the matrix required to be positive semidefinite:
 * the Gram matrix for positive-definiteness, minus the compressed Gram matrix
 * for negative-definiteness. The verdict passes iff
 * min_eigenvalue >= -tolerance * scale with scale = max(1, max |entry|).
 */
struct DefinitenessReport {
    int size = 0;
    double min_eigenvalue = 0.0;
    double tolerance = 0.0;
    double scale = 1.0;
    double max_asymmetry = 0.0;
    Verdict verdict = Verdict::pass;
    /// Eigenvector of the offending eigenvalue, in the coordinates of the points; empty on pass.
    Eigen::VectorXcd witness;
    /// z^H G z (or z^H K z for the negative-definite check) at the witness.
    double witness_form = 0.0;

    bool passed() const noexcept { return verdict == Verdict::pass; }
};

inline constexpr double kDefaultEigenTolerance = 1e-8;
inline constexpr double kDefaultHermitianTolerance = 1e-10;
inline constexpr int kMaxPoints = 64;

/// Gram matrix G_ij = f(a_i - a_j).
Eigen::MatrixXcd gram_matrix(const FunctionalKernel& f, std::span<const Vector> points);

/// PSD test of an explicit Hermitian matrix.
DefinitenessReport psd_report(const Eigen::MatrixXcd& g,
                              double tol = kDefaultEigenTolerance,
                              double hermitian_tol = kDefaultHermitianTolerance);

DefinitenessReport positive_definite_check(const FunctionalKernel& f,
                                           std::span<const Vector> points,
                                           double tol = kDefaultEigenTolerance,
                                           double hermitian_tol = kDefaultHermitianTolerance);

/**
 * Negative-definiteness in the Schoenberg sense: k(0) has real part >= 0 and
 * no imaginary part, k(-a) = conj(k(a)), and z^H K z <= 0 whenever sum z_i = 0.
 * The constraint is imposed with an explicit orthonormal basis of {sum z = 0}.
 */
DefinitenessReport negative_definite_check(const FunctionalKernel& k,
                                           std::span<const Vector> points,
                                           double tol = kDefaultEigenTolerance,
                                           double hermitian_tol = kDefaultHermitianTolerance);

/// positive_definite_check of a -> exp(-k(a) / d) for every divisor d.
std::vector<DefinitenessReport> schoenberg_check(const FunctionalKernel& k,
                                                 std::span<const Vector> points,
                                                 std::span<const int> divisors,
                                                 double tol = kDefaultEigenTolerance,
                                                 double hermitian_tol = kDefaultHermitianTolerance);

/// Orthonormal basis (n x (n-1)) of {z in C^n : sum z_i = 0} (Helmert basis).
Eigen::MatrixXd zero_sum_basis(int n);

} // namespace cylid
