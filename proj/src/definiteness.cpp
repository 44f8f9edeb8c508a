#include "cylid/definiteness.hpp"

#include <cmath>
#include <stdexcept>

namespace cylid {
namespace {

void check_points(std::span<const Vector> points, std::size_t min_size, const char* what) {
    if (points.size() < min_size)
        throw std::invalid_argument(std::string(what) + ": need at least " + std::to_string(min_size) + " points");
    if (points.size() > static_cast<std::size_t>(kMaxPoints))
        throw std::invalid_argument(std::string(what) + ": at most " + std::to_string(kMaxPoints) + " points");
    for (const Vector& p : points)
        if (p.size() != points.front().size()) throw std::invalid_argument(std::string(what) + ": points differ in dimension");
}

double matrix_scale(const Eigen::MatrixXcd& g) { return std::max(1.0, g.cwiseAbs().maxCoeff()); }

double asymmetry(const Eigen::MatrixXcd& g) { return (g - g.adjoint()).cwiseAbs().maxCoeff(); }

} // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::not_semidefinite: return "not_semidefinite";
        case Verdict::not_hermitian: return "not_hermitian";
        case Verdict::bad_origin: return "bad_origin";
    }
    return {};
}

Eigen::MatrixXcd gram_matrix(const FunctionalKernel& f, std::span<const Vector> points) {
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            g(i, j) = f(points[static_cast<std::size_t>(i)] - points[static_cast<std::size_t>(j)]);
    return g;
}

DefinitenessReport psd_report(const Eigen::MatrixXcd& g, double tol, double hermitian_tol) {
    DefinitenessReport rep;
    rep.size = static_cast<int>(g.rows());
    rep.tolerance = tol;
    rep.scale = matrix_scale(g);
    rep.max_asymmetry = asymmetry(g);
    const Eigen::MatrixXcd herm = 0.5 * (g + g.adjoint());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm);
    rep.min_eigenvalue = eig.eigenvalues()(0);
    if (rep.max_asymmetry > hermitian_tol * rep.scale) {
        rep.verdict = Verdict::not_hermitian;
        return rep;
    }
    if (rep.min_eigenvalue < -tol * rep.scale) {
        rep.verdict = Verdict::not_semidefinite;
        rep.witness = eig.eigenvectors().col(0);
        rep.witness_form = (rep.witness.adjoint() * g * rep.witness)(0, 0).real();
    }
    return rep;
}

DefinitenessReport positive_definite_check(const FunctionalKernel& f,
                                           std::span<const Vector> points,
                                           double tol,
                                           double hermitian_tol) {
    check_points(points, 1, "positive_definite_check");
    return psd_report(gram_matrix(f, points), tol, hermitian_tol);
}

Eigen::MatrixXd zero_sum_basis(int n) {
    if (n < 2) throw std::invalid_argument("zero_sum_basis: n must be >= 2");
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n - 1);
    for (int k = 1; k < n; ++k) {
        const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
        for (int i = 0; i < k; ++i) b(i, k - 1) = 1.0 / norm;
        b(k, k - 1) = -static_cast<double>(k) / norm;
    }
    return b;
}

DefinitenessReport negative_definite_check(const FunctionalKernel& k,
                                           std::span<const Vector> points,
                                           double tol,
                                           double hermitian_tol) {
    check_points(points, 2, "negative_definite_check");
    const Eigen::MatrixXcd kmat = gram_matrix(k, points);
    DefinitenessReport rep;
    rep.size = static_cast<int>(kmat.rows());
    rep.tolerance = tol;
    rep.scale = matrix_scale(kmat);
    rep.max_asymmetry = asymmetry(kmat);

    const Complex origin = k(Vector::Zero(points.front().size()));
    if (origin.real() < -tol || std::abs(origin.imag()) > tol) {
        rep.verdict = Verdict::bad_origin;
        return rep;
    }
    const Eigen::MatrixXd basis = zero_sum_basis(rep.size);
    const Eigen::MatrixXcd bc = basis.cast<Complex>();
    const Eigen::MatrixXcd compressed = -(bc.adjoint() * (0.5 * (kmat + kmat.adjoint())) * bc);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(compressed);
    rep.min_eigenvalue = eig.eigenvalues()(0);
    if (rep.max_asymmetry > hermitian_tol * rep.scale) {
        rep.verdict = Verdict::not_hermitian;
        return rep;
    }
    if (rep.min_eigenvalue < -tol * rep.scale) {
        rep.verdict = Verdict::not_semidefinite;
        rep.witness = bc * eig.eigenvectors().col(0);
        rep.witness_form = (rep.witness.adjoint() * kmat * rep.witness)(0, 0).real();
    }
    return rep;
}

std::vector<DefinitenessReport> schoenberg_check(const FunctionalKernel& k,
                                                 std::span<const Vector> points,
                                                 std::span<const int> divisors,
                                                 double tol,
                                                 double hermitian_tol) {
    check_points(points, 1, "schoenberg_check");
    // one evaluation of k per difference, shared by all divisors
    const Eigen::MatrixXcd kmat = gram_matrix(k, points);
    std::vector<DefinitenessReport> out;
    for (int d : divisors) {
        if (d < 1) throw std::invalid_argument("schoenberg_check: divisors must be >= 1");
        const Eigen::MatrixXcd g = (-kmat / static_cast<double>(d)).array().exp().matrix();
        out.push_back(psd_report(g, tol, hermitian_tol));
    }
    return out;
}

} // namespace cylid
