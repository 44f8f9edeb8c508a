#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "cylid/definiteness.hpp"

using namespace cylid;

namespace {

std::vector<Vector> line_points(std::initializer_list<double> xs) {
    std::vector<Vector> out;
    for (double x : xs) out.push_back(Vector::Constant(1, x));
    return out;
}

double h_indicator(double s) { return std::abs(s) <= 1.0 ? s : 0.0; }

} // namespace

TEST_CASE("positive-definiteness examples") {
    const FunctionalKernel gauss = [](const Vector& a) { return Complex(std::exp(-0.5 * a.squaredNorm()), 0.0); };
    CHECK(positive_definite_check(gauss, line_points({0.0, 1.0, -1.0})).passed());

    const FunctionalKernel one = [](const Vector&) { return Complex(1.0, 0.0); };
    CHECK(positive_definite_check(one, line_points({0.3, -2.0, 5.0, 7.0})).passed());
}

TEST_CASE("drift-only kernel fails with the three-point witness") {
    const FunctionalKernel f = [](const Vector& a) { return std::exp(Complex(0.0, h_indicator(2.0 * a(0)))); };
    const auto pts = line_points({0.0, 0.4, 0.8});
    const Eigen::MatrixXcd g = gram_matrix(f, pts);
    const Complex det = g.determinant();
    CHECK(std::abs(det - (2.0 * std::cos(1.6) - 2.0)) < 1e-12);
    CHECK(det.real() < 0.0);

    const DefinitenessReport r = positive_definite_check(f, pts);
    CHECK(r.verdict == Verdict::not_semidefinite);
    REQUIRE(r.witness.size() == 3);
    CHECK(r.witness_form < 0.0);
    CHECK(r.witness_form == doctest::Approx(r.min_eigenvalue).epsilon(1e-10));
    // independent oracle: smallest eigenvalue of the explicit matrix
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(g);
    CHECK(r.min_eigenvalue == doctest::Approx(eig.eigenvalues()(0)).epsilon(1e-12));
}

TEST_CASE("non-Hermitian kernels get their own verdict") {
    const FunctionalKernel f = [](const Vector& a) { return Complex(1.0, a(0) * a(0)); };
    const DefinitenessReport r = positive_definite_check(f, line_points({0.0, 1.0}));
    CHECK(r.verdict == Verdict::not_hermitian);
    CHECK(r.max_asymmetry == doctest::Approx(2.0));
}

TEST_CASE("negative-definiteness examples") {
    Engine eng = make_engine(21);
    const Vector c = Vector::LinSpaced(3, 1.0, 3.0);
    const double lambda = 0.7;
    const FunctionalKernel poisson = [&](const Vector& a) { return lambda * (1.0 - std::exp(Complex(0.0, c.dot(a)))); };
    Matrix q(3, 3);
    q << 2.0, 0.3, 0.1, 0.3, 1.0, -0.2, 0.1, -0.2, 0.5;
    const FunctionalKernel quadratic = [&](const Vector& a) { return Complex(a.dot(q * a), 0.0); };
    const FunctionalKernel zero = [](const Vector&) { return Complex(0.0, 0.0); };
    for (int rep = 0; rep < 10; ++rep) {
        const auto pts = testing_support::random_points(eng, 12, 3);
        CHECK(negative_definite_check(poisson, pts).passed());
        CHECK(negative_definite_check(quadratic, pts).passed());
        CHECK(negative_definite_check(zero, pts).passed());

        // the constrained form equals -lambda |sum z_i e^{-i l(a_i)}|^2
        const Eigen::MatrixXcd k = gram_matrix(poisson, pts);
        Eigen::VectorXcd z = zero_sum_basis(12).cast<Complex>() * Eigen::VectorXcd::Random(11);
        Complex s{0.0, 0.0};
        for (int i = 0; i < 12; ++i) s += z(i) * std::exp(Complex(0.0, -c.dot(pts[static_cast<std::size_t>(i)])));
        CHECK(std::abs((z.adjoint() * k * z)(0, 0) + lambda * std::norm(s)) < 1e-10);
    }
}

TEST_CASE("negative-definite check rejects a bad origin and indefinite kernels") {
    const FunctionalKernel shifted = [](const Vector&) { return Complex(-1.0, 0.0); };
    CHECK(negative_definite_check(shifted, line_points({0.0, 1.0})).verdict == Verdict::bad_origin);
    const FunctionalKernel neg_quadratic = [](const Vector& a) { return Complex(-a.squaredNorm(), 0.0); };
    const DefinitenessReport r = negative_definite_check(neg_quadratic, line_points({0.0, 1.0, 2.5}));
    CHECK(r.verdict == Verdict::not_semidefinite);
    CHECK(std::abs(r.witness.sum()) < 1e-12);
    CHECK(r.witness_form > 0.0);
}

TEST_CASE("negative-definite implies Schoenberg on the same grid") {
    Engine eng = make_engine(22);
    const std::vector<int> divisors{1, 2, 3, 4, 7};
    const FunctionalKernel kernels[] = {
        [](const Vector& a) { return Complex(std::abs(a(0)), 0.0); },
        [](const Vector& a) { return Complex(std::sqrt(std::abs(a(0))) + std::abs(a(1)), 0.3 * a(0)); },
        [](const Vector& a) { return 2.0 * (1.0 - std::exp(Complex(0.0, a(0) - 2.0 * a(1)))); },
    };
    for (const auto& k : kernels) {
        for (int rep = 0; rep < 5; ++rep) {
            const auto pts = testing_support::random_points(eng, 10, 2);
            if (!negative_definite_check(k, pts).passed()) continue;
            for (const auto& r : schoenberg_check(k, pts, divisors)) CHECK(r.passed());
        }
    }
}

TEST_CASE("reports are deterministic and validate their inputs") {
    Engine eng = make_engine(23);
    const auto pts = testing_support::random_points(eng, 8, 2);
    const FunctionalKernel k = [](const Vector& a) { return Complex(a.squaredNorm(), 0.0); };
    const auto r1 = negative_definite_check(k, pts);
    const auto r2 = negative_definite_check(k, pts);
    CHECK(r1.min_eigenvalue == r2.min_eigenvalue);
    CHECK_THROWS_AS(negative_definite_check(k, std::vector<Vector>{Vector::Zero(2)}), std::invalid_argument);
    CHECK_THROWS_AS(positive_definite_check(k, std::vector<Vector>{}), std::invalid_argument);
    CHECK_THROWS_AS(positive_definite_check(k, testing_support::random_points(eng, 65, 1)), std::invalid_argument);
    const std::vector<int> bad{0};
    CHECK_THROWS_AS(schoenberg_check(k, pts, bad), std::invalid_argument);
}

TEST_CASE("zero-sum basis is orthonormal") {
    for (int n : {2, 3, 10}) {
        const Eigen::MatrixXd b = zero_sum_basis(n);
        CHECK((b.transpose() * b - Eigen::MatrixXd::Identity(n - 1, n - 1)).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(b.colwise().sum().cwiseAbs().maxCoeff() < 1e-14);
    }
}
