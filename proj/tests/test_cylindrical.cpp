#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "cylid/conditions.hpp"
#include "cylid/cylindrical.hpp"
#include "cylid/errors.hpp"
#include "cylid/gallery.hpp"

using namespace cylid;

namespace {

constexpr int kDim = 4;

Vector ell_coeffs() {
    Vector c(kDim);
    c << 1.0, 2.0, 3.0, 4.0;
    return c;
}

CylindricalCharacteristics gaussian(const Matrix& q, TruncationFunction h = TruncationFunction::indicator()) {
    return {FunctionalSpace(static_cast<int>(q.rows())), DriftFunctional{}, QuadraticForm(q), CylindricalLevyMeasure{}, h};
}

CylindricalCharacteristics poisson(double lambda, TruncationFunction h) {
    return {FunctionalSpace(kDim), DriftFunctional::poisson_drift(ell_coeffs(), lambda, h), QuadraticForm::zero(kDim),
            CylindricalLevyMeasure::atomic_functional(ell_coeffs(), lambda), h};
}

Matrix sample_q() {
    Matrix b(kDim, kDim);
    b << 1.0, 0.2, 0.0, -0.3, 0.5, 1.1, 0.4, 0.0, 0.0, -0.2, 0.9, 0.1, 0.3, 0.0, 0.2, 0.7;
    return b * b.transpose();
}

} // namespace

TEST_CASE("Gaussian characteristic function") {
    Engine eng = make_engine(1);
    const Matrix q = sample_q();
    const CylindricalCharacteristics ch = gaussian(q);
    for (int rep = 0; rep < 20; ++rep) {
        const Vector a = testing_support::random_vector(eng, kDim);
        CHECK(std::abs(cf_cyl(ch, a) - std::exp(-0.5 * a.dot(q * a))) < 1e-15);
    }
    CHECK(cf_cyl(ch, Vector::Zero(kDim)) == Complex(1.0, 0.0));
}

TEST_CASE("Poisson characteristic function along a linear functional") {
    Engine eng = make_engine(2);
    const double lambda = 1.5;
    for (const auto& h : {TruncationFunction::indicator(), TruncationFunction::ramp()}) {
        const CylindricalCharacteristics ch = poisson(lambda, h);
        for (int rep = 0; rep < 20; ++rep) {
            const Vector a = testing_support::random_vector(eng, kDim, 0.4);
            const double l = ell_coeffs().dot(a);
            CHECK(std::abs(cf_cyl(ch, a) - std::exp(lambda * (std::exp(Complex(0.0, l)) - 1.0))) < 1e-14);
            CHECK(std::abs(kappa(ch, a) - lambda * (1.0 - std::exp(Complex(0.0, l)))) < 1e-14);

            const IdCharacteristics1D one = project_1d(ch, a);
            CHECK(one.m == lambda * h(l));
            CHECK(one.r == 0.0);
            REQUIRE(one.eta.atoms().size() == 1);
            CHECK(one.eta.atoms()[0].location == l);
            CHECK(one.eta.atoms()[0].weight == lambda);
        }
        const IdCharacteristics1D zero = project_1d(ch, Vector::Zero(kDim));
        CHECK(zero.m == 0.0);
        CHECK(zero.eta.is_zero());
        CHECK(kappa(ch, Vector::Zero(kDim)) == Complex(0.0, 0.0));
    }
}

TEST_CASE("cf_projection is cf_cyl of the combined functional") {
    Engine eng = make_engine(3);
    const Matrix q = sample_q();
    const CylindricalCharacteristics ch = gaussian(q);
    const std::vector<Vector> as = testing_support::random_points(eng, 2, kDim);
    for (int rep = 0; rep < 10; ++rep) {
        const Vector t = testing_support::random_vector(eng, 2);
        const Vector s = t(0) * as[0] + t(1) * as[1];
        // bilinear expansion as an independent oracle
        const double form = t(0) * t(0) * as[0].dot(q * as[0]) + 2.0 * t(0) * t(1) * as[0].dot(q * as[1]) +
                            t(1) * t(1) * as[1].dot(q * as[1]);
        CHECK(std::abs(cf_projection(ch, as, t) - std::exp(-0.5 * form)) < 1e-14);
        CHECK(cf_projection(ch, as, t) == cf_cyl(ch, s));
    }
    CHECK(cf_projection(ch, as, Vector::Zero(2)) == Complex(1.0, 0.0));
    CHECK(cf_projection(ch, as, Vector::Unit(2, 1)) == cf_cyl(ch, as[1]));
}

TEST_CASE("project_1d of a Gaussian") {
    const Matrix q = sample_q();
    const Vector a = Vector::LinSpaced(kDim, -1.0, 1.0);
    const IdCharacteristics1D one = project_1d(gaussian(q), a);
    CHECK(one.m == 0.0);
    CHECK(one.r == doctest::Approx(std::sqrt(a.dot(q * a))));
    CHECK(one.eta.is_zero());
}

TEST_CASE("drift functionals") {
    Engine eng = make_engine(4);
    const auto hi = TruncationFunction::indicator();
    const DriftFunctional p = DriftFunctional::poisson_drift(ell_coeffs(), 2.0, hi);
    CHECK(p(Vector::Zero(kDim)) == 0.0);
    for (int rep = 0; rep < 20; ++rep) {
        const Vector a = testing_support::random_vector(eng, kDim, 0.3);
        CHECK(p(-a) == -p(a));
    }
    const DriftFunctional lin = DriftFunctional::linear(ell_coeffs());
    const Vector a = Vector::Ones(kDim);
    CHECK((lin + p.scaled(0.5))(a) == doctest::Approx(10.0 + 0.5 * 2.0 * hi(10.0)));
}

TEST_CASE("quadratic forms are validated") {
    Matrix asym = Matrix::Identity(2, 2);
    asym(0, 1) = 0.5;
    CHECK_THROWS_AS(QuadraticForm{asym}, std::invalid_argument);
    Matrix indefinite(2, 2);
    indefinite << 1.0, 2.0, 2.0, 1.0;
    CHECK_THROWS_AS(QuadraticForm{indefinite}, std::invalid_argument);
    const QuadraticForm q(sample_q());
    const Vector a = Vector::Ones(kDim);
    for (double t : {-2.0, 0.5, 3.0}) CHECK(q(t * a) == doctest::Approx(t * t * q(a)).epsilon(1e-14));
}

TEST_CASE("convolution") {
    Engine eng = make_engine(5);
    const Matrix q1 = sample_q();
    const Matrix q2 = Matrix::Identity(kDim, kDim);
    const CylindricalCharacteristics g = convolve(gaussian(q1), gaussian(q2));
    CHECK(g.q.matrix().isApprox(q1 + q2));

    const auto h = TruncationFunction::ramp();
    const CylindricalCharacteristics p12 = convolve(poisson(1.0, h), poisson(2.5, h));
    const CylindricalCharacteristics p3 = poisson(3.5, h);
    const CylindricalCharacteristics trivial = gaussian(Matrix::Zero(kDim, kDim), h);
    for (int rep = 0; rep < 20; ++rep) {
        const Vector a = testing_support::random_vector(eng, kDim, 0.5);
        CHECK(std::abs(cf_cyl(g, a) - std::exp(-0.5 * a.dot((q1 + q2) * a))) < 1e-15);
        CHECK(std::abs(cf_cyl(p12, a) - cf_cyl(p3, a)) < 1e-13);
        CHECK(std::abs(cf_cyl(convolve(p3, trivial), a) - cf_cyl(p3, a)) < 1e-15);
    }
    CHECK_THROWS_AS(convolve(poisson(1.0, h), poisson(1.0, TruncationFunction::indicator())), MismatchError);
    CHECK_THROWS_AS(convolve(gaussian(Matrix::Identity(2, 2)), gaussian(Matrix::Identity(3, 3))), MismatchError);
}

TEST_CASE("time scaling") {
    Engine eng = make_engine(6);
    const auto h = TruncationFunction::ramp();
    const CylindricalCharacteristics p = poisson(1.2, h);
    CHECK_THROWS_AS(time_scale(p, -1.0), std::invalid_argument);
    for (int rep = 0; rep < 10; ++rep) {
        const Vector a = testing_support::random_vector(eng, kDim, 0.5);
        CHECK(cf_cyl(time_scale(p, 1.0), a) == cf_cyl(p, a));
        CHECK(cf_cyl(time_scale(p, 0.0), a) == Complex(1.0, 0.0));
        CHECK(std::abs(cf_cyl(time_scale(p, 2.0), a) - cf_cyl(poisson(2.4, h), a)) < 1e-14);
    }
}

TEST_CASE("cylindrical truncation conversion") {
    const double lambda = 1.5;
    const CylindricalCharacteristics p = poisson(lambda, TruncationFunction::indicator());
    Vector a = Vector::Zero(kDim);
    a(0) = 1.5;  // l(a) = 1.5
    const CylindricalCharacteristics conv = convert_truncation_cyl(p, TruncationFunction::ramp());
    CHECK(conv.p(a) == doctest::Approx(p.p(a) + lambda * 0.75).epsilon(1e-15));
    CHECK(std::abs(cf_cyl(conv, a) - cf_cyl(p, a)) < 1e-14);

    const CylindricalCharacteristics g = gaussian(sample_q());
    const CylindricalCharacteristics gc = convert_truncation_cyl(g, TruncationFunction::ramp());
    CHECK(gc.p(Vector::Ones(kDim)) == 0.0);

    Vector small = Vector::Zero(kDim);
    small(0) = 0.5;
    CHECK(conv.p(small) == p.p(small));
}

TEST_CASE("Gaussian and jump parts") {
    const auto h = TruncationFunction::ramp();
    const CylindricalCharacteristics ch = convolve(gaussian(sample_q(), h), poisson(1.0, h));
    const Vector a = Vector::LinSpaced(kDim, 0.1, 0.4);
    CHECK(std::abs(cf_cyl(gaussian_part(ch), a) * cf_cyl(jump_part(ch), a) - cf_cyl(ch, a)) < 1e-15);
    CHECK(kappa(gaussian_part(ch), a) == Complex(0.0, 0.0));
}

TEST_CASE("projective consistency of atomic cylindrical measures") {
    Engine eng = make_engine(7);
    const CylindricalLevyMeasure nu = CylindricalLevyMeasure::atomic_functional(ell_coeffs(), 2.0) +
                                      CylindricalLevyMeasure::on_u(testing_support::straddling_atoms(eng, kDim, 4));
    const std::vector<Vector> as = testing_support::random_points(eng, 3, kDim);
    Matrix t(2, 3);
    t << 1.0, -2.0, 0.5, 0.0, 1.0, 3.0;
    std::vector<Vector> composed;
    for (int r = 0; r < 2; ++r) composed.push_back(t(r, 0) * as[0] + t(r, 1) * as[1] + t(r, 2) * as[2]);

    const auto full = nu.project_n(as);
    const auto direct = nu.project_n(composed);
    REQUIRE(full.size() == direct.size());
    for (std::size_t i = 0; i < full.size(); ++i) {
        CHECK((t * full[i].first - direct[i].first).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(full[i].second == direct[i].second);
    }
    // one-dimensional projections agree with the n-dimensional ones
    const LevyMeasureR one = nu.project(as[1]);
    double mass = 0.0;
    for (const auto& [pt, w] : full)
        if (pt(1) != 0.0) mass += w;
    CHECK(one.total_mass() == doctest::Approx(mass));
}

TEST_CASE("continuous logarithm and k-th roots") {
    Engine eng = make_engine(8);
    const CylindricalCharacteristics p = poisson(3.0, TruncationFunction::ramp());
    for (int rep = 0; rep < 10; ++rep) {
        const Vector a = testing_support::random_vector(eng, kDim, 1.0);
        const Complex log = continuous_log_cf(p, a);
        // the exact exponent is the continuous logarithm
        CHECK(std::abs(log - exponent_cyl(p, a)) < 1e-9);
        for (int k : {2, 3, 4}) CHECK(std::abs(std::pow(cf_root(p, a, k), k) - cf_cyl(p, a)) < 1e-12);
    }
}

TEST_CASE("condition report") {
    const ConditionsGrid grid = default_conditions_grid(kDim);
    CHECK(id_conditions_report(gaussian(sample_q()), grid).all_pass());
    CHECK(id_conditions_report(poisson(1.5, TruncationFunction::ramp()), grid).all_pass());

    const CylindricalCharacteristics drift_only{FunctionalSpace(kDim), DriftFunctional::poisson_drift(ell_coeffs(), 1.0, TruncationFunction::indicator()),
                                                QuadraticForm::zero(kDim), CylindricalLevyMeasure{}, TruncationFunction::indicator()};
    ConditionsGrid with_witness = grid;
    with_witness.point_sets.push_back({Vector::Zero(kDim), 0.8 * Vector::Unit(kDim, 0), 1.6 * Vector::Unit(kDim, 0)});
    const ConditionsReport rep = id_conditions_report(drift_only, with_witness);
    CHECK(rep.conditions[0].pass);
    CHECK(rep.conditions[1].pass);
    CHECK(rep.conditions[2].pass);
    CHECK_FALSE(rep.conditions[3].pass);
    CHECK_FALSE(rep.negative_definite.back().passed());
}

TEST_CASE("condition report flags a discontinuous drift") {
    const auto hi = TruncationFunction::indicator();
    const CylindricalCharacteristics p = poisson(1.0, hi);
    ConditionsGrid grid = default_conditions_grid(kDim);
    // l(limit) = 1 exactly; the drift jumps there along a_n -> a from above
    FunctionalSequence seq;
    seq.limit = Vector::Unit(kDim, 0);
    for (int n = 1; n <= 30; ++n) seq.terms.push_back(seq.limit * (1.0 + std::ldexp(1.0, -n)));
    grid.sequences = {seq};
    const ConditionsReport rep = id_conditions_report(p, grid);
    CHECK_FALSE(rep.conditions[0].pass);
}
