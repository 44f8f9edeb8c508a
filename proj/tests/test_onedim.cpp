#include <cmath>
#include <numeric>

#include "doctest.h"
#include "support.hpp"

#include "cylid/onedim.hpp"

using namespace cylid;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

IdCharacteristics1D make(double m, double r, LevyMeasureR eta, TruncationFunction h = TruncationFunction::indicator()) {
    IdCharacteristics1D ch;
    ch.m = m;
    ch.r = r;
    ch.eta = std::move(eta);
    ch.h = std::move(h);
    return ch;
}

LevyMeasureR random_atoms(Engine& eng, int count) {
    std::uniform_real_distribution<double> loc(-4.0, 4.0);
    std::uniform_real_distribution<double> w(0.05, 2.0);
    std::vector<Atom> atoms;
    for (int i = 0; i < count; ++i) atoms.push_back({loc(eng), w(eng)});
    return LevyMeasureR::atomic(atoms);
}

LevyMeasureR mixed_measure() {
    return LevyMeasureR::atomic({{1.5, 0.4}, {-0.3, 1.1}}) +
           LevyMeasureR::density(Density1D::exponential(0.8, 2.0, -kInf, kInf, 0.05)) +
           LevyMeasureR::density(Density1D::uniform(0.3, 0.5, 2.5));
}

const std::vector<double> kTs = testing_support::linspace(-6.0, 6.0, 49);

} // namespace

TEST_CASE("cf_1d closed forms") {
    CHECK(std::abs(cf_1d(make(0.0, 1.0, {}), 1.0) - std::exp(-0.5)) < 1e-15);
    for (double t : kTs) {
        CHECK(std::abs(cf_1d(make(0.7, 0.0, {}), t) - std::exp(Complex(0.0, 0.7 * t))) < 1e-14);
        const double lambda = 2.3;
        const Complex poisson = std::exp(lambda * (std::exp(Complex(0.0, t)) - 1.0));
        CHECK(std::abs(cf_1d(make(lambda, 0.0, LevyMeasureR::dirac(1.0, lambda)), t) - poisson) < 1e-14);
    }
}

TEST_CASE("cf_1d basic properties") {
    for (const IdCharacteristics1D& ch : {make(0.3, 0.5, mixed_measure()), make(-1.0, 0.0, mixed_measure(), TruncationFunction::ramp())}) {
        CHECK(cf_1d(ch, 0.0) == Complex(1.0, 0.0));
        for (double t : kTs) {
            const Complex v = cf_1d(ch, t);
            CHECK(std::abs(v) <= 1.0 + 1e-10);
            CHECK(std::abs(cf_1d(ch, -t) - std::conj(v)) < 1e-12);
        }
    }
}

TEST_CASE("cf_1d of an infinite-mass measure") {
    // symmetric alpha-stable: exp(-c |t|^alpha) with c = 2 scale Gamma(-alpha) cos(pi alpha / 2) (-1)
    const double alpha = 1.5;
    const double scale = 0.4;
    const LevyMeasureR eta = LevyMeasureR::density(Density1D::power(scale, alpha, -kInf, kInf));
    const double c = -2.0 * scale * std::tgamma(-alpha) * std::cos(std::numbers::pi * alpha / 2.0);
    for (double t : {0.3, 1.0, 2.5}) CHECK(std::abs(cf_1d(make(0.0, 0.0, eta), t) - std::exp(-c * std::pow(t, alpha))) < 1e-8);
}

TEST_CASE("truncation conversion examples") {
    const auto hi = TruncationFunction::indicator();
    const auto hc = TruncationFunction::ramp();
    CHECK(convert_truncation_1d(make(0.2, 0.0, LevyMeasureR::dirac(0.5)), hc).m == 0.2);
    CHECK(convert_truncation_1d(make(0.2, 0.0, LevyMeasureR::dirac(1.5)), hc).m == 0.2 + 0.75);
    CHECK(convert_truncation_1d(make(0.2, 0.0, LevyMeasureR::dirac(3.0)), hc).m == 0.2);
    CHECK(convert_truncation_1d(make(0.2, 0.0, LevyMeasureR::dirac(1.5)), hc).h == hc);
    CHECK(convert_truncation_1d(make(0.2, 0.0, LevyMeasureR::dirac(1.5), hc), hi).m == 0.2 - 0.75);
}

TEST_CASE("truncation conversion leaves the characteristic function unchanged") {
    Engine eng = make_engine(3);
    std::normal_distribution<double> z(0.0, 1.0);
    const std::vector<TruncationFunction> hs{TruncationFunction::indicator(), TruncationFunction::ramp()};
    for (int rep = 0; rep < 20; ++rep) {
        for (const auto& from : hs) {
            for (const auto& to : hs) {
                const IdCharacteristics1D ch = make(z(eng), std::abs(z(eng)), random_atoms(eng, 5), from);
                const IdCharacteristics1D conv = convert_truncation_1d(ch, to);
                double worst = 0.0;
                for (double t : kTs) worst = std::max(worst, std::abs(cf_1d(ch, t) - cf_1d(conv, t)));
                CHECK(worst <= 1e-9);
            }
        }
    }
    const IdCharacteristics1D dens = make(0.1, 0.2, mixed_measure());
    const IdCharacteristics1D conv = convert_truncation_1d(dens, TruncationFunction::ramp());
    for (double t : kTs) CHECK(std::abs(cf_1d(dens, t) - cf_1d(conv, t)) <= 1e-9);
}

TEST_CASE("k-th convolution roots reproduce the law") {
    const IdCharacteristics1D ch = make(0.4, 0.8, mixed_measure());
    for (int k : {2, 3, 5}) {
        const IdCharacteristics1D root = make(ch.m / k, ch.r / std::sqrt(double(k)), ch.eta.scaled(1.0 / k));
        for (double t : kTs) CHECK(std::abs(std::pow(cf_1d(root, t), k) - cf_1d(ch, t)) <= 1e-10);
    }
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(make(0.0, -1.0, {}).validate(), std::invalid_argument);
    CHECK_NOTHROW(make(0.0, 1.0, mixed_measure()).validate());
}

TEST_CASE("small jump bias bound") {
    const double alpha = 0.8;
    const double scale = 1.3;
    const double eps = 0.1;
    const LevyMeasureR eta = LevyMeasureR::density(Density1D::power(scale, alpha, -kInf, kInf)) + LevyMeasureR::dirac(0.05, 2.0);
    const double exact = 2.0 * scale * std::pow(eps, 2.0 - alpha) / (2.0 - alpha) + 2.0 * 0.05 * 0.05;
    CHECK(small_jump_second_moment(eta, eps) == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("sampling a standard Gaussian") {
    const auto xs = sample_1d(make(0.0, 1.0, {}), 200000, 42, 0.0);
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= xs.size() - 1;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.01);
}

TEST_CASE("sampling a Poisson law") {
    const double lambda = 3.2;
    const std::size_t n = 100000;
    const auto xs = sample_1d(make(lambda, 0.0, LevyMeasureR::dirac(1.0, lambda)), n, 9, 0.0);
    const auto cdf = [&](long k) {
        double term = std::exp(-lambda);
        double sum = term;
        for (long j = 1; j <= k; ++j) sum += (term *= lambda / j);
        return k < 0 ? 0.0 : sum;
    };
    CHECK(ks_statistic_lattice(xs, 0.0, 1.0, cdf) < ks_critical_1pct(n));
}

TEST_CASE("empirical characteristic function of a truncated law") {
    const double kInfty = std::numeric_limits<double>::infinity();
    const LevyMeasureR eta = mixed_measure() + LevyMeasureR::density(Density1D::power(0.3, 1.2, -kInfty, kInfty));
    const IdCharacteristics1D ch = make(0.5, 0.3, eta, TruncationFunction::ramp());
    const double eps = 0.05;
    const std::size_t n = 100000;
    const auto xs = sample_1d(ch, n, 1234, eps);
    const IdCharacteristics1D target = truncate_small_jumps(ch, eps);
    for (double t : testing_support::linspace(-3.0, 3.0, 21))
        CHECK(std::abs(empirical_cf(xs, t) - cf_1d(target, t)) <= 3.0 / std::sqrt(double(n)));
    // the truncated law stays close to the full one, as the bias bound predicts
    const double bias = small_jump_second_moment(eta, eps);
    for (double t : {0.5, 1.0, 2.0}) CHECK(std::abs(cf_1d(target, t) - cf_1d(ch, t)) <= 0.5 * t * t * bias + 1e-9);
}

TEST_CASE("sampling is deterministic and sharded") {
    const IdCharacteristics1D ch = make(0.1, 0.5, mixed_measure());
    const auto a = sample_1d(ch, 40000, 5, 0.0);
    const auto b = sample_1d(ch, 40000, 5, 0.0);
    const auto c = sample_1d(ch, 40000, 6, 0.0);
    CHECK(a == b);
    CHECK(a != c);
    // a longer run extends a shorter one
    const auto prefix = sample_1d(ch, 20000, 5, 0.0);
    CHECK(std::equal(prefix.begin(), prefix.end(), a.begin()));
}

TEST_CASE("sampling rejects a zero cutoff for infinite mass") {
    const LevyMeasureR eta = LevyMeasureR::density(Density1D::power(1.0, 1.0, -kInf, kInf));
    CHECK_THROWS_AS(sample_1d(make(0.0, 0.0, eta), 10, 1, 0.0), std::invalid_argument);
    CHECK_NOTHROW(sample_1d(make(0.0, 0.0, eta), 10, 1, 0.01));
}
