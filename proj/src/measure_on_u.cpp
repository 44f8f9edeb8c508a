#include "cylid/measure_on_u.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cylid/errors.hpp"
#include "cylid/rng.hpp"

namespace cylid {

MeasureOnU MeasureOnU::atoms(int dim, std::vector<AtomU> atoms) {
    if (dim < 1) throw std::invalid_argument("measure on U: dimension must be >= 1");
    MeasureOnU m;
    m.kind_ = Kind::atoms;
    m.dim_ = dim;
    for (AtomU& a : atoms) {
        if (a.point.size() != dim) throw std::invalid_argument("measure on U: atom has wrong dimension");
        if (!a.point.allFinite() || !std::isfinite(a.weight)) throw std::invalid_argument("measure on U: atoms must be finite");
        if (a.weight < 0.0) throw std::invalid_argument("measure on U: negative atom weight");
        if (a.weight == 0.0) continue;
        if (a.point.isZero(0.0)) throw std::invalid_argument("measure on U: atom at the origin");
        m.atoms_.push_back(std::move(a));
    }
    return m;
}

MeasureOnU MeasureOnU::gaussian(double mass, Vector mean, double sd, MonteCarloSpec mc) {
    if (!(mass > 0.0) || !(sd > 0.0)) throw std::invalid_argument("gaussian measure on U: mass and sd must be positive");
    if (mean.size() < 1 || !mean.allFinite()) throw std::invalid_argument("gaussian measure on U: bad mean");
    if (mc.samples < 2) throw std::invalid_argument("gaussian measure on U: need at least 2 Monte Carlo samples");
    MeasureOnU m;
    m.kind_ = Kind::gaussian;
    m.dim_ = static_cast<int>(mean.size());
    m.mass_ = mass;
    m.mean_ = std::move(mean);
    m.sd_ = sd;
    m.mc_ = mc;
    auto samples = std::make_shared<Matrix>(m.dim_, static_cast<Eigen::Index>(mc.samples));
    Engine rng = make_engine(mc.seed);
    std::normal_distribution<double> z(0.0, 1.0);
    for (Eigen::Index j = 0; j < samples->cols(); ++j)
        for (int i = 0; i < m.dim_; ++i) (*samples)(i, j) = m.mean_(i) + sd * z(rng);
    m.samples_ = std::move(samples);
    return m;
}

MeasureOnU MeasureOnU::lebesgue_exterior(int dim, double intensity, double radius) {
    if (dim < 1 || !(intensity > 0.0) || !(radius > 0.0))
        throw std::invalid_argument("lebesgue exterior measure: invalid parameters");
    MeasureOnU m;
    m.kind_ = Kind::lebesgue_exterior;
    m.dim_ = dim;
    m.mass_ = intensity;
    m.radius_ = radius;
    return m;
}

MeasureOnU MeasureOnU::scaled(double factor) const {
    if (!(factor >= 0.0) || !std::isfinite(factor)) throw std::invalid_argument("measure on U: scale factor must be >= 0");
    MeasureOnU m = *this;
    if (kind_ == Kind::atoms) {
        m.atoms_.clear();
        if (factor > 0.0)
            for (const AtomU& a : atoms_) m.atoms_.push_back({a.point, a.weight * factor});
        return m;
    }
    if (factor == 0.0) return atoms(dim_, {});
    m.mass_ = mass_ * factor;
    return m;
}

LevyMeasureR MeasureOnU::project(const Vector& a) const {
    if (a.size() != dim_) throw std::invalid_argument("measure on U: functional has wrong dimension");
    switch (kind_) {
        case Kind::atoms: {
            std::vector<Atom> out;
            for (const AtomU& u : atoms_) {
                const double s = u.point.dot(a);
                if (s != 0.0) out.push_back({s, u.weight});
            }
            return LevyMeasureR::atomic(std::move(out));
        }
        case Kind::gaussian: {
            const double spread = sd_ * a.norm();
            if (spread == 0.0) return {};
            const double inf = std::numeric_limits<double>::infinity();
            return LevyMeasureR::density(Density1D::gaussian(mass_, mean_.dot(a), spread, -inf, inf));
        }
        case Kind::lebesgue_exterior:
            if (a.isZero(0.0)) return {};
            throw IntegrabilityError("lebesgue exterior measure: projections are not Levy measures (infinite mass)");
    }
    return {};
}

std::vector<std::pair<Vector, double>> MeasureOnU::project_n(std::span<const Vector> functionals) const {
    if (kind_ != Kind::atoms) throw std::invalid_argument("measure on U: n-dimensional projection needs an atomic measure");
    std::vector<std::pair<Vector, double>> out;
    for (const AtomU& u : atoms_) {
        Vector s(static_cast<Eigen::Index>(functionals.size()));
        for (std::size_t i = 0; i < functionals.size(); ++i) s(static_cast<Eigen::Index>(i)) = u.point.dot(functionals[i]);
        if (!s.isZero(0.0)) out.emplace_back(std::move(s), u.weight);
    }
    return out;
}

Estimate MeasureOnU::integral(const std::function<double(const Vector&)>& f) const {
    switch (kind_) {
        case Kind::atoms: {
            double v = 0.0;
            for (const AtomU& u : atoms_) v += u.weight * f(u.point);
            return {v, 0.0};
        }
        case Kind::gaussian: {
            const auto& xs = *samples_;
            const double n = static_cast<double>(xs.cols());
            double sum = 0.0;
            double sum2 = 0.0;
            for (Eigen::Index j = 0; j < xs.cols(); ++j) {
                const double v = f(xs.col(j));
                sum += v;
                sum2 += v * v;
            }
            const double mean = sum / n;
            const double var = std::max(0.0, (sum2 / n - mean * mean) * n / (n - 1.0));
            return {mass_ * mean, mass_ * std::sqrt(var / n)};
        }
        case Kind::lebesgue_exterior:
            throw IntegrabilityError("lebesgue exterior measure: integrals over U are not supported");
    }
    return {};
}

Estimate MeasureOnU::outside_ball_mass(const FunctionalSpace& space) const {
    if (kind_ == Kind::lebesgue_exterior) return {std::numeric_limits<double>::infinity(), 0.0};
    return integral([&](const Vector& u) { return space.norm(u) > 1.0 ? 1.0 : 0.0; });
}

} // namespace cylid
