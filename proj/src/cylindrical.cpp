#include "cylid/cylindrical.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "cylid/errors.hpp"
#include "cylid/extension.hpp"

namespace cylid {
namespace {

std::vector<double> truncation_breakpoints(const TruncationFunction& h) {
    std::vector<double> cuts = h.kinks();
    cuts.push_back(h.identity_radius());
    cuts.push_back(-h.identity_radius());
    return cuts;
}

double real_integral(const LevyMeasureR& eta,
                     const std::function<double(double)>& g,
                     std::vector<double> breakpoints,
                     double growth,
                     const char* what) {
    if (eta.is_zero()) return 0.0;
    LevyIntegralOptions opts;
    opts.breakpoints = std::move(breakpoints);
    opts.growth_constant = growth;
    const IntegralResult r = levy_integral(eta, [&](double s) { return Complex(g(s), 0.0); }, opts);
    if (!r.converged) throw QuadratureError(std::string(what) + ": quadrature did not converge", r.error_estimate);
    return r.value.real();
}

int leaf_dim(const CylindricalLevyMeasure::Leaf& leaf) {
    if (const auto* af = std::get_if<CylindricalLevyMeasure::AtomicFunctional>(&leaf))
        return static_cast<int>(af->coeffs.size());
    return std::get<MeasureOnU>(leaf).dim();
}

} // namespace

// ---------------------------------------------------------------------------
// CylindricalLevyMeasure

CylindricalLevyMeasure CylindricalLevyMeasure::atomic_functional(Vector coeffs, double rate) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw std::invalid_argument("atomic functional measure: rate must be >= 0");
    if (coeffs.size() < 1 || !coeffs.allFinite()) throw std::invalid_argument("atomic functional measure: bad coefficients");
    CylindricalLevyMeasure m;
    if (rate > 0.0) m.terms_.push_back({1.0, AtomicFunctional{std::move(coeffs), rate}});
    return m;
}

CylindricalLevyMeasure CylindricalLevyMeasure::on_u(MeasureOnU nu) {
    CylindricalLevyMeasure m;
    if (!nu.is_zero()) m.terms_.push_back({1.0, std::move(nu)});
    return m;
}

CylindricalLevyMeasure CylindricalLevyMeasure::operator+(const CylindricalLevyMeasure& other) const {
    CylindricalLevyMeasure m = *this;
    m.terms_.insert(m.terms_.end(), other.terms_.begin(), other.terms_.end());
    return m;
}

CylindricalLevyMeasure CylindricalLevyMeasure::scaled(double factor) const {
    if (!(factor >= 0.0) || !std::isfinite(factor)) throw std::invalid_argument("cylindrical Levy measure: factor must be >= 0");
    CylindricalLevyMeasure m;
    if (factor == 0.0) return m;
    for (const Term& t : terms_) m.terms_.push_back({t.weight * factor, t.leaf});
    return m;
}

LevyMeasureR CylindricalLevyMeasure::project(const Vector& a) const {
    LevyMeasureR out;
    for (const Term& t : terms_) {
        if (const auto* af = std::get_if<AtomicFunctional>(&t.leaf)) {
            if (af->coeffs.size() != a.size()) throw std::invalid_argument("cylindrical Levy measure: functional has wrong dimension");
            const double s = af->coeffs.dot(a);
            if (s != 0.0) out = out + LevyMeasureR::dirac(s, t.weight * af->rate);
        } else {
            out = out + std::get<MeasureOnU>(t.leaf).project(a).scaled(t.weight);
        }
    }
    return out;
}

std::vector<std::pair<Vector, double>> CylindricalLevyMeasure::project_n(std::span<const Vector> functionals) const {
    std::vector<std::pair<Vector, double>> out;
    const auto n = static_cast<Eigen::Index>(functionals.size());
    for (const Term& t : terms_) {
        if (const auto* af = std::get_if<AtomicFunctional>(&t.leaf)) {
            Vector s(n);
            for (Eigen::Index i = 0; i < n; ++i) s(i) = af->coeffs.dot(functionals[static_cast<std::size_t>(i)]);
            if (!s.isZero(0.0)) out.emplace_back(std::move(s), t.weight * af->rate);
        } else {
            for (auto& [point, w] : std::get<MeasureOnU>(t.leaf).project_n(functionals))
                out.emplace_back(std::move(point), w * t.weight);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// DriftFunctional

DriftFunctional DriftFunctional::linear(Vector coeffs) {
    DriftFunctional p;
    p.terms_.push_back({1.0, Linear{std::move(coeffs)}});
    return p;
}

DriftFunctional DriftFunctional::poisson_drift(Vector coeffs, double rate, TruncationFunction h) {
    DriftFunctional p;
    p.terms_.push_back({1.0, PoissonDrift{std::move(coeffs), rate, std::move(h)}});
    return p;
}

DriftFunctional DriftFunctional::second_moment(CylindricalLevyMeasure nu, TruncationFunction h) {
    DriftFunctional p;
    if (!nu.is_zero()) p.terms_.push_back({1.0, SecondMoment{std::move(nu), std::move(h)}});
    return p;
}

DriftFunctional DriftFunctional::d_nu(MeasureOnU nu, TruncationFunction h, FunctionalSpace space) {
    if (nu.dim() != space.dim()) throw std::invalid_argument("d_nu drift: measure and space dimensions differ");
    require_finite_outside_ball(nu, space);
    DriftFunctional p;
    if (nu.is_zero()) return p;
    Vector moment = ball_first_moment(nu, space).first;
    p.terms_.push_back({1.0, Dnu{std::move(nu), std::move(h), space, std::move(moment)}});
    return p;
}

DriftFunctional DriftFunctional::truncation_shift(CylindricalLevyMeasure nu, TruncationFunction from, TruncationFunction to) {
    DriftFunctional p;
    if (!nu.is_zero() && !(from == to)) p.terms_.push_back({1.0, TruncationShift{std::move(nu), std::move(from), std::move(to)}});
    return p;
}

double DriftFunctional::operator()(const Vector& a) const {
    double total = 0.0;
    for (const Term& t : terms_) {
        const double v = std::visit(
            [&](const auto& leaf) -> double {
                using L = std::decay_t<decltype(leaf)>;
                if constexpr (std::is_same_v<L, Linear>) {
                    return leaf.coeffs.dot(a);
                } else if constexpr (std::is_same_v<L, PoissonDrift>) {
                    return leaf.rate * leaf.h(leaf.coeffs.dot(a));
                } else if constexpr (std::is_same_v<L, SecondMoment>) {
                    const auto& h = leaf.h;
                    return real_integral(leaf.nu.project(a), [&](double s) { return h(s) - s; }, truncation_breakpoints(h),
                                         1.0, "second-moment drift");
                } else if constexpr (std::is_same_v<L, Dnu>) {
                    const auto& h = leaf.h;
                    const LevyMeasureR eta = leaf.nu.project(a);
                    double hpart = 0.0;
                    if (!eta.is_zero()) {
                        LevyIntegralOptions opts;
                        opts.breakpoints = truncation_breakpoints(h);
                        const IntegralResult r = levy_integral(eta, [&](double s) { return Complex(h(s), 0.0); }, opts);
                        if (!r.converged) throw QuadratureError("d_nu drift: quadrature did not converge", r.error_estimate);
                        hpart = r.value.real();
                    }
                    return hpart - leaf.ball_moment.dot(a);
                } else {
                    const auto& from = leaf.from;
                    const auto& to = leaf.to;
                    std::vector<double> cuts = truncation_breakpoints(from);
                    for (double b : truncation_breakpoints(to)) cuts.push_back(b);
                    const double c = std::min(from.identity_radius(), to.identity_radius());
                    return real_integral(leaf.nu.project(a), [&](double s) { return to(s) - from(s); }, cuts,
                                         (from.bound() + to.bound()) / std::min(c * c, 1.0), "truncation shift");
                }
            },
            t.leaf);
        total += t.weight * v;
    }
    return total;
}

DriftFunctional DriftFunctional::operator+(const DriftFunctional& other) const {
    DriftFunctional p = *this;
    p.terms_.insert(p.terms_.end(), other.terms_.begin(), other.terms_.end());
    return p;
}

DriftFunctional DriftFunctional::scaled(double factor) const {
    if (!std::isfinite(factor)) throw std::invalid_argument("drift: factor must be finite");
    DriftFunctional p;
    if (factor == 0.0) return p;
    for (const Term& t : terms_) p.terms_.push_back({t.weight * factor, t.leaf});
    return p;
}

// ---------------------------------------------------------------------------
// QuadraticForm

QuadraticForm::QuadraticForm(Matrix q) : q_(std::move(q)) {
    if (q_.rows() != q_.cols() || q_.rows() < 1) throw std::invalid_argument("quadratic form: matrix must be square and non-empty");
    if (!q_.allFinite()) throw std::invalid_argument("quadratic form: non-finite entry");
    const double scale = std::max(1.0, q_.cwiseAbs().maxCoeff());
    if ((q_ - q_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("quadratic form: matrix is not symmetric");
    const double trace_scale = std::max(1.0, std::abs(q_.trace()));
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (q_ + q_.transpose()), Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-12 * trace_scale)
        throw std::invalid_argument("quadratic form: matrix is not positive semidefinite");
}

// ---------------------------------------------------------------------------
// CylindricalCharacteristics

CylindricalCharacteristics::CylindricalCharacteristics(FunctionalSpace space_,
                                                       DriftFunctional p_,
                                                       QuadraticForm q_,
                                                       CylindricalLevyMeasure nu_,
                                                       TruncationFunction h_)
    : space(space_), p(std::move(p_)), q(std::move(q_)), nu(std::move(nu_)), h(std::move(h_)) {
    if (q.dim() != space.dim()) throw std::invalid_argument("characteristics: quadratic form dimension differs from the space");
    for (const auto& t : nu.terms())
        if (leaf_dim(t.leaf) != space.dim())
            throw std::invalid_argument("characteristics: Levy measure dimension differs from the space");
    for (const auto& t : p.terms()) {
        if (const auto* lin = std::get_if<DriftFunctional::Linear>(&t.leaf); lin && lin->coeffs.size() != space.dim())
            throw std::invalid_argument("characteristics: drift dimension differs from the space");
        if (const auto* pd = std::get_if<DriftFunctional::PoissonDrift>(&t.leaf); pd && pd->coeffs.size() != space.dim())
            throw std::invalid_argument("characteristics: drift dimension differs from the space");
    }
}

Complex levy_exponent_integral(const CylindricalLevyMeasure& nu, const TruncationFunction& h, const Vector& a) {
    if (nu.is_zero()) return {0.0, 0.0};
    const LevyMeasureR eta = nu.project(a);
    if (eta.is_zero()) return {0.0, 0.0};
    LevyIntegralOptions opts;
    opts.breakpoints = truncation_breakpoints(h);
    const double c = h.identity_radius();
    opts.growth_constant = std::max(0.5 * std::max(1.0, c * c), (2.0 + h.bound()) / std::min(c * c, 1.0));
    double start = 0.0;
    for (double b : opts.breakpoints) start = std::max(start, std::abs(b));
    opts.oscillatory_tail = LevyIntegralOptions::OscillatoryTail{1.0, start, [&](double s) { return Complex(-1.0, -h(s)); }};
    const IntegralResult r = levy_integral(eta, [&](double s) { return psi(h, s); }, opts);
    if (!r.converged) throw QuadratureError("cylindrical exponent: quadrature did not converge", r.error_estimate);
    return r.value;
}

Complex exponent_cyl(const CylindricalCharacteristics& ch, const Vector& a) {
    ch.space.require_member(a, "cf_cyl");
    return Complex(-0.5 * ch.q(a), ch.p(a)) + levy_exponent_integral(ch.nu, ch.h, a);
}

Complex cf_cyl(const CylindricalCharacteristics& ch, const Vector& a) {
    ch.space.require_member(a, "cf_cyl");
    if (a.isZero(0.0)) return {1.0, 0.0};
    return std::exp(exponent_cyl(ch, a));
}

Complex cf_projection(const CylindricalCharacteristics& ch, std::span<const Vector> functionals, const Vector& t) {
    if (functionals.empty()) throw std::invalid_argument("cf_projection: need at least one functional");
    if (static_cast<std::size_t>(t.size()) != functionals.size())
        throw std::invalid_argument("cf_projection: t must have one entry per functional");
    Vector combined = Vector::Zero(ch.space.dim());
    for (std::size_t i = 0; i < functionals.size(); ++i) {
        ch.space.require_member(functionals[i], "cf_projection");
        combined += t(static_cast<Eigen::Index>(i)) * functionals[i];
    }
    return cf_cyl(ch, combined);
}

IdCharacteristics1D project_1d(const CylindricalCharacteristics& ch, const Vector& a) {
    ch.space.require_member(a, "project_1d");
    IdCharacteristics1D out;
    out.m = ch.p(a);
    out.r = std::sqrt(std::max(0.0, ch.q(a)));
    out.eta = ch.nu.project(a);
    out.h = ch.h;
    return out;
}

Complex kappa(const CylindricalCharacteristics& ch, const Vector& a) {
    ch.space.require_member(a, "kappa");
    return -(Complex(0.0, ch.p(a)) + levy_exponent_integral(ch.nu, ch.h, a));
}

CylindricalCharacteristics convolve(const CylindricalCharacteristics& c1, const CylindricalCharacteristics& c2) {
    if (!(c1.space == c2.space)) throw MismatchError("convolve: characteristics live on different spaces");
    if (!(c1.h == c2.h)) throw MismatchError("convolve: characteristics use different truncation functions");
    return {c1.space, c1.p + c2.p, QuadraticForm(c1.q.matrix() + c2.q.matrix()), c1.nu + c2.nu, c1.h};
}

CylindricalCharacteristics time_scale(const CylindricalCharacteristics& ch, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("time_scale: t must be finite and >= 0");
    if (t == 1.0) return ch;
    return {ch.space, ch.p.scaled(t), QuadraticForm(t * ch.q.matrix()), ch.nu.scaled(t), ch.h};
}

CylindricalCharacteristics convert_truncation_cyl(const CylindricalCharacteristics& ch, const TruncationFunction& h_new) {
    return {ch.space, ch.p + DriftFunctional::truncation_shift(ch.nu, ch.h, h_new), ch.q, ch.nu, h_new};
}

CylindricalCharacteristics gaussian_part(const CylindricalCharacteristics& ch) {
    return {ch.space, DriftFunctional{}, ch.q, CylindricalLevyMeasure{}, ch.h};
}

CylindricalCharacteristics jump_part(const CylindricalCharacteristics& ch) {
    return {ch.space, ch.p, QuadraticForm::zero(ch.space.dim()), ch.nu, ch.h};
}

Complex continuous_log_cf(const CylindricalCharacteristics& ch, const Vector& a, int initial_steps, double max_phase_step) {
    ch.space.require_member(a, "continuous_log_cf");
    if (initial_steps < 1) throw std::invalid_argument("continuous_log_cf: need at least one step");
    constexpr int kMaxDepth = 40;
    struct Segment {
        double s0;
        double s1;
        Complex f0;
        Complex f1;
        int depth;
    };
    Complex log_total{0.0, 0.0};
    Complex prev{1.0, 0.0};
    for (int k = 0; k < initial_steps; ++k) {
        const double s0 = static_cast<double>(k) / initial_steps;
        const double s1 = static_cast<double>(k + 1) / initial_steps;
        const Complex f1 = cf_cyl(ch, s1 * a);
        // depth-first so that segments are consumed in order along the ray
        std::vector<Segment> stack{{s0, s1, prev, f1, 0}};
        while (!stack.empty()) {
            Segment seg = stack.back();
            stack.pop_back();
            if (seg.f1 == Complex(0.0, 0.0) || seg.f0 == Complex(0.0, 0.0))
                throw std::runtime_error("continuous_log_cf: characteristic function vanishes along the ray");
            const Complex ratio = seg.f1 / seg.f0;
            if (std::abs(std::arg(ratio)) <= max_phase_step) {
                log_total += std::log(ratio);
                continue;
            }
            if (seg.depth >= kMaxDepth)
                throw std::runtime_error("continuous_log_cf: phase jump could not be resolved (discontinuous along the ray)");
            const double mid = 0.5 * (seg.s0 + seg.s1);
            const Complex fm = cf_cyl(ch, mid * a);
            stack.push_back({mid, seg.s1, fm, seg.f1, seg.depth + 1});
            stack.push_back({seg.s0, mid, seg.f0, fm, seg.depth + 1});
        }
        prev = f1;
    }
    return log_total;
}

Complex cf_root(const CylindricalCharacteristics& ch, const Vector& a, int k) {
    if (k < 1) throw std::invalid_argument("cf_root: k must be >= 1");
    if (a.isZero(0.0)) return {1.0, 0.0};
    return std::exp(continuous_log_cf(ch, a) / static_cast<double>(k));
}

} // namespace cylid
