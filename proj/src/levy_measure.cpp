#include "cylid/levy_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/special_functions/erf.hpp>

#include "cylid/errors.hpp"

namespace cylid {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
    p = std::clamp(p, 1e-300, 1.0 - 1e-16);
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

} // namespace

Density1D::Density1D(Family f, double p1, double p2, double p3, double lo, double hi, double gap)
    : family_(f), p1_(p1), p2_(p2), p3_(p3), lo_(lo), hi_(hi), gap_(gap) {
    check();
}

Density1D Density1D::exponential(double scale, double rate, double lo, double hi, double gap) {
    return {Family::exponential, scale, rate, 0.0, lo, hi, gap};
}
Density1D Density1D::gaussian(double mass, double mean, double sd, double lo, double hi, double gap) {
    return {Family::gaussian, mass, mean, sd, lo, hi, gap};
}
Density1D Density1D::uniform(double intensity, double lo, double hi, double gap) {
    return {Family::uniform, intensity, 0.0, 0.0, lo, hi, gap};
}
Density1D Density1D::power(double scale, double alpha, double lo, double hi, double gap) {
    return {Family::power, scale, alpha, 0.0, lo, hi, gap};
}

void Density1D::check() const {
    if (!(lo_ < hi_)) throw std::invalid_argument("density: support must satisfy lo < hi");
    if (!(gap_ >= 0.0) || !std::isfinite(gap_)) throw std::invalid_argument("density: gap must be finite and >= 0");
    switch (family_) {
        case Family::exponential:
            if (!(p1_ > 0.0) || !(p2_ > 0.0)) throw std::invalid_argument("exponential density: scale and rate must be positive");
            break;
        case Family::gaussian:
            if (!(p1_ > 0.0) || !(p3_ > 0.0) || !std::isfinite(p2_))
                throw std::invalid_argument("gaussian density: mass and sd must be positive");
            break;
        case Family::uniform:
            if (!(p1_ > 0.0)) throw std::invalid_argument("uniform density: intensity must be positive");
            if (!std::isfinite(lo_) || !std::isfinite(hi_)) throw std::invalid_argument("uniform density: support must be bounded");
            break;
        case Family::power:
            if (!(p1_ > 0.0)) throw std::invalid_argument("power density: scale must be positive");
            if (!(p2_ > 0.0 && p2_ < 2.0)) throw std::invalid_argument("power density: alpha must lie in (0, 2)");
            break;
    }
    if (pieces().empty()) throw std::invalid_argument("density: support is empty after removing the gap");
}

std::string Density1D::family_name() const {
    switch (family_) {
        case Family::exponential: return "exponential";
        case Family::gaussian: return "gaussian";
        case Family::uniform: return "uniform";
        case Family::power: return "power";
    }
    return {};
}

double Density1D::operator()(double s) const {
    if (s < lo_ || s > hi_ || std::abs(s) < gap_ || s == 0.0) return 0.0;
    switch (family_) {
        case Family::exponential: return p1_ * std::exp(-p2_ * std::abs(s));
        case Family::gaussian: {
            const double z = (s - p2_) / p3_;
            return p1_ * std::exp(-0.5 * z * z) / (p3_ * std::sqrt(2.0 * std::numbers::pi));
        }
        case Family::uniform: return p1_;
        case Family::power: return p1_ * std::pow(std::abs(s), -1.0 - p2_);
    }
    return 0.0;
}

std::vector<std::pair<double, double>> Density1D::pieces() const {
    std::vector<std::pair<double, double>> out;
    const double neg_hi = std::min(hi_, -gap_);
    if (lo_ < neg_hi) out.emplace_back(lo_, neg_hi);
    const double pos_lo = std::max(lo_, gap_);
    if (pos_lo < hi_) out.emplace_back(pos_lo, hi_);
    return out;
}

double Density1D::piece_mass(double a, double b) const {
    if (!(a < b)) return 0.0;
    // mirror symmetric families onto the positive half line
    const bool negative = b <= 0.0;
    const double A = negative ? -b : a;
    const double B = negative ? -a : b;
    switch (family_) {
        case Family::exponential: {
            const double r = p2_;
            return p1_ * (std::exp(-r * A) - (std::isinf(B) ? 0.0 : std::exp(-r * B))) / r;
        }
        case Family::gaussian: {
            const double za = (a - p2_) / p3_;
            const double zb = (b - p2_) / p3_;
            if (za > 0.0) return p1_ * 0.5 * (std::erfc(za / std::numbers::sqrt2) - std::erfc(zb / std::numbers::sqrt2));
            return p1_ * (normal_cdf(zb) - normal_cdf(za));
        }
        case Family::uniform: return p1_ * (b - a);
        case Family::power: {
            if (A == 0.0) return kInf;
            const double al = p2_;
            return p1_ * (std::pow(A, -al) - (std::isinf(B) ? 0.0 : std::pow(B, -al))) / al;
        }
    }
    return 0.0;
}

double Density1D::total_mass() const {
    double m = 0.0;
    for (auto [a, b] : pieces()) m += piece_mass(a, b);
    return m;
}

double Density1D::piece_quantile(double a, double b, double u) const {
    const bool negative = b <= 0.0;
    const double A = negative ? -b : a;
    const double B = negative ? -a : b;
    const double v = negative ? 1.0 - u : u;
    double x = 0.0;
    switch (family_) {
        case Family::exponential: {
            const double r = p2_;
            const double span = std::isinf(B) ? 1.0 : -std::expm1(-r * (B - A));
            x = A - std::log1p(-v * span) / r;
            break;
        }
        case Family::gaussian: {
            // not mirrored: the mean breaks the symmetry
            const double fa = normal_cdf((a - p2_) / p3_);
            const double fb = normal_cdf((b - p2_) / p3_);
            return std::clamp(p2_ + p3_ * normal_quantile(fa + u * (fb - fa)), a, b);
        }
        case Family::uniform: return a + u * (b - a);
        case Family::power: {
            const double al = p2_;
            const double ta = std::pow(A, -al);
            const double tb = std::isinf(B) ? 0.0 : std::pow(B, -al);
            x = std::pow(ta - v * (ta - tb), -1.0 / al);
            break;
        }
    }
    x = std::clamp(x, A, B);
    return negative ? -x : x;
}

std::pair<double, double> Density1D::effective_bounds() const {
    double reach = 0.0;
    switch (family_) {
        case Family::exponential: reach = gap_ + 40.0 / p2_; break;
        case Family::gaussian: reach = std::abs(p2_) + 12.0 * p3_; break;
        case Family::uniform: reach = std::max(std::abs(lo_), std::abs(hi_)); break;
        case Family::power: reach = std::min(1e8, std::pow(2.0 * p1_ / (p2_ * 1e-12), 1.0 / p2_)); break;
    }
    return {std::max(lo_, -reach), std::min(hi_, reach)};
}

LevyMeasureR LevyMeasureR::atomic(std::vector<Atom> atoms) {
    LevyMeasureR m;
    for (const Atom& a : atoms) {
        if (!std::isfinite(a.location) || !std::isfinite(a.weight))
            throw std::invalid_argument("Levy measure: atoms must be finite");
        if (a.weight < 0.0) throw std::invalid_argument("Levy measure: negative atom weight");
        if (a.weight == 0.0) continue;
        if (a.location == 0.0) throw std::invalid_argument("Levy measure: atom at the origin");
        m.atoms_.push_back(a);
    }
    return m;
}

LevyMeasureR LevyMeasureR::dirac(double location, double weight) { return atomic({{location, weight}}); }

LevyMeasureR LevyMeasureR::density(Density1D d, double factor) {
    if (!(factor >= 0.0) || !std::isfinite(factor)) throw std::invalid_argument("Levy measure: density factor must be >= 0");
    LevyMeasureR m;
    if (factor > 0.0) m.densities_.push_back({std::move(d), factor});
    return m;
}

LevyMeasureR LevyMeasureR::pushforward_scale(double c) const {
    if (!densities_.empty() && c != 1.0)
        throw std::invalid_argument("Levy measure: pushforward of density terms is not supported");
    LevyMeasureR m;
    m.densities_ = densities_;
    for (const Atom& a : atoms_) {
        const double s = c * a.location;
        if (s != 0.0) m.atoms_.push_back({s, a.weight});
    }
    return m;
}

LevyMeasureR LevyMeasureR::scaled(double factor) const {
    if (!(factor >= 0.0) || !std::isfinite(factor)) throw std::invalid_argument("Levy measure: scale factor must be >= 0");
    LevyMeasureR m;
    if (factor == 0.0) return m;
    for (const Atom& a : atoms_) m.atoms_.push_back({a.location, a.weight * factor});
    for (const DensityTerm& d : densities_) m.densities_.push_back({d.density, d.factor * factor});
    return m;
}

LevyMeasureR LevyMeasureR::operator+(const LevyMeasureR& other) const {
    LevyMeasureR m = *this;
    m.atoms_.insert(m.atoms_.end(), other.atoms_.begin(), other.atoms_.end());
    m.densities_.insert(m.densities_.end(), other.densities_.begin(), other.densities_.end());
    return m;
}

LevyMeasureR LevyMeasureR::restricted_outside(double eps) const {
    if (!(eps >= 0.0)) throw std::invalid_argument("Levy measure: cutoff must be >= 0");
    LevyMeasureR m;
    for (const Atom& a : atoms_)
        if (std::abs(a.location) > eps) m.atoms_.push_back(a);
    for (const DensityTerm& d : densities_) {
        const Density1D& p = d.density;
        const double gap = std::max(p.gap(), eps);
        if (gap >= std::max(std::abs(p.lo()), std::abs(p.hi()))) continue;
        Density1D cut = [&] {
            switch (p.family()) {
                case Density1D::Family::exponential: return Density1D::exponential(p.p1(), p.p2(), p.lo(), p.hi(), gap);
                case Density1D::Family::gaussian: return Density1D::gaussian(p.p1(), p.p2(), p.p3(), p.lo(), p.hi(), gap);
                case Density1D::Family::uniform: return Density1D::uniform(p.p1(), p.lo(), p.hi(), gap);
                case Density1D::Family::power: return Density1D::power(p.p1(), p.p2(), p.lo(), p.hi(), gap);
            }
            throw std::logic_error("unreachable");
        }();
        m.densities_.push_back({cut, d.factor});
    }
    return m;
}

bool LevyMeasureR::has_finite_mass() const { return std::isfinite(total_mass()); }

double LevyMeasureR::total_mass() const {
    double m = 0.0;
    for (const Atom& a : atoms_) m += a.weight;
    for (const DensityTerm& d : densities_) m += d.factor * d.density.total_mass();
    return m;
}

std::vector<double> LevyMeasureR::breakpoints() const {
    std::vector<double> out;
    for (const DensityTerm& d : densities_) {
        out.push_back(0.0);
        if (std::isfinite(d.density.lo())) out.push_back(d.density.lo());
        if (std::isfinite(d.density.hi())) out.push_back(d.density.hi());
        if (d.density.gap() > 0.0) {
            out.push_back(-d.density.gap());
            out.push_back(d.density.gap());
        }
    }
    return out;
}

namespace {

// int_{start}^{inf} e^{i w s} rho(s) ds (upper) or int_{-inf}^{start} (lower), rho smooth and decaying there.
IntegralResult fourier_tail(const Density1D& rho, double start, bool upper, double w, double abs_tol) {
    using boost::math::quadrature::ooura_fourier_cos;
    using boost::math::quadrature::ooura_fourier_sin;
    thread_local ooura_fourier_cos<double> cos_rule(1e-13);
    thread_local ooura_fourier_sin<double> sin_rule(1e-13);
    // substitute s = start +- u; the frequency seen in u flips sign on the lower tail
    const double omega = upper ? w : -w;
    const auto f = [&](double u) { return rho(upper ? start + u : start - u); };
    const auto [c, c_err] = cos_rule.integrate(f, std::abs(omega));
    const auto [sn, s_err] = sin_rule.integrate(f, std::abs(omega));
    const double sgn = omega < 0.0 ? -1.0 : 1.0;
    IntegralResult out;
    out.value = std::polar(1.0, w * start) * std::complex<double>(c, sgn * sn);
    // the rules report relative errors, undefined (0/0) for a vanishing integral
    const auto abs_err = [](double v, double rel) { return v == 0.0 ? 0.0 : std::abs(v) * rel; };
    out.error_estimate = abs_err(c, c_err) + abs_err(sn, s_err);
    out.converged = std::isfinite(out.error_estimate) && out.error_estimate <= std::max(abs_tol, 1e-12 * std::abs(out.value));
    return out;
}

} // namespace

IntegralResult levy_integral(const LevyMeasureR& eta, const ComplexIntegrand& g, const LevyIntegralOptions& opts) {
    IntegralResult out;
    for (const Atom& a : eta.atoms()) out.value += a.weight * g(a.location);

    bool infinite = false;
    for (const auto& d : eta.densities())
        if (!std::isfinite(d.density.total_mass())) infinite = true;
    if (infinite) {
        if (!opts.growth_constant)
            throw IntegrabilityError("levy_integral: measure has infinite mass and no growth bound was declared");
        const double c = *opts.growth_constant;
        for (int k = 1; k <= 12; ++k) {
            for (double s : {std::pow(10.0, -k), -std::pow(10.0, -k)}) {
                const double bound = c * std::min(s * s, 1.0);
                if (std::abs(g(s)) > bound * (1.0 + 1e-9) + 1e-300)
                    throw IntegrabilityError("levy_integral: integrand violates the declared growth bound at s = " +
                                             std::to_string(s));
            }
        }
    }

    const auto& tail = opts.oscillatory_tail;
    const bool split_tails = tail && tail->frequency != 0.0;
    const double tail_start = split_tails ? std::max(std::abs(tail->start), 1.0) : kInf;
    for (const auto& term : eta.densities()) {
        const Density1D& dens = term.density;
        std::vector<double> cuts = opts.breakpoints;
        cuts.push_back(0.0);
        std::vector<std::pair<double, double>> intervals;
        std::vector<std::pair<double, double>> tails;
        // only algebraic tails need the Fourier rule; light tails converge under the mapped adaptive rule
        const bool heavy = split_tails && dens.family() == Density1D::Family::power;
        for (auto [a, b] : dens.pieces()) {
            if (heavy && std::isinf(b) && b > 0.0) {
                const double cut = std::max(a, tail_start);
                tails.emplace_back(cut, b);
                b = cut;
            } else if (heavy && std::isinf(a) && a < 0.0) {
                const double cut = std::min(b, -tail_start);
                tails.emplace_back(a, cut);
                a = cut;
            }
            for (auto piece : split_interval(a, b, cuts)) intervals.push_back(piece);
        }
        QuadratureOptions q = opts.quadrature;
        q.abs_tol = opts.quadrature.abs_tol;
        IntegralResult r = integrate([&](double s) { return g(s) * dens(s); }, intervals, q);
        if (!tails.empty()) {
            const IntegralResult rest = integrate([&](double s) { return tail->remainder(s) * dens(s); }, tails, q);
            r.value += rest.value;
            r.error_estimate += rest.error_estimate;
            r.converged = r.converged && rest.converged;
            r.panels += rest.panels;
            for (auto [a, b] : tails) {
                const IntegralResult osc = fourier_tail(dens, std::isinf(b) ? a : b, std::isinf(b), tail->frequency, q.abs_tol);
                r.value += osc.value;
                r.error_estimate += osc.error_estimate;
                r.converged = r.converged && osc.converged;
            }
        }
        out.value += term.factor * r.value;
        out.error_estimate += term.factor * r.error_estimate;
        out.converged = out.converged && r.converged;
        out.panels += r.panels;
    }
    return out;
}

IntegralResult levy_integrability(const LevyMeasureR& eta) {
    LevyIntegralOptions opts;
    opts.breakpoints = {-1.0, 1.0};
    opts.growth_constant = 1.0;
    return levy_integral(eta, [](double s) { return std::complex<double>(std::min(s * s, 1.0), 0.0); }, opts);
}

void validate_levy_measure(const LevyMeasureR& eta) {
    const IntegralResult r = levy_integrability(eta);
    if (!std::isfinite(r.value.real())) throw IntegrabilityError("Levy measure: (s^2 ^ 1) integral is infinite");
    if (!r.converged)
        throw QuadratureError("Levy measure: (s^2 ^ 1) integral did not converge", r.error_estimate);
}

} // namespace cylid
