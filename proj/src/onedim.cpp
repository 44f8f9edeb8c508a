#include "cylid/onedim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cylid/errors.hpp"
#include "cylid/rng.hpp"

namespace cylid {
namespace {

constexpr std::size_t kShardSize = 16384;

std::vector<double> truncation_breakpoints(const TruncationFunction& h) {
    std::vector<double> cuts = h.kinks();
    cuts.push_back(h.identity_radius());
    cuts.push_back(-h.identity_radius());
    return cuts;
}

double max_abs(const std::vector<double>& xs) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, std::abs(x));
    return m;
}

// Discrete choice among atoms and density pieces of a finite measure.
class JumpSampler {
  public:
    explicit JumpSampler(const LevyMeasureR& eta) : eta_(eta) {
        double acc = 0.0;
        for (const Atom& a : eta.atoms()) {
            acc += a.weight;
            items_.push_back({acc, a.location, 0.0, 0.0, nullptr});
        }
        for (const auto& term : eta.densities()) {
            for (auto [lo, hi] : term.density.pieces()) {
                const double mass = term.factor * term.density.piece_mass(lo, hi);
                if (!(mass > 0.0)) continue;
                acc += mass;
                items_.push_back({acc, 0.0, lo, hi, &term.density});
            }
        }
        rate_ = acc;
    }

    double rate() const { return rate_; }

    double draw(Engine& rng) const {
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const double target = unif(rng) * rate_;
        auto it = std::upper_bound(items_.begin(), items_.end(), target,
                                   [](double v, const Item& item) { return v < item.cumulative; });
        if (it == items_.end()) it = std::prev(items_.end());
        if (it->density == nullptr) return it->location;
        double u = unif(rng);
        while (u <= 0.0) u = unif(rng);
        return it->density->piece_quantile(it->lo, it->hi, u);
    }

  private:
    struct Item {
        double cumulative;
        double location;
        double lo;
        double hi;
        const Density1D* density;
    };
    const LevyMeasureR& eta_;
    std::vector<Item> items_;
    double rate_ = 0.0;
};

} // namespace

void IdCharacteristics1D::validate() const {
    if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("1-D characteristics: r must be finite and >= 0");
    if (!std::isfinite(m)) throw std::invalid_argument("1-D characteristics: drift must be finite");
    validate_levy_measure(eta);
}

Complex exponent_1d(const IdCharacteristics1D& ch, double t) {
    Complex e{-0.5 * ch.r * ch.r * t * t, ch.m * t};
    if (ch.eta.is_zero()) return e;
    LevyIntegralOptions opts;
    opts.breakpoints = truncation_breakpoints(ch.h);
    const double c = ch.h.identity_radius();
    opts.growth_constant =
        std::max(0.5 * t * t * std::max(1.0, c * c), (2.0 + std::abs(t) * ch.h.bound()) / std::min(c * c, 1.0));
    // beyond the kinks of h: psi_tilde = e^{its} - 1 - i t h(s)
    opts.oscillatory_tail = LevyIntegralOptions::OscillatoryTail{
        t, max_abs(opts.breakpoints), [&](double s) { return Complex(-1.0, -t * ch.h(s)); }};
    const IntegralResult r = levy_integral(ch.eta, [&](double s) { return psi_tilde(ch.h, s, t); }, opts);
    if (!r.converged) throw QuadratureError("cf_1d: quadrature did not converge", r.error_estimate);
    return e + r.value;
}

Complex cf_1d(const IdCharacteristics1D& ch, double t) {
    if (t == 0.0) return {1.0, 0.0};
    return std::exp(exponent_1d(ch, t));
}

IdCharacteristics1D convert_truncation_1d(const IdCharacteristics1D& ch, const TruncationFunction& h_new) {
    IdCharacteristics1D out = ch;
    out.h = h_new;
    if (ch.eta.is_zero()) return out;
    LevyIntegralOptions opts;
    opts.breakpoints = truncation_breakpoints(ch.h);
    for (double b : truncation_breakpoints(h_new)) opts.breakpoints.push_back(b);
    const double c = std::min(ch.h.identity_radius(), h_new.identity_radius());
    opts.growth_constant = (ch.h.bound() + h_new.bound()) / std::min(c * c, 1.0);
    const IntegralResult r =
        levy_integral(ch.eta, [&](double s) { return Complex(h_new(s) - ch.h(s), 0.0); }, opts);
    if (!r.converged) throw QuadratureError("convert_truncation_1d: quadrature did not converge", r.error_estimate);
    out.m = ch.m + r.value.real();
    return out;
}

IdCharacteristics1D truncate_small_jumps(const IdCharacteristics1D& ch, double eps) {
    IdCharacteristics1D out = ch;
    out.eta = ch.eta.restricted_outside(eps);
    if (!out.eta.has_finite_mass())
        throw std::invalid_argument("truncate_small_jumps: the Levy measure has infinite mass; a positive cutoff is required");
    return out;
}

double small_jump_second_moment(const LevyMeasureR& eta, double eps) {
    LevyMeasureR inner;
    std::vector<Atom> atoms;
    for (const Atom& a : eta.atoms())
        if (std::abs(a.location) <= eps) atoms.push_back(a);
    inner = LevyMeasureR::atomic(std::move(atoms));
    double total = 0.0;
    for (const Atom& a : inner.atoms()) total += a.weight * a.location * a.location;
    for (const auto& term : eta.densities()) {
        std::vector<std::pair<double, double>> intervals;
        for (auto [a, b] : term.density.pieces()) {
            const double lo = std::max(a, -eps);
            const double hi = std::min(b, eps);
            if (lo < hi) intervals.emplace_back(lo, hi);
        }
        const auto r = integrate([&](double s) { return Complex(s * s * term.density(s), 0.0); }, intervals);
        total += term.factor * r.value.real();
    }
    return total;
}

std::vector<double> sample_1d(const IdCharacteristics1D& ch, std::size_t n, std::uint64_t seed, double jump_cutoff) {
    if (!(jump_cutoff >= 0.0)) throw std::invalid_argument("sample_1d: jump cutoff must be >= 0");
    if (!(ch.r >= 0.0)) throw std::invalid_argument("sample_1d: r must be >= 0");
    const IdCharacteristics1D law = truncate_small_jumps(ch, jump_cutoff);

    double drift = law.m;
    if (!law.eta.is_zero()) {
        LevyIntegralOptions opts;
        opts.breakpoints = truncation_breakpoints(law.h);
        const IntegralResult comp = levy_integral(law.eta, [&](double s) { return Complex(law.h(s), 0.0); }, opts);
        if (!comp.converged) throw QuadratureError("sample_1d: compensator quadrature did not converge", comp.error_estimate);
        drift -= comp.value.real();
    }
    const JumpSampler jumps(law.eta);

    std::vector<double> out(n);
    for (std::size_t shard = 0; shard * kShardSize < n; ++shard) {
        Engine rng = make_engine(seed, shard);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::poisson_distribution<long> count(jumps.rate() > 0.0 ? jumps.rate() : 1.0);
        const std::size_t end = std::min(n, (shard + 1) * kShardSize);
        for (std::size_t i = shard * kShardSize; i < end; ++i) {
            double x = drift;
            if (law.r > 0.0) x += law.r * gauss(rng);
            if (jumps.rate() > 0.0) {
                const long k = count(rng);
                for (long j = 0; j < k; ++j) x += jumps.draw(rng);
            }
            out[i] = x;
        }
    }
    return out;
}

Complex empirical_cf(std::span<const double> xs, double t) {
    double re = 0.0;
    double im = 0.0;
    for (double x : xs) {
        re += std::cos(t * x);
        im += std::sin(t * x);
    }
    const double n = static_cast<double>(xs.size());
    return {re / n, im / n};
}

double ks_statistic_continuous(std::vector<double> xs, const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_statistic_lattice(std::vector<double> xs, double offset, double spacing, const std::function<double(long)>& cdf) {
    if (spacing == 0.0) throw std::invalid_argument("ks_statistic_lattice: zero spacing");
    std::vector<long> idx;
    idx.reserve(xs.size());
    for (double x : xs) idx.push_back(std::lround((x - offset) / spacing));
    std::sort(idx.begin(), idx.end());
    const double n = static_cast<double>(idx.size());
    double d = 0.0;
    std::size_t pos = 0;
    const long top = idx.empty() ? 0 : idx.back();
    for (long k = std::min(0L, idx.empty() ? 0L : idx.front()); k <= top; ++k) {
        while (pos < idx.size() && idx[pos] <= k) ++pos;
        d = std::max(d, std::abs(static_cast<double>(pos) / n - cdf(k)));
    }
    return d;
}

double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

} // namespace cylid
