#include "cylid/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "cylid/errors.hpp"

namespace cylid {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LevyMeasureR checked_projection(const MeasureOnU& nu, const Vector& a) {
    try {
        LevyMeasureR eta = nu.project(a);
        validate_levy_measure(eta);
        return eta;
    } catch (const IntegrabilityError& e) {
        throw HypothesisError(std::string("d_nu: projection is not a Levy measure: ") + e.what());
    }
}

} // namespace

IntegrabilityValue weak_pairing_integrability(const MeasureOnU& nu, const Vector& a) {
    LevyMeasureR eta;
    try {
        eta = nu.project(a);
    } catch (const IntegrabilityError&) {
        return {kInf, 0.0, false};
    }
    const IntegralResult r = levy_integrability(eta);
    const double v = r.value.real();
    return {v, r.error_estimate, std::isfinite(v) && r.converged};
}

IntegrabilityValue strong_integrability(const MeasureOnU& nu, const FunctionalSpace& space) {
    if (nu.kind() == MeasureOnU::Kind::lebesgue_exterior) return {kInf, 0.0, false};
    const Estimate e = nu.integral([&](const Vector& u) {
        const double r = space.norm(u);
        return std::min(r * r, 1.0);
    });
    return {e.value, e.std_error, std::isfinite(e.value)};
}

std::pair<Vector, Vector> ball_first_moment(const MeasureOnU& nu, const FunctionalSpace& space) {
    if (nu.kind() == MeasureOnU::Kind::lebesgue_exterior)
        throw HypothesisError("ball_first_moment: measure has infinite mass outside the unit ball");
    Vector value(nu.dim());
    Vector err(nu.dim());
    for (int i = 0; i < nu.dim(); ++i) {
        const Estimate e = nu.integral([&](const Vector& u) { return space.norm(u) <= 1.0 ? u(i) : 0.0; });
        value(i) = e.value;
        err(i) = e.std_error;
    }
    return {value, err};
}

void require_finite_outside_ball(const MeasureOnU& nu, const FunctionalSpace& space) {
    if (nu.dim() != space.dim()) throw std::invalid_argument("measure and space dimensions differ");
    const Estimate e = nu.outside_ball_mass(space);
    if (!std::isfinite(e.value)) throw HypothesisError("nu(B_U^c) is infinite");
}

DnuResult d_nu(const MeasureOnU& nu, const Vector& a, const TruncationFunction& h, const FunctionalSpace& space) {
    space.require_member(a, "d_nu");
    require_finite_outside_ball(nu, space);
    const LevyMeasureR eta = checked_projection(nu, a);

    DnuResult out;
    out.c = h.identity_radius();
    const double c = out.c;
    const Estimate outside = nu.outside_ball_mass(space);
    out.outside_ball_mass = outside.value;

    // value through the drift formula shared with DriftFunctional::Dnu
    const auto [moment, moment_err] = ball_first_moment(nu, space);
    {
        double hpart = 0.0;
        if (!eta.is_zero()) {
            LevyIntegralOptions opts;
            opts.breakpoints = h.kinks();
            opts.breakpoints.push_back(c);
            opts.breakpoints.push_back(-c);
            const IntegralResult r = levy_integral(eta, [&](double s) { return Complex(h(s), 0.0); }, opts);
            if (!r.converged) throw QuadratureError("d_nu: quadrature did not converge", r.error_estimate);
            hpart = r.value.real();
        }
        out.value = hpart - moment.dot(a);
        out.std_error = moment_err.cwiseProduct(a).norm();
    }

    const auto integrand = [&](const Vector& u) {
        const double s = u.dot(a);
        return h(s) - (space.norm(u) <= 1.0 ? s : 0.0);
    };
    // piece 0: D(a) n B^c, piece 1: D^c(a) n B, piece 2: D^c(a) n B^c
    const auto piece_of = [&](const Vector& u) {
        const bool in_d = std::abs(u.dot(a)) <= c;
        const bool in_b = space.norm(u) <= 1.0;
        if (in_d && in_b) return -1;
        if (in_d) return 0;
        return in_b ? 1 : 2;
    };
    const double tail_mass = eta.restricted_outside(c).total_mass();
    const double bounds[3] = {c * outside.value, (h.bound() + space.dual_norm(a)) * tail_mass, h.bound() * outside.value};
    const double bound_err[3] = {c * outside.std_error, 0.0, h.bound() * outside.std_error};
    const char* names[3] = {"D(a)∩B^c", "D^c(a)∩B", "D^c(a)∩B^c"};
    for (int k = 0; k < 3; ++k) {
        DnuPiece& piece = out.pieces[static_cast<std::size_t>(k)];
        piece.domain = names[k];
        const Estimate val = nu.integral([&](const Vector& u) { return piece_of(u) == k ? integrand(u) : 0.0; });
        const Estimate mag = nu.integral([&](const Vector& u) { return piece_of(u) == k ? std::abs(integrand(u)) : 0.0; });
        piece.integral = val.value;
        piece.abs_integral = mag.value;
        piece.std_error = mag.std_error;
        piece.bound = bounds[k];
        const double slack = 3.0 * (mag.std_error + bound_err[k]) + 1e-12 * std::max(1.0, bounds[k]);
        piece.within_bound = piece.abs_integral <= piece.bound + slack;
        out.bounds_hold = out.bounds_hold && piece.within_bound;
    }
    return out;
}

CylindricalCharacteristics make_id_from_levy(const MeasureOnU& nu, const TruncationFunction& h, const FunctionalSpace& space) {
    require_finite_outside_ball(nu, space);
    return {space, DriftFunctional::d_nu(nu, h, space), QuadraticForm::zero(space.dim()), CylindricalLevyMeasure::on_u(nu), h};
}

// ---------------------------------------------------------------------------
// bounded-Lipschitz distance

double bl_distance(const FiniteMeasureR& m1, const FiniteMeasureR& m2) {
    std::map<double, double> net;
    for (const Atom& a : m1.atoms) {
        if (!(a.weight >= 0.0) || !std::isfinite(a.location)) throw std::invalid_argument("bl_distance: invalid atom");
        net[a.location] += a.weight;
    }
    for (const Atom& a : m2.atoms) {
        if (!(a.weight >= 0.0) || !std::isfinite(a.location)) throw std::invalid_argument("bl_distance: invalid atom");
        net[a.location] -= a.weight;
    }
    if (net.empty()) return 0.0;

    // V(f): best partial objective with the test function equal to f at the current atom.
    // V is concave piecewise linear on [-1, 1], stored as V(-1) plus segments keyed by
    // slope (decreasing from left to right); `offset` is added lazily to every slope.
    std::map<double, double, std::greater<>> segments;
    double offset = 0.0;
    double y_left = 0.0;

    const auto trim_front = [&](double len) {
        while (len > 0.0 && !segments.empty()) {
            auto it = segments.begin();
            const double take = std::min(len, it->second);
            y_left += (it->first + offset) * take;
            len -= take;
            it->second -= take;
            if (!(it->second > 0.0)) segments.erase(it);
        }
    };
    const auto trim_back = [&](double len) {
        while (len > 0.0 && !segments.empty()) {
            auto it = std::prev(segments.end());
            const double take = std::min(len, it->second);
            len -= take;
            it->second -= take;
            if (!(it->second > 0.0)) segments.erase(it);
        }
    };

    auto it = net.begin();
    segments[it->second] = 2.0;
    y_left = -it->second;
    double prev_loc = it->first;
    for (++it; it != net.end(); ++it) {
        const double gap = it->first - prev_loc;
        prev_loc = it->first;
        // max over the window |g - f| <= gap: a flat piece of width 2 gap at the argmax,
        // then restrict back to [-1, 1]
        segments[-offset] += 2.0 * gap;
        trim_front(gap);
        trim_back(gap);
        y_left -= it->second;
        offset += it->second;
    }
    double best = y_left;
    for (const auto& [slope, len] : segments) {
        if (slope + offset <= 0.0) break;
        best += (slope + offset) * len;
    }
    return std::max(0.0, best);
}

FiniteMeasureR weighted_levy_measure(const LevyMeasureR& eta, double q, std::span<const double> grid) {
    FiniteMeasureR out;
    if (q > 0.0) out.atoms.push_back({0.0, q});
    for (const Atom& a : eta.atoms()) out.atoms.push_back({a.location, a.weight * std::min(a.location * a.location, 1.0)});
    if (eta.densities().empty()) return out;
    if (grid.size() < 2) throw std::invalid_argument("weighted_levy_measure: density terms need a grid of >= 2 nodes");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double left = i == 0 ? grid[0] : grid[i - 1];
        const double right = i + 1 == grid.size() ? grid[i] : grid[i + 1];
        const double s = grid[i];
        double dens = 0.0;
        for (const auto& term : eta.densities()) dens += term.factor * term.density(s);
        const double w = dens * std::min(s * s, 1.0) * 0.5 * (right - left);
        if (w > 0.0) out.atoms.push_back({s, w});
    }
    return out;
}

std::vector<double> joint_grid(std::span<const LevyMeasureR> measures, int points) {
    double lo = kInf;
    double hi = -kInf;
    for (const LevyMeasureR& m : measures) {
        for (const auto& term : m.densities()) {
            const auto [a, b] = term.density.effective_bounds();
            lo = std::min(lo, a);
            hi = std::max(hi, b);
        }
    }
    if (!(lo < hi) || points < 2) return {};
    const double pad = 0.1 * (hi - lo);
    lo -= pad;
    hi += pad;
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    return grid;
}

ContinuityReport continuity_report(const CylindricalCharacteristics& ch,
                                   std::span<const Vector> sequence,
                                   const Vector& limit,
                                   const ContinuityOptions& opts) {
    if (sequence.empty()) throw std::invalid_argument("continuity_report: empty sequence");
    ch.space.require_member(limit, "continuity_report");
    const double p_lim = ch.p(limit);
    const double q_lim = ch.q(limit);
    const LevyMeasureR eta_lim = ch.nu.project(limit);

    ContinuityReport rep;
    int n = 0;
    for (const Vector& an : sequence) {
        ch.space.require_member(an, "continuity_report");
        ContinuityRow row;
        row.n = ++n;
        row.drift_gap = std::abs(ch.p(an) - p_lim);
        const double qn = ch.q(an);
        row.quadratic_gap = std::abs(qn - q_lim);
        const LevyMeasureR eta_n = ch.nu.project(an);
        const LevyMeasureR pair[2] = {eta_n, eta_lim};
        const std::vector<double> grid = joint_grid(pair, opts.grid_points);
        row.combined_distance =
            bl_distance(weighted_levy_measure(eta_n, qn, grid), weighted_levy_measure(eta_lim, q_lim, grid));
        row.levy_distance = bl_distance(weighted_levy_measure(eta_n, 0.0, grid), weighted_levy_measure(eta_lim, 0.0, grid));
        rep.rows.push_back(row);
    }

    const auto verdict = [&](const char* name, double ContinuityRow::*field) {
        TrendVerdict v;
        v.column = name;
        const std::size_t start = static_cast<std::size_t>(std::max(1, opts.monotone_from)) - 1;
        for (std::size_t i = start; i + 1 < rep.rows.size(); ++i) {
            const double cur = rep.rows[i].*field;
            const double nxt = rep.rows[i + 1].*field;
            if (nxt > cur * (1.0 + opts.rel_slack) + 1e-15) v.monotone = false;
        }
        v.final_value = rep.rows.back().*field;
        v.below_threshold = v.final_value < opts.threshold;
        return v;
    };
    rep.verdicts = {verdict("drift_gap", &ContinuityRow::drift_gap), verdict("quadratic_gap", &ContinuityRow::quadratic_gap),
                    verdict("combined_distance", &ContinuityRow::combined_distance),
                    verdict("levy_distance", &ContinuityRow::levy_distance)};
    rep.continuity_pass = rep.verdicts[0].pass() && rep.verdicts[2].pass();
    rep.regular_continuity_pass = rep.verdicts[0].pass() && rep.verdicts[1].pass() && rep.verdicts[3].pass();
    return rep;
}

} // namespace cylid
