#include "cylid/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace cylid {
namespace {

constexpr double kNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kKronrod[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes, last entry is the centre.
constexpr double kGauss[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                              0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo;
    double hi;
    std::complex<double> value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

// The integrand on a finite interval of the (possibly transformed) variable.
struct Mapped {
    const ComplexIntegrand* f;
    double a;
    double b;
    int kind;  // 0 finite, 1 [a, inf), 2 (-inf, b], 3 (-inf, inf)

    std::complex<double> operator()(double x) const {
        switch (kind) {
            case 0: return (*f)(x);
            case 1: {
                const double w = 1.0 - x;
                return (*f)(a + x / w) / (w * w);
            }
            case 2: {
                const double w = 1.0 - x;
                return (*f)(b - x / w) / (w * w);
            }
            default: {
                const double w = 1.0 - x * x;
                return (*f)(x / w) * (1.0 + x * x) / (w * w);
            }
        }
    }
};

Panel gauss_kronrod(const Mapped& g, double lo, double hi) {
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const std::complex<double> fc = g(centre);
    std::complex<double> kronrod = fc * kKronrod[7];
    std::complex<double> gauss = fc * kGauss[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kNodes[j];
        const std::complex<double> sum = g(centre - dx) + g(centre + dx);
        kronrod += kKronrod[j] * sum;
        if (j % 2 == 1) gauss += kGauss[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    double err = std::abs(kronrod - gauss);
    if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
    return {lo, hi, kronrod, err};
}

} // namespace

IntegralResult integrate(const ComplexIntegrand& f,
                         std::span<const std::pair<double, double>> intervals,
                         const QuadratureOptions& opts) {
    std::vector<Mapped> maps;
    std::priority_queue<std::pair<Panel, std::size_t>,
                        std::vector<std::pair<Panel, std::size_t>>,
                        decltype([](const auto& x, const auto& y) { return x.first < y.first; })>
        queue;
    IntegralResult result;
    std::complex<double> total{0.0, 0.0};
    double total_err = 0.0;

    for (const auto& [a, b] : intervals) {
        if (!(a < b)) continue;
        const bool inf_lo = std::isinf(a);
        const bool inf_hi = std::isinf(b);
        Mapped m{&f, a, b, 0};
        if (inf_lo && inf_hi) m.kind = 3;
        else if (inf_hi) m.kind = 1;
        else if (inf_lo) m.kind = 2;
        maps.push_back(m);
    }
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const double lo = maps[i].kind == 0 ? maps[i].a : (maps[i].kind == 3 ? -1.0 : 0.0);
        const double hi = maps[i].kind == 0 ? maps[i].b : 1.0;
        Panel p = gauss_kronrod(maps[i], lo, hi);
        total += p.value;
        total_err += p.error;
        queue.push({p, i});
        ++result.panels;
    }

    while (total_err > opts.abs_tol && result.panels < opts.max_panels && !queue.empty()) {
        auto [worst, idx] = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            // panel cannot be bisected further in double precision
            queue.push({worst, idx});
            break;
        }
        Panel left = gauss_kronrod(maps[idx], worst.lo, mid);
        Panel right = gauss_kronrod(maps[idx], mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push({left, idx});
        queue.push({right, idx});
        ++result.panels;
    }

    // Re-sum to shed the drift of the running updates.
    total = {0.0, 0.0};
    total_err = 0.0;
    while (!queue.empty()) {
        total += queue.top().first.value;
        total_err += queue.top().first.error;
        queue.pop();
    }
    result.value = total;
    result.error_estimate = total_err;
    result.converged = total_err <= opts.abs_tol;
    return result;
}

std::vector<std::pair<double, double>> split_interval(double lo, double hi, std::span<const double> breakpoints) {
    std::vector<double> cuts{lo};
    for (double b : breakpoints)
        if (b > lo && b < hi) cuts.push_back(b);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.emplace_back(cuts[i], cuts[i + 1]);
    return out;
}

} // namespace cylid
