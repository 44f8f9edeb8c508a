#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cylid/kernels.hpp"
#include "cylid/levy_measure.hpp"

namespace cylid {

/// Characteristics (m, r, eta)_h of an infinitely divisible law on the line.
struct IdCharacteristics1D {
    double m = 0.0;
    double r = 0.0;
    LevyMeasureR eta{};
    TruncationFunction h = TruncationFunction::indicator();

    /// r >= 0 and eta a Levy measure; throws otherwise.
    void validate() const;
};

/// exp(i m t - r^2 t^2 / 2 + int psi_tilde_h(s, t) eta(ds)).
Complex cf_1d(const IdCharacteristics1D& ch, double t);

/// The exponent of cf_1d; its exp is cf_1d.
Complex exponent_1d(const IdCharacteristics1D& ch, double t);

/// Same law with respect to h_new: m' = m + int (h_new - h) d eta.
IdCharacteristics1D convert_truncation_1d(const IdCharacteristics1D& ch, const TruncationFunction& h_new);

/**
 * The law actually drawn by sample_1d: eta restricted to |s| > eps with the
 * drift unchanged, so its characteristic function is the comparison target.
 */
IdCharacteristics1D truncate_small_jumps(const IdCharacteristics1D& ch, double eps);

/// Bias bound of eps-truncation: int_{|s| <= eps} s^2 eta(ds).
double small_jump_second_moment(const LevyMeasureR& eta, double eps);

/**
 * n i.i.d. draws of m_eps + r Z + (compound Poisson of eta on |s| > eps),
 * m_eps = m - int_{|s|>eps} h d eta. Draws are produced in fixed-size shards,
 * each from its own stream derived from (seed, shard index).
 *
 * eps = 0 is allowed only when eta has finite mass.
 */
std::vector<double> sample_1d(const IdCharacteristics1D& ch, std::size_t n, std::uint64_t seed, double jump_cutoff);

/// (1/n) sum exp(i t x_k)
Complex empirical_cf(std::span<const double> xs, double t);

/// sup_x |F_n(x) - F(x)| for a continuous reference CDF.
double ks_statistic_continuous(std::vector<double> xs, const std::function<double(double)>& cdf);

/// sup_x |F_n(x) - F(x)| for a law on the lattice {offset + spacing k : k >= 0}.
double ks_statistic_lattice(std::vector<double> xs, double offset, double spacing, const std::function<double(long)>& cdf);

/// Asymptotic 1% critical value of the Kolmogorov-Smirnov statistic, 1.6276 / sqrt(n).
double ks_critical_1pct(std::size_t n);

} // namespace cylid
