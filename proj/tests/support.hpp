#pragma once

#include <random>
#include <vector>

#include "cylid/measure_on_u.hpp"
#include "cylid/rng.hpp"
#include "cylid/space.hpp"

namespace testing_support {

inline cylid::Vector random_vector(cylid::Engine& eng, int dim, double sd = 1.0) {
    std::normal_distribution<double> z(0.0, sd);
    cylid::Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = z(eng);
    return v;
}

inline std::vector<cylid::Vector> random_points(cylid::Engine& eng, int count, int dim, double sd = 1.0) {
    std::vector<cylid::Vector> pts;
    for (int i = 0; i < count; ++i) pts.push_back(random_vector(eng, dim, sd));
    return pts;
}

/// Atoms whose norms straddle the unit ball.
inline cylid::MeasureOnU straddling_atoms(cylid::Engine& eng, int dim, int count) {
    std::uniform_real_distribution<double> radius(0.2, 2.5);
    std::uniform_real_distribution<double> weight(0.1, 2.0);
    std::vector<cylid::AtomU> atoms;
    for (int i = 0; i < count; ++i) {
        cylid::Vector u = random_vector(eng, dim);
        u *= radius(eng) / u.norm();
        atoms.push_back({u, weight(eng)});
    }
    return cylid::MeasureOnU::atoms(dim, atoms);
}

inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
    return out;
}

} // namespace testing_support
