#pragma once

#include "json.hpp"

#include "cylid/conditions.hpp"
#include "cylid/cylindrical.hpp"
#include "cylid/definiteness.hpp"
#include "cylid/extension.hpp"
#include "cylid/onedim.hpp"

namespace cylid {

using Json = nlohmann::json;

// All readers throw ConfigError on malformed input.

Vector vector_from_json(const Json& j, int expected_dim = -1);
Matrix matrix_from_json(const Json& j, int expected_dim = -1);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);

/// {"variant": "atomic", "atoms": [[s, w], ...]}
/// {"variant": "density", "density": {"family": name, ...parameters}, "support": [lo, hi], "gap": g, "factor": f}
/// {"variant": "sum", "terms": [measure, ...]}
LevyMeasureR levy_measure_from_json(const Json& j);
Json to_json(const LevyMeasureR& eta);

Json to_json(const IdCharacteristics1D& ch);

/// {"kind": "atoms", "atoms": [[u, w], ...]}
/// {"kind": "density", "family": "gaussian", "params": {"mass", "mean", "sd", "samples", "seed"}}
/// {"kind": "density", "family": "lebesgue_exterior", "params": {"intensity", "radius"}}
MeasureOnU measure_on_u_from_json(const Json& j, int dim);
Json to_json(const MeasureOnU& nu);

/// {"kind": "zero" | "atomic_functional" | "atoms_on_u" | "measure_on_u" | "sum", ...}
CylindricalLevyMeasure cylindrical_levy_measure_from_json(const Json& j, int dim);
Json to_json(const CylindricalLevyMeasure& nu);

/// {"kind": "zero" | "linear" | "poisson_drift" | "second_moment" | "d_nu" | "truncation_shift" | "table", ...}
/// "table" lists weighted terms: {"kind": "table", "terms": [{"weight": w, "drift": drift}, ...]}.
DriftFunctional drift_from_json(const Json& j, const FunctionalSpace& space, const TruncationFunction& h);
Json to_json(const DriftFunctional& p);

/// {"space": {"dim", "norm"}, "truncation": name, "p": drift, "q": {"matrix": [[...]]}, "nu": measure}
CylindricalCharacteristics characteristics_from_json(const Json& j);
Json to_json(const CylindricalCharacteristics& ch);

Json to_json(const DefinitenessReport& r);
Json to_json(const ConditionsReport& r);
Json to_json(const DnuResult& r);
Json to_json(const ContinuityReport& r);

} // namespace cylid
