#include "cylid/serialize.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cylid/errors.hpp"

namespace cylid {
namespace {

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) fail(where + ": missing \"" + key + "\"");
    return j.at(key);
}

double number(const Json& j, const std::string& where) {
    if (!j.is_number()) fail(where + ": expected a number");
    return j.get<double>();
}

double number_field(const Json& j, const char* key, const std::string& where) {
    return number(field(j, key, where), where + "." + key);
}

double number_or(const Json& j, const char* key, double fallback, const std::string& where) {
    return j.contains(key) ? number(j.at(key), where + "." + key) : fallback;
}

std::string string_field(const Json& j, const char* key, const std::string& where) {
    const Json& v = field(j, key, where);
    if (!v.is_string()) fail(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

// Infinite bounds are written as strings so the documents stay plain JSON.
Json bound_to_json(double x) {
    if (std::isinf(x)) return x > 0 ? Json("inf") : Json("-inf");
    return x;
}

double bound_from_json(const Json& j, const std::string& where) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        fail(where + ": unknown bound \"" + s + "\"");
    }
    return number(j, where);
}

TruncationFunction truncation_from_json(const Json& j, const std::string& where) {
    if (!j.is_string()) fail(where + ": truncation must be a name");
    try {
        return TruncationFunction::by_name(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        fail(where + ": " + e.what());
    }
}

Density1D density_from_json(const Json& d, double lo, double hi, double gap) {
    const std::string where = "density";
    const std::string family = string_field(d, "family", where);
    if (family == "exponential")
        return Density1D::exponential(number_field(d, "scale", where), number_field(d, "rate", where), lo, hi, gap);
    if (family == "gaussian")
        return Density1D::gaussian(number_field(d, "mass", where), number_field(d, "mean", where), number_field(d, "sd", where), lo,
                                   hi, gap);
    if (family == "uniform") return Density1D::uniform(number_field(d, "intensity", where), lo, hi, gap);
    if (family == "power") return Density1D::power(number_field(d, "scale", where), number_field(d, "alpha", where), lo, hi, gap);
    fail(where + ": unknown family \"" + family + "\"");
}

Json density_to_json(const Density1D& d) {
    Json j{{"family", d.family_name()}};
    switch (d.family()) {
    case Density1D::Family::exponential:
        j["scale"] = d.p1();
        j["rate"] = d.p2();
        break;
    case Density1D::Family::gaussian:
        j["mass"] = d.p1();
        j["mean"] = d.p2();
        j["sd"] = d.p3();
        break;
    case Density1D::Family::uniform:
        j["intensity"] = d.p1();
        break;
    case Density1D::Family::power:
        j["scale"] = d.p1();
        j["alpha"] = d.p2();
        break;
    }
    return j;
}

Json definiteness_witness(const DefinitenessReport& r) {
    Json w = Json::array();
    for (Eigen::Index i = 0; i < r.witness.size(); ++i) w.push_back({r.witness(i).real(), r.witness(i).imag()});
    return w;
}

} // namespace

Vector vector_from_json(const Json& j, int expected_dim) {
    if (!j.is_array() || j.empty()) fail("expected a non-empty array of numbers");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], "vector entry");
    if (expected_dim >= 0 && v.size() != expected_dim)
        fail("vector has dimension " + std::to_string(v.size()) + ", expected " + std::to_string(expected_dim));
    return v;
}

Matrix matrix_from_json(const Json& j, int expected_dim) {
    if (!j.is_array() || j.empty()) fail("matrix: expected an array of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    if (expected_dim >= 0 && n != expected_dim) fail("matrix: wrong number of rows");
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m.row(i) = vector_from_json(j[static_cast<std::size_t>(i)], static_cast<int>(n)).transpose();
    return m;
}

Json to_json(const Vector& v) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
    return j;
}

Json to_json(const Matrix& m) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) j.push_back(to_json(Vector(m.row(i).transpose())));
    return j;
}

LevyMeasureR levy_measure_from_json(const Json& j) {
    const std::string variant = string_field(j, "variant", "measure");
    try {
        if (variant == "atomic") {
            std::vector<Atom> atoms;
            for (const Json& a : field(j, "atoms", "measure")) {
                if (!a.is_array() || a.size() != 2) fail("measure.atoms: expected [location, weight]");
                atoms.push_back({number(a[0], "atom location"), number(a[1], "atom weight")});
            }
            return LevyMeasureR::atomic(std::move(atoms));
        }
        if (variant == "density") {
            const Json& support = field(j, "support", "measure");
            if (!support.is_array() || support.size() != 2) fail("measure.support: expected [lo, hi]");
            const Density1D d = density_from_json(field(j, "density", "measure"), bound_from_json(support[0], "support"),
                                                  bound_from_json(support[1], "support"), number_or(j, "gap", 0.0, "measure"));
            return LevyMeasureR::density(d, number_or(j, "factor", 1.0, "measure"));
        }
        if (variant == "sum") {
            LevyMeasureR total;
            for (const Json& t : field(j, "terms", "measure")) total = total + levy_measure_from_json(t);
            return total;
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        fail(std::string("measure: ") + e.what());
    }
    fail("measure: unknown variant \"" + variant + "\"");
}

Json to_json(const LevyMeasureR& eta) {
    Json atoms = Json::array();
    for (const Atom& a : eta.atoms()) atoms.push_back({a.location, a.weight});
    Json atomic{{"variant", "atomic"}, {"atoms", atoms}};
    if (eta.densities().empty()) return atomic;
    Json terms = Json::array();
    if (!eta.atoms().empty()) terms.push_back(atomic);
    for (const auto& term : eta.densities()) {
        const Density1D& d = term.density;
        terms.push_back({{"variant", "density"},
                         {"density", density_to_json(d)},
                         {"support", {bound_to_json(d.lo()), bound_to_json(d.hi())}},
                         {"gap", d.gap()},
                         {"factor", term.factor}});
    }
    if (terms.size() == 1) return terms[0];
    return {{"variant", "sum"}, {"terms", terms}};
}

Json to_json(const IdCharacteristics1D& ch) {
    return {{"m", ch.m}, {"r", ch.r}, {"truncation", ch.h.name()}, {"eta", to_json(ch.eta)}};
}

MeasureOnU measure_on_u_from_json(const Json& j, int dim) {
    const std::string kind = string_field(j, "kind", "measure_on_u");
    try {
        if (kind == "atoms") {
            std::vector<AtomU> atoms;
            for (const Json& a : field(j, "atoms", "measure_on_u")) {
                if (!a.is_array() || a.size() != 2) fail("measure_on_u.atoms: expected [point, weight]");
                atoms.push_back({vector_from_json(a[0], dim), number(a[1], "atom weight")});
            }
            return MeasureOnU::atoms(dim, std::move(atoms));
        }
        if (kind == "density") {
            const std::string family = string_field(j, "family", "measure_on_u");
            const Json& p = field(j, "params", "measure_on_u");
            if (family == "gaussian") {
                MonteCarloSpec mc;
                if (p.contains("samples")) mc.samples = p.at("samples").get<std::size_t>();
                if (p.contains("seed")) mc.seed = p.at("seed").get<std::uint64_t>();
                return MeasureOnU::gaussian(number_field(p, "mass", "params"), vector_from_json(field(p, "mean", "params"), dim),
                                            number_field(p, "sd", "params"), mc);
            }
            if (family == "lebesgue_exterior")
                return MeasureOnU::lebesgue_exterior(dim, number_field(p, "intensity", "params"), number_field(p, "radius", "params"));
            fail("measure_on_u: unknown family \"" + family + "\"");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("measure_on_u: ") + e.what());
    } catch (const std::invalid_argument& e) {
        fail(std::string("measure_on_u: ") + e.what());
    }
    fail("measure_on_u: unknown kind \"" + kind + "\"");
}

Json to_json(const MeasureOnU& nu) {
    switch (nu.kind()) {
    case MeasureOnU::Kind::atoms: {
        Json atoms = Json::array();
        for (const AtomU& a : nu.atom_list()) atoms.push_back({to_json(a.point), a.weight});
        return {{"kind", "atoms"}, {"atoms", atoms}};
    }
    case MeasureOnU::Kind::gaussian:
        return {{"kind", "density"},
                {"family", "gaussian"},
                {"params",
                 {{"mass", nu.mass()},
                  {"mean", to_json(nu.mean())},
                  {"sd", nu.sd()},
                  {"samples", nu.monte_carlo().samples},
                  {"seed", nu.monte_carlo().seed}}}};
    case MeasureOnU::Kind::lebesgue_exterior:
        return {{"kind", "density"},
                {"family", "lebesgue_exterior"},
                {"params", {{"intensity", nu.mass()}, {"radius", nu.radius()}}}};
    }
    return {};
}

CylindricalLevyMeasure cylindrical_levy_measure_from_json(const Json& j, int dim) {
    const std::string kind = string_field(j, "kind", "nu");
    try {
        if (kind == "zero") return {};
        if (kind == "atomic_functional")
            return CylindricalLevyMeasure::atomic_functional(vector_from_json(field(j, "coeffs", "nu"), dim),
                                                             number_field(j, "rate", "nu"));
        if (kind == "atoms_on_u") {
            Json m = j;
            m["kind"] = "atoms";
            return CylindricalLevyMeasure::on_u(measure_on_u_from_json(m, dim));
        }
        if (kind == "measure_on_u") return CylindricalLevyMeasure::on_u(measure_on_u_from_json(field(j, "measure", "nu"), dim));
        if (kind == "sum") {
            CylindricalLevyMeasure total;
            for (const Json& t : field(j, "terms", "nu")) {
                const double w = number_or(t, "weight", 1.0, "nu.terms");
                total = total + cylindrical_levy_measure_from_json(field(t, "nu", "nu.terms"), dim).scaled(w);
            }
            return total;
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        fail(std::string("nu: ") + e.what());
    }
    fail("nu: unknown kind \"" + kind + "\"");
}

Json to_json(const CylindricalLevyMeasure& nu) {
    const auto leaf = [](const CylindricalLevyMeasure::Leaf& l) -> Json {
        if (const auto* af = std::get_if<CylindricalLevyMeasure::AtomicFunctional>(&l))
            return {{"kind", "atomic_functional"}, {"coeffs", to_json(af->coeffs)}, {"rate", af->rate}};
        return {{"kind", "measure_on_u"}, {"measure", to_json(std::get<MeasureOnU>(l))}};
    };
    if (nu.is_zero()) return {{"kind", "zero"}};
    if (nu.terms().size() == 1 && nu.terms()[0].weight == 1.0) return leaf(nu.terms()[0].leaf);
    Json terms = Json::array();
    for (const auto& t : nu.terms()) terms.push_back({{"weight", t.weight}, {"nu", leaf(t.leaf)}});
    return {{"kind", "sum"}, {"terms", terms}};
}

DriftFunctional drift_from_json(const Json& j, const FunctionalSpace& space, const TruncationFunction& h) {
    const std::string kind = string_field(j, "kind", "p");
    const int dim = space.dim();
    const auto trunc = [&](const char* key) { return j.contains(key) ? truncation_from_json(j.at(key), std::string("p.") + key) : h; };
    try {
        if (kind == "zero") return {};
        if (kind == "linear") return DriftFunctional::linear(vector_from_json(field(j, "coeffs", "p"), dim));
        if (kind == "poisson_drift")
            return DriftFunctional::poisson_drift(vector_from_json(field(j, "coeffs", "p"), dim), number_field(j, "rate", "p"),
                                                  trunc("truncation"));
        if (kind == "second_moment")
            return DriftFunctional::second_moment(cylindrical_levy_measure_from_json(field(j, "nu", "p"), dim), trunc("truncation"));
        if (kind == "d_nu")
            return DriftFunctional::d_nu(measure_on_u_from_json(field(j, "measure", "p"), dim), trunc("truncation"), space);
        if (kind == "truncation_shift")
            return DriftFunctional::truncation_shift(cylindrical_levy_measure_from_json(field(j, "nu", "p"), dim),
                                                     truncation_from_json(field(j, "from", "p"), "p.from"),
                                                     truncation_from_json(field(j, "to", "p"), "p.to"));
        if (kind == "table") {
            DriftFunctional total;
            for (const Json& t : field(j, "terms", "p")) {
                const double w = number_or(t, "weight", 1.0, "p.terms");
                total = total + drift_from_json(field(t, "drift", "p.terms"), space, h).scaled(w);
            }
            return total;
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const HypothesisError& e) {
        fail(std::string("p: ") + e.what());
    } catch (const std::invalid_argument& e) {
        fail(std::string("p: ") + e.what());
    }
    fail("p: unknown kind \"" + kind + "\"");
}

Json to_json(const DriftFunctional& p) {
    const auto leaf = [](const DriftFunctional::Leaf& l) -> Json {
        return std::visit(
            [](const auto& x) -> Json {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, DriftFunctional::Linear>) {
                    return {{"kind", "linear"}, {"coeffs", to_json(x.coeffs)}};
                } else if constexpr (std::is_same_v<T, DriftFunctional::PoissonDrift>) {
                    return {{"kind", "poisson_drift"}, {"coeffs", to_json(x.coeffs)}, {"rate", x.rate}, {"truncation", x.h.name()}};
                } else if constexpr (std::is_same_v<T, DriftFunctional::SecondMoment>) {
                    return {{"kind", "second_moment"}, {"nu", to_json(x.nu)}, {"truncation", x.h.name()}};
                } else if constexpr (std::is_same_v<T, DriftFunctional::Dnu>) {
                    return {{"kind", "d_nu"}, {"measure", to_json(x.nu)}, {"truncation", x.h.name()}};
                } else {
                    return {{"kind", "truncation_shift"}, {"nu", to_json(x.nu)}, {"from", x.from.name()}, {"to", x.to.name()}};
                }
            },
            l);
    };
    if (p.is_zero()) return {{"kind", "zero"}};
    if (p.terms().size() == 1 && p.terms()[0].weight == 1.0) return leaf(p.terms()[0].leaf);
    Json terms = Json::array();
    for (const auto& t : p.terms()) terms.push_back({{"weight", t.weight}, {"drift", leaf(t.leaf)}});
    return {{"kind", "table"}, {"terms", terms}};
}

CylindricalCharacteristics characteristics_from_json(const Json& j) {
    if (!j.is_object()) fail("characteristics: expected an object");
    const Json& sp = field(j, "space", "characteristics");
    const Json& dim_j = field(sp, "dim", "space");
    if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1 || dim_j.get<long long>() > 4096) fail("space.dim: expected an integer in [1, 4096]");
    const int dim = dim_j.get<int>();
    NormKind norm = NormKind::l2;
    if (sp.contains("norm")) {
        try {
            norm = norm_from_name(string_field(sp, "norm", "space"));
        } catch (const std::invalid_argument& e) {
            fail(std::string("space.norm: ") + e.what());
        }
    }
    const FunctionalSpace space(dim, norm);
    const TruncationFunction h =
        j.contains("truncation") ? truncation_from_json(j.at("truncation"), "truncation") : TruncationFunction::indicator();
    const DriftFunctional p = j.contains("p") ? drift_from_json(j.at("p"), space, h) : DriftFunctional{};
    Matrix qm = Matrix::Zero(dim, dim);
    if (j.contains("q")) qm = matrix_from_json(field(j.at("q"), "matrix", "q"), dim);
    const CylindricalLevyMeasure nu = j.contains("nu") ? cylindrical_levy_measure_from_json(j.at("nu"), dim) : CylindricalLevyMeasure{};
    try {
        return CylindricalCharacteristics(space, p, QuadraticForm(qm), nu, h);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        fail(std::string("characteristics: ") + e.what());
    }
}

Json to_json(const CylindricalCharacteristics& ch) {
    return {{"space", {{"dim", ch.space.dim()}, {"norm", norm_name(ch.space.norm_kind())}}},
            {"truncation", ch.h.name()},
            {"p", to_json(ch.p)},
            {"q", {{"matrix", to_json(ch.q.matrix())}}},
            {"nu", to_json(ch.nu)}};
}

Json to_json(const DefinitenessReport& r) {
    Json j{{"size", r.size},
           {"verdict", verdict_name(r.verdict)},
           {"min_eigenvalue", r.min_eigenvalue},
           {"tolerance", r.tolerance},
           {"scale", r.scale},
           {"max_asymmetry", r.max_asymmetry}};
    if (!r.passed() && r.witness.size() > 0) {
        j["witness"] = definiteness_witness(r);
        j["witness_form"] = r.witness_form;
    }
    return j;
}

Json to_json(const ConditionsReport& r) {
    Json rows = Json::array();
    for (const ConditionRow& c : r.conditions)
        rows.push_back({{"condition", c.index}, {"name", c.name}, {"pass", c.pass}, {"margin", c.margin}, {"detail", c.detail}});
    Json sets = Json::array();
    for (std::size_t i = 0; i < r.negative_definite.size(); ++i) {
        Json sch = Json::array();
        for (const auto& s : r.schoenberg[i]) sch.push_back(to_json(s));
        sets.push_back({{"negative_definite", to_json(r.negative_definite[i])}, {"schoenberg", sch}});
    }
    return {{"pass", r.all_pass()}, {"conditions", rows}, {"point_sets", sets}};
}

Json to_json(const DnuResult& r) {
    Json pieces = Json::array();
    for (const DnuPiece& p : r.pieces)
        pieces.push_back({{"domain", p.domain},
                          {"integral", p.integral},
                          {"abs_integral", p.abs_integral},
                          {"bound", p.bound},
                          {"std_error", p.std_error},
                          {"within_bound", p.within_bound}});
    return {{"value", r.value},
            {"std_error", r.std_error},
            {"c", r.c},
            {"outside_ball_mass", r.outside_ball_mass},
            {"bounds_hold", r.bounds_hold},
            {"pieces", pieces},
            {"radon_extendability", "untested"}};
}

Json to_json(const ContinuityReport& r) {
    Json verdicts = Json::array();
    for (const TrendVerdict& v : r.verdicts)
        verdicts.push_back({{"column", v.column},
                            {"monotone", v.monotone},
                            {"final_value", v.final_value},
                            {"below_threshold", v.below_threshold},
                            {"pass", v.pass()}});
    return {{"continuity_pass", r.continuity_pass}, {"regular_continuity_pass", r.regular_continuity_pass}, {"verdicts", verdicts}};
}

} // namespace cylid
