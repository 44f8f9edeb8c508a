#include "cylid/gallery.hpp"

#include <random>
#include <stdexcept>

#include "cylid/errors.hpp"
#include "cylid/rng.hpp"

namespace cylid {
namespace {

Vector natural_coeffs(int dim) {
    Vector c(dim);
    for (int j = 0; j < dim; ++j) c(j) = j + 1;
    return c;
}

CylindricalCharacteristics drift_part(const CylindricalCharacteristics& ch) {
    return {ch.space, ch.p, QuadraticForm::zero(ch.space.dim()), CylindricalLevyMeasure{}, ch.h};
}

std::vector<Vector> witness_points(int dim) {
    // l(2 e_1) = 2, so the drift-only kernel at these points is exp(i h_I(2 t))
    Vector dir = Vector::Zero(dim);
    dir(0) = 2.0;
    return {0.0 * dir, 0.4 * dir, 0.8 * dir};
}

Vector fixed_limit(int dim) {
    Vector a(dim);
    for (int j = 0; j < dim; ++j) a(j) = 0.3 - 0.17 * j;
    return a;
}

Vector fixed_direction(int dim, double scale) {
    Vector v(dim);
    for (int j = 0; j < dim; ++j) v(j) = (j % 2 == 0 ? 1.0 : -0.5) / (1.0 + j);
    return scale * v / v.norm();
}

} // namespace

ConditionsGrid default_conditions_grid(int dim, std::uint64_t seed, int sets, int set_size) {
    ConditionsGrid g;
    Engine eng = make_engine(seed, 0);
    std::normal_distribution<double> z(0.0, 0.5);
    for (int s = 0; s < sets; ++s) {
        std::vector<Vector> pts;
        for (int i = 0; i < set_size; ++i) {
            Vector a(dim);
            for (int j = 0; j < dim; ++j) a(j) = z(eng);
            pts.push_back(std::move(a));
        }
        g.point_sets.push_back(std::move(pts));
    }
    Vector limit(dim);
    Vector dir(dim);
    for (int j = 0; j < dim; ++j) limit(j) = z(eng);
    for (int j = 0; j < dim; ++j) dir(j) = z(eng);
    FunctionalSequence seq;
    seq.limit = limit;
    for (int n = 1; n <= 30; ++n) seq.terms.push_back(limit + std::ldexp(1.0, -n) * dir);
    g.sequences.push_back(std::move(seq));
    return g;
}

FunctionalSequence harmonic_sequence(const Vector& limit, const Vector& direction, int count) {
    FunctionalSequence seq;
    seq.limit = limit;
    for (int n = 1; n <= count; ++n) seq.terms.push_back(limit + direction / static_cast<double>(n));
    return seq;
}

std::vector<PropertyOutcome> verify_entry(const GalleryEntry& entry) {
    std::vector<PropertyOutcome> out;
    const int dim = entry.ch.space.dim();
    ConditionsGrid grid = default_conditions_grid(dim);
    for (const auto& set : entry.extra_point_sets) grid.point_sets.push_back(set);

    for (const ExpectedProperty& prop : entry.expected) {
        PropertyOutcome o{prop.name, prop.should_pass, false, ""};
        if (prop.name == "id_conditions") {
            const ConditionsReport rep = id_conditions_report(entry.ch, grid);
            o.observed = rep.all_pass();
            for (const auto& row : rep.conditions)
                if (!row.pass) o.detail += row.name + " fails: " + row.detail + "; ";
        } else if (prop.name == "drift_only_fails") {
            const ConditionsReport rep = id_conditions_report(drift_part(entry.ch), grid);
            o.observed = !rep.conditions[3].pass;
            o.detail = rep.conditions[3].detail;
        } else if (prop.name == "regular_continuity") {
            const FunctionalSequence seq = harmonic_sequence(fixed_limit(dim), fixed_direction(dim, 1e-3));
            const ContinuityReport rep = continuity_report(entry.ch, seq.terms, seq.limit);
            o.observed = rep.continuity_pass && rep.regular_continuity_pass;
            for (const auto& v : rep.verdicts)
                if (!v.pass()) o.detail += v.column + " final " + std::to_string(v.final_value) + "; ";
        } else {
            throw std::invalid_argument("unknown gallery property: " + prop.name);
        }
        out.push_back(std::move(o));
    }
    return out;
}

GalleryEntry gaussian_cyl(const Matrix& q, NormKind norm) {
    const int dim = static_cast<int>(q.rows());
    return {"gaussian",
            "centred Gaussian (0, Q, 0)",
            CylindricalCharacteristics(FunctionalSpace(dim, norm), DriftFunctional{}, QuadraticForm(q), CylindricalLevyMeasure{},
                                       TruncationFunction::indicator()),
            {{"id_conditions", true}, {"regular_continuity", true}}};
}

GalleryEntry poisson_noncontinuous(int dim, double lambda, const TruncationFunction& h) {
    if (!(lambda > 0.0)) throw std::invalid_argument("poisson_noncontinuous: lambda must be > 0");
    const Vector c = natural_coeffs(dim);
    GalleryEntry e{"poisson",
                   "Poisson along l(a) = sum j a_j with p(a) = lambda h(l(a))",
                   CylindricalCharacteristics(FunctionalSpace(dim), DriftFunctional::poisson_drift(c, lambda, h),
                                              QuadraticForm::zero(dim), CylindricalLevyMeasure::atomic_functional(c, lambda), h),
                   {{"id_conditions", true}, {"drift_only_fails", true}, {"regular_continuity", true}}};
    e.extra_point_sets.push_back(witness_points(dim));
    return e;
}

GalleryEntry poisson_drift_only(int dim, double lambda, const TruncationFunction& h) {
    if (!(lambda > 0.0)) throw std::invalid_argument("poisson_drift_only: lambda must be > 0");
    GalleryEntry e{"poisson_drift_only",
                   "drift lambda h(l(a)) without its jump measure",
                   CylindricalCharacteristics(FunctionalSpace(dim), DriftFunctional::poisson_drift(natural_coeffs(dim), lambda, h),
                                              QuadraticForm::zero(dim), CylindricalLevyMeasure{}, h),
                   {{"id_conditions", false}}};
    e.extra_point_sets.push_back(witness_points(dim));
    return e;
}

GalleryEntry second_moment_drift(const MeasureOnU& nu, const TruncationFunction& h) {
    if (nu.kind() == MeasureOnU::Kind::lebesgue_exterior)
        throw HypothesisError("second_moment_drift: weak second moments are infinite");
    const int dim = nu.dim();
    const CylindricalLevyMeasure cyl = CylindricalLevyMeasure::on_u(nu);
    return {"second_moment",
            "p(a) = int (h(<u,a>) - <u,a>) nu(du)",
            CylindricalCharacteristics(FunctionalSpace(dim), DriftFunctional::second_moment(cyl, h), QuadraticForm::zero(dim), cyl, h),
            {{"id_conditions", true}, {"regular_continuity", true}}};
}

GalleryEntry dnu_entry(const MeasureOnU& nu, const TruncationFunction& h, NormKind norm) {
    return {"dnu", "(d_nu, 0, nu)_h", make_id_from_levy(nu, h, FunctionalSpace(nu.dim(), norm)),
            {{"id_conditions", true}, {"regular_continuity", true}}};
}

std::vector<std::string> gallery_names() {
    return {"gaussian", "gaussian_rank1", "poisson", "poisson_indicator", "poisson_drift_only",
            "second_moment", "dnu_atoms", "dnu_gaussian"};
}

namespace {

GalleryEntry make_named(const std::string& name) {
    const int d = kGalleryDim;
    if (name == "gaussian") {
        Matrix q = 0.8 * Matrix::Identity(d, d) + 0.2 * Matrix::Ones(d, d);
        return gaussian_cyl(q);
    }
    if (name == "gaussian_rank1") {
        Vector v(d);
        v << 1.0, -0.5, 0.25, 0.75;
        GalleryEntry e = gaussian_cyl(v * v.transpose());
        e.name = name;
        e.description = "rank-one Gaussian (0, v v^T, 0)";
        return e;
    }
    if (name == "poisson") return poisson_noncontinuous(d, 1.5, TruncationFunction::ramp());
    if (name == "poisson_indicator") {
        GalleryEntry e = poisson_noncontinuous(d, 1.5, TruncationFunction::indicator());
        e.name = name;
        return e;
    }
    if (name == "poisson_drift_only") return poisson_drift_only(d, 1.0, TruncationFunction::indicator());
    if (name == "second_moment") {
        std::vector<AtomU> atoms(3, AtomU{Vector(d), 0.0});
        atoms[0].point << 0.3, -0.2, 0.1, 0.4;
        atoms[0].weight = 1.0;
        atoms[1].point << 1.5, 0.5, -1.0, 0.2;
        atoms[1].weight = 0.5;
        atoms[2].point << -0.4, 2.0, 0.3, -0.8;
        atoms[2].weight = 0.25;
        return second_moment_drift(MeasureOnU::atoms(d, atoms), TruncationFunction::ramp());
    }
    if (name == "dnu_atoms") {
        std::vector<AtomU> atoms(4, AtomU{Vector(d), 0.0});
        atoms[0].point << 0.2, 0.1, -0.3, 0.4;
        atoms[0].weight = 2.0;
        atoms[1].point << 0.9, -0.6, 0.5, 0.1;
        atoms[1].weight = 0.7;
        atoms[2].point << 1.8, 0.4, -0.2, 1.1;
        atoms[2].weight = 0.4;
        atoms[3].point << -0.5, -2.5, 1.0, 0.3;
        atoms[3].weight = 1.2;
        GalleryEntry e = dnu_entry(MeasureOnU::atoms(d, atoms), TruncationFunction::ramp());
        e.name = name;
        return e;
    }
    if (name == "dnu_gaussian") {
        Vector mean(d);
        mean << 0.5, -0.3, 0.2, 0.1;
        GalleryEntry e = dnu_entry(MeasureOnU::gaussian(2.0, mean, 0.6), TruncationFunction::ramp());
        e.name = name;
        return e;
    }
    throw std::invalid_argument("unknown gallery entry: " + name);
}

} // namespace

GalleryEntry build_gallery_entry(const std::string& name) {
    GalleryEntry e = make_named(name);
    for (const PropertyOutcome& o : verify_entry(e))
        if (o.observed != o.expected)
            throw std::logic_error("gallery entry " + name + ": property " + o.name + " expected " + (o.expected ? "pass" : "fail") +
                                   " but observed " + (o.observed ? "pass" : "fail") + " " + o.detail);
    return e;
}

std::vector<NormGrowthRow> norm_growth_table(const std::vector<int>& dims, NormKind norm) {
    std::vector<NormGrowthRow> rows;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("norm_growth_table: dimension must be >= 1");
        rows.push_back({d, pnorm(natural_coeffs(d), norm)});
    }
    return rows;
}

} // namespace cylid
