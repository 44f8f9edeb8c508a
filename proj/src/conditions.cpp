#include "cylid/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace cylid {

bool ConditionsReport::all_pass() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const ConditionRow& r) { return r.pass; });
}

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

ConditionRow drift_condition(const CylindricalCharacteristics& ch, const ConditionsGrid& grid) {
    ConditionRow row{1, "drift", true, 0.0, ""};
    const double p0 = std::abs(ch.p(Vector::Zero(ch.space.dim())));
    double worst = 0.0;
    for (const FunctionalSequence& seq : grid.sequences) {
        if (seq.terms.empty()) continue;
        worst = std::max(worst, std::abs(ch.p(seq.terms.back()) - ch.p(seq.limit)));
    }
    row.margin = std::max(p0, worst);
    row.pass = p0 == 0.0 && worst <= grid.continuity_tol;
    row.detail = "|p(0)| = " + fmt(p0) + ", max final |p(a_n) - p(a)| = " + fmt(worst) + " (tol " + fmt(grid.continuity_tol) + ")";
    return row;
}

ConditionRow quadratic_condition(const CylindricalCharacteristics& ch, const ConditionsGrid& grid) {
    ConditionRow row{2, "quadratic_form", true, 0.0, ""};
    const Matrix& q = ch.q.matrix();
    const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
    const double asym = (q - q.transpose()).cwiseAbs().maxCoeff();
    const double min_eig = q.size() == 0 ? 0.0 : Eigen::SelfAdjointEigenSolver<Matrix>(q, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    double homog = 0.0;
    for (const auto& set : grid.point_sets)
        for (const Vector& a : set)
            for (double t : grid.homogeneity_scales) {
                const double lhs = ch.q(t * a);
                const double rhs = t * t * ch.q(a);
                homog = std::max(homog, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
            }
    const double trace_scale = std::max(1.0, std::abs(q.trace()));
    row.pass = asym <= 1e-12 * scale && min_eig >= -1e-12 * trace_scale && homog <= 1e-12;
    row.margin = min_eig;
    row.detail = "asymmetry " + fmt(asym) + ", min eigenvalue " + fmt(min_eig) + ", homogeneity residual " + fmt(homog);
    return row;
}

ConditionRow levy_condition(const CylindricalCharacteristics& ch, const ConditionsGrid& grid) {
    ConditionRow row{3, "levy_measure", true, 0.0, ""};
    double worst = 0.0;
    int failures = 0;
    const auto visit = [&](const Vector& a) {
        try {
            const IntegralResult r = levy_integrability(ch.nu.project(a));
            const double v = r.value.real();
            if (!std::isfinite(v) || !r.converged) ++failures;
            else worst = std::max(worst, v);
        } catch (const std::exception&) {
            ++failures;
        }
    };
    for (const auto& set : grid.point_sets)
        for (const Vector& a : set) visit(a);
    for (const FunctionalSequence& seq : grid.sequences) {
        for (const Vector& a : seq.terms) visit(a);
        visit(seq.limit);
    }
    row.pass = failures == 0;
    row.margin = failures == 0 ? worst : std::numeric_limits<double>::infinity();
    row.detail = "max int (s^2 ^ 1) d(nu o a^-1) = " + fmt(worst) + ", non-finite functionals: " + std::to_string(failures);
    return row;
}

} // namespace

ConditionsReport id_conditions_report(const CylindricalCharacteristics& ch, const ConditionsGrid& grid) {
    ConditionsReport rep;
    rep.conditions.push_back(drift_condition(ch, grid));
    rep.conditions.push_back(quadratic_condition(ch, grid));
    rep.conditions.push_back(levy_condition(ch, grid));

    ConditionRow def{4, "kappa_negative_definite", true, 0.0, ""};
    const FunctionalKernel k = [&](const Vector& a) { return kappa(ch, a); };
    double worst = std::numeric_limits<double>::infinity();
    int failed_sets = 0;
    for (const auto& set : grid.point_sets) {
        if (set.size() < 2) continue;
        DefinitenessReport nd = negative_definite_check(k, set, grid.eigen_tol, grid.hermitian_tol);
        std::vector<DefinitenessReport> sch = schoenberg_check(k, set, grid.divisors, grid.eigen_tol, grid.hermitian_tol);
        bool ok = nd.passed();
        worst = std::min(worst, nd.min_eigenvalue / nd.scale);
        for (const auto& r : sch) {
            ok = ok && r.passed();
            worst = std::min(worst, r.min_eigenvalue / r.scale);
        }
        if (!ok) ++failed_sets;
        rep.negative_definite.push_back(std::move(nd));
        rep.schoenberg.push_back(std::move(sch));
    }
    def.pass = failed_sets == 0;
    def.margin = std::isfinite(worst) ? worst : 0.0;
    def.detail = std::to_string(rep.negative_definite.size()) + " point sets, " + std::to_string(failed_sets) +
                 " failing; min scaled eigenvalue " + fmt(def.margin) + " (tol " + fmt(grid.eigen_tol) + ")";
    rep.conditions.push_back(def);
    return rep;
}

} // namespace cylid
