#include "cylid/space.hpp"

#include <stdexcept>

namespace cylid {

NormKind norm_from_name(std::string_view name) {
    if (name == "l1") return NormKind::l1;
    if (name == "l2") return NormKind::l2;
    if (name == "linf") return NormKind::linf;
    throw std::invalid_argument("unknown norm '" + std::string(name) + "'");
}

std::string norm_name(NormKind kind) {
    switch (kind) {
        case NormKind::l1: return "l1";
        case NormKind::l2: return "l2";
        case NormKind::linf: return "linf";
    }
    return {};
}

double pnorm(const Vector& v, NormKind kind) {
    switch (kind) {
        case NormKind::l1: return v.lpNorm<1>();
        case NormKind::l2: return v.norm();
        case NormKind::linf: return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
    }
    return 0.0;
}

FunctionalSpace::FunctionalSpace(int dim, NormKind norm) : dim_(dim), norm_(norm) {
    if (dim < 1) throw std::invalid_argument("functional space: dimension must be >= 1");
}

double FunctionalSpace::pairing(const Vector& u, const Vector& a) const { return u.dot(a); }

double FunctionalSpace::norm(const Vector& u) const { return pnorm(u, norm_); }

double FunctionalSpace::dual_norm(const Vector& a) const {
    switch (norm_) {
        case NormKind::l1: return pnorm(a, NormKind::linf);
        case NormKind::l2: return pnorm(a, NormKind::l2);
        case NormKind::linf: return pnorm(a, NormKind::l1);
    }
    return 0.0;
}

void FunctionalSpace::require_member(const Vector& v, std::string_view what) const {
    if (v.size() != dim_)
        throw std::invalid_argument(std::string(what) + ": expected dimension " + std::to_string(dim_) + ", got " +
                                    std::to_string(v.size()));
}

} // namespace cylid
