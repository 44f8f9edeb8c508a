#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace cylid {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class NormKind { l1, l2, linf };

NormKind norm_from_name(std::string_view name);
std::string norm_name(NormKind kind);

/**
 * Finite-dimensional proxy for a Banach space U = R^d with a p-norm.
 * Functionals a live in the same coordinates; <u, a> = sum u_i a_i and the
 * dual norm is the conjugate p-norm.
 */
class FunctionalSpace {
  public:
    explicit FunctionalSpace(int dim, NormKind norm = NormKind::l2);

    int dim() const noexcept { return dim_; }
    NormKind norm_kind() const noexcept { return norm_; }

    double pairing(const Vector& u, const Vector& a) const;
    /// ||u||_U
    double norm(const Vector& u) const;
    /// ||a||_{U*}, the conjugate norm
    double dual_norm(const Vector& a) const;
    /// Throws std::invalid_argument when v has the wrong dimension.
    void require_member(const Vector& v, std::string_view what) const;

    friend bool operator==(const FunctionalSpace& a, const FunctionalSpace& b) {
        return a.dim_ == b.dim_ && a.norm_ == b.norm_;
    }

  private:
    int dim_;
    NormKind norm_;
};

double pnorm(const Vector& v, NormKind kind);

} // namespace cylid
