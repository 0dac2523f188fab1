#pragma once

#include "apgal/model.hpp"

#include <utility>
#include <variant>

namespace apgal {

namespace prox_kind {
struct Zero {};
struct L1 {
  double weight = 1.0;
};
struct Box {
  Vec lower;
  Vec upper;
};
struct NonnegOrthant {};
/// P(x) = coef/2 * |x - center|^2
struct SquaredL2 {
  double coef = 1.0;
  Vec center;
};
}  // namespace prox_kind

using ProxKind = std::variant<prox_kind::Zero, prox_kind::L1, prox_kind::Box,
                              prox_kind::NonnegOrthant, prox_kind::SquaredL2>;

/// Closed-form prox of gamma*P at z. Throws std::invalid_argument on a
/// dimension mismatch or nonpositive gamma.
Vec prox(const ProxKind& kind, double gamma, const Vec& z);

/// P(x), +inf outside the domain of indicator kinds.
double prox_value(const ProxKind& kind, const Vec& x);

/// Packages a ProxKind as the ProxTerm used by the solvers.
ProxTerm make_prox_term(ProxKind kind, int dim);

/// Checks the invariants of a kind (weights > 0, lower <= upper, sizes).
void validate_prox_kind(const ProxKind& kind, int dim);

// Cone operations. All act blockwise on a vector of length cone.total_size().

/// Euclidean projection onto the polar -K.
Vec project_polar(const ConeSpec& cone, const Vec& u);

/// Euclidean projection onto the dual cone K*, as u - project_polar(u).
Vec project_dual(const ConeSpec& cone, const Vec& u);

/// dist(u, -K).
double dist_polar(const ConeSpec& cone, const Vec& u);

/// True if every coordinate of lambda is within `tol` of its projection on K*.
bool in_dual_cone(const ConeSpec& cone, const Vec& lambda, double tol = 1e-9);

struct NormalConeGap {
  double membership_defect = 0.0;       // dist(w, -K)
  double complementarity_defect = 0.0;  // |<w, lambda>|
};

/// Measures how far w is from N_{K*}(lambda) = {w in -K : <w, lambda> = 0}.
/// Throws std::invalid_argument if lambda is not in K* (1e-9 per coordinate).
NormalConeGap normal_cone_gap(const ConeSpec& cone, const Vec& lambda, const Vec& w);

/// Projection of (t, xbar) onto the second-order cone {|xbar| <= t}.
void project_soc_inplace(Eigen::Ref<Vec> v);

}  // namespace apgal
