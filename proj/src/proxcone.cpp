#include "apgal/proxcone.hpp"

#include <cmath>
#include <sstream>

namespace apgal {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_size(const Vec& v, Eigen::Index n, const char* what) {
  if (v.size() != n) {
    std::ostringstream os;
    os << what << ": expected length " << n << ", got " << v.size();
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

void validate_prox_kind(const ProxKind& kind, int dim) {
  std::visit(overloaded{
                 [](const prox_kind::Zero&) {},
                 [](const prox_kind::NonnegOrthant&) {},
                 [](const prox_kind::L1& k) {
                   if (!(k.weight > 0.0)) throw std::invalid_argument("L1 weight must be > 0");
                 },
                 [dim](const prox_kind::Box& k) {
                   require_size(k.lower, dim, "box lower bound");
                   require_size(k.upper, dim, "box upper bound");
                   if ((k.lower.array() > k.upper.array()).any())
                     throw std::invalid_argument("box requires lower <= upper componentwise");
                 },
                 [dim](const prox_kind::SquaredL2& k) {
                   if (!(k.coef > 0.0)) throw std::invalid_argument("squared-l2 coefficient must be > 0");
                   require_size(k.center, dim, "squared-l2 center");
                 },
             },
             kind);
}

Vec prox(const ProxKind& kind, double gamma, const Vec& z) {
  if (!(gamma > 0.0)) throw std::invalid_argument("prox: gamma must be > 0");
  return std::visit(
      overloaded{
          [&](const prox_kind::Zero&) -> Vec { return z; },
          [&](const prox_kind::L1& k) -> Vec {
            const double thr = gamma * k.weight;
            return z.unaryExpr([thr](double v) {
              return v > thr ? v - thr : (v < -thr ? v + thr : 0.0);
            });
          },
          [&](const prox_kind::Box& k) -> Vec {
            require_size(k.lower, z.size(), "prox(box)");
            return z.cwiseMax(k.lower).cwiseMin(k.upper);
          },
          [&](const prox_kind::NonnegOrthant&) -> Vec { return z.cwiseMax(0.0); },
          [&](const prox_kind::SquaredL2& k) -> Vec {
            require_size(k.center, z.size(), "prox(squared-l2)");
            const double s = gamma * k.coef;
            return (z + s * k.center) / (1.0 + s);
          },
      },
      kind);
}

double prox_value(const ProxKind& kind, const Vec& x) {
  return std::visit(
      overloaded{
          [&](const prox_kind::Zero&) { return 0.0; },
          [&](const prox_kind::L1& k) { return k.weight * x.lpNorm<1>(); },
          [&](const prox_kind::Box& k) {
            require_size(k.lower, x.size(), "box value");
            const bool inside =
                (x.array() >= k.lower.array()).all() && (x.array() <= k.upper.array()).all();
            return inside ? 0.0 : kInf;
          },
          [&](const prox_kind::NonnegOrthant&) { return (x.array() >= 0.0).all() ? 0.0 : kInf; },
          [&](const prox_kind::SquaredL2& k) {
            require_size(k.center, x.size(), "squared-l2 value");
            return 0.5 * k.coef * (x - k.center).squaredNorm();
          },
      },
      kind);
}

ProxTerm make_prox_term(ProxKind kind, int dim) {
  validate_prox_kind(kind, dim);
  ProxTerm term;
  term.dim = dim;
  term.value = [kind, dim](const Vec& x) {
    require_size(x, dim, "prox term value");
    return prox_value(kind, x);
  };
  term.prox = [kind, dim](double gamma, const Vec& z) {
    require_size(z, dim, "prox term");
    return prox(kind, gamma, z);
  };
  return term;
}

void project_soc_inplace(Eigen::Ref<Vec> v) {
  const double t = v[0];
  const double r = v.tail(v.size() - 1).norm();
  if (r <= t) return;
  if (r <= -t) {
    v.setZero();
    return;
  }
  const double s = 0.5 * (t + r);
  v[0] = s;
  v.tail(v.size() - 1) *= s / r;
}

Vec project_polar(const ConeSpec& cone, const Vec& u) {
  require_size(u, cone.total_size(), "project_polar");
  Vec out = u;
  Eigen::Index off = 0;
  for (const auto& b : cone.blocks) {
    auto seg = out.segment(off, b.size);
    switch (b.kind) {
      case ConeKind::NonnegOrthant:
        seg = seg.cwiseMin(0.0);
        break;
      case ConeKind::ZeroCone:
        seg.setZero();
        break;
      case ConeKind::SecondOrder: {
        // Pi_{-K}(u) = -Pi_K(-u)
        Vec neg = -seg;
        project_soc_inplace(neg);
        seg = -neg;
        break;
      }
    }
    off += b.size;
  }
  return out;
}

Vec project_dual(const ConeSpec& cone, const Vec& u) { return u - project_polar(cone, u); }

double dist_polar(const ConeSpec& cone, const Vec& u) { return project_dual(cone, u).norm(); }

bool in_dual_cone(const ConeSpec& cone, const Vec& lambda, double tol) {
  if (lambda.size() != cone.total_size()) return false;
  if (lambda.size() == 0) return true;
  return (lambda - project_dual(cone, lambda)).cwiseAbs().maxCoeff() <= tol;
}

NormalConeGap normal_cone_gap(const ConeSpec& cone, const Vec& lambda, const Vec& w) {
  require_size(w, cone.total_size(), "normal_cone_gap");
  if (!in_dual_cone(cone, lambda, 1e-9))
    throw std::invalid_argument("normal_cone_gap: multiplier is not in the dual cone");
  NormalConeGap gap;
  gap.membership_defect = project_dual(cone, w).norm();
  gap.complementarity_defect = std::abs(w.dot(lambda));
  return gap;
}

}  // namespace apgal
