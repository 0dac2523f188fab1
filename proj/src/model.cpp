#include "apgal/model.hpp"

#include <cmath>
#include <sstream>

namespace apgal {

void CompositeProblem::validate() const {
  if (smooth.dim <= 0) throw std::invalid_argument("smooth part must have positive dimension");
  if (smooth.dim != nonsmooth.dim) {
    std::ostringstream os;
    os << "dimension mismatch: smooth part has " << smooth.dim << ", nonsmooth part has "
       << nonsmooth.dim;
    throw std::invalid_argument(os.str());
  }
  if (!smooth.value || !smooth.gradient || !nonsmooth.value || !nonsmooth.prox)
    throw std::invalid_argument("composite problem has an unset oracle");
  if (!(mu >= 0.0) || !std::isfinite(mu))
    throw std::invalid_argument("convexity parameter mu must be finite and >= 0");
}

int ConeSpec::total_size() const {
  int m = 0;
  for (const auto& b : blocks) m += b.size;
  return m;
}

void ConeSpec::validate() const {
  for (const auto& b : blocks)
    if (b.size < 1) throw std::invalid_argument("cone blocks must have size >= 1");
}

void ConicProblem::validate() const {
  base.validate();
  cone.validate();
  if (constraint.n != base.dim())
    throw std::invalid_argument("constraint input dimension differs from problem dimension");
  if (constraint.m != cone.total_size())
    throw std::invalid_argument("constraint output dimension differs from cone size");
  if (constraint.m > 0 && (!constraint.value || !constraint.adjoint_apply))
    throw std::invalid_argument("constraint map has an unset oracle");
}

OracleCounters& OracleCounters::operator+=(const OracleCounters& o) {
  f_value_evals += o.f_value_evals;
  grad_f_evals += o.grad_f_evals;
  prox_evals += o.prox_evals;
  g_evals += o.g_evals;
  adjoint_evals += o.adjoint_evals;
  cone_proj_evals += o.cone_proj_evals;
  return *this;
}

OracleCounters operator-(OracleCounters a, const OracleCounters& b) {
  a.f_value_evals -= b.f_value_evals;
  a.grad_f_evals -= b.grad_f_evals;
  a.prox_evals -= b.prox_evals;
  a.g_evals -= b.g_evals;
  a.adjoint_evals -= b.adjoint_evals;
  a.cone_proj_evals -= b.cone_proj_evals;
  return a;
}

CompositeProblem instrument(const CompositeProblem& problem, OracleCounters& counters) {
  CompositeProblem out = problem;
  out.smooth.value = [f = problem.smooth.value, c = &counters](const Vec& x) {
    ++c->f_value_evals;
    return f(x);
  };
  out.smooth.gradient = [g = problem.smooth.gradient, c = &counters](const Vec& x) {
    ++c->grad_f_evals;
    return g(x);
  };
  if (problem.smooth.bregman) {
    out.smooth.bregman = [b = problem.smooth.bregman, c = &counters](const Vec& x, const Vec& y) {
      ++c->f_value_evals;
      return b(x, y);
    };
  }
  out.nonsmooth.prox = [p = problem.nonsmooth.prox, c = &counters](double gamma, const Vec& z) {
    ++c->prox_evals;
    return p(gamma, z);
  };
  return out;
}

ConstraintMap instrument(const ConstraintMap& map, OracleCounters& counters) {
  ConstraintMap out = map;
  out.value = [g = map.value, c = &counters](const Vec& x) {
    ++c->g_evals;
    return g(x);
  };
  out.adjoint_apply = [a = map.adjoint_apply, c = &counters](const Vec& x, const Vec& v) {
    ++c->adjoint_evals;
    return a(x, v);
  };
  return out;
}

double check_gradient(const SmoothOracle& oracle, const Vec& x, double h) {
  if (!(h > 0.0 && h <= 1e-2)) throw std::invalid_argument("check_gradient: h must lie in (0, 1e-2]");
  if (!x.allFinite()) throw std::invalid_argument("check_gradient: x must be finite");
  const Vec g = oracle.gradient(x);
  if (g.size() != x.size()) throw std::invalid_argument("check_gradient: gradient has wrong length");
  double worst = 0.0;
  Vec probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double fp = oracle.value(probe);
    probe[i] = x[i] - h;
    const double fm = oracle.value(probe);
    probe[i] = x[i];
    if (!std::isfinite(fp) || !std::isfinite(fm) || !std::isfinite(g[i])) {
      std::ostringstream os;
      os << "check_gradient: non-finite oracle output at coordinate " << i;
      throw std::domain_error(os.str());
    }
    const double fd = (fp - fm) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - g[i]) / (1.0 + std::abs(g[i])));
  }
  return worst;
}

double composite_value(const CompositeProblem& problem, const Vec& x) {
  const double p = problem.nonsmooth.value(x);
  if (p == kInf) return kInf;
  return problem.smooth.value(x) + p;
}

}  // namespace apgal
