#include "apgal/outer.hpp"

#include "apgal/proxcone.hpp"

#include <cmath>
#include <sstream>

namespace apgal {

namespace {

void validate_common(const OuterParams& p) {
  if (!(p.epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0 (0<ε)");
  if (!(p.zeta > 1.0)) throw std::invalid_argument("zeta must satisfy ζ>1");
  if (!(p.sigma > 0.0 && p.sigma * p.zeta < 1.0))
    throw std::invalid_argument("sigma must satisfy 0<σ<1/ζ");
  if (!(p.eta0 > 0.0 && p.eta0 <= 1.0)) throw std::invalid_argument("eta0 must satisfy 0<η₀≤1");
  if (!(p.alpha0 > 0.0 && p.alpha0 <= 1.0)) throw std::invalid_argument("alpha0 must satisfy 0<α₀≤1");
  if (!(p.delta > 0.0 && p.delta < 1.0)) throw std::invalid_argument("delta must satisfy 0<δ<1");
  if (p.M < 1) throw std::invalid_argument("M must be a positive integer");
  if (p.max_outer < 1) throw std::invalid_argument("max_outer must be >= 1");
  if (p.max_inner_iters < 1) throw std::invalid_argument("max_inner_iters must be >= 1");
  if (p.max_backtracks < 1) throw std::invalid_argument("max_backtracks must be >= 1");
}

ApgParams inner_params(const OuterParams& p, double gamma0, double eta) {
  ApgParams a;
  a.gamma0 = gamma0;
  a.alpha0 = p.alpha0;
  a.delta = p.delta;
  a.M = p.M;
  a.epsilon = eta;
  a.max_iters = p.max_inner_iters;
  a.max_backtracks = p.max_backtracks;
  return a;
}

void require_in_domain(const CompositeProblem& problem, const Vec& x, const char* who) {
  if (x.size() != problem.dim()) {
    std::ostringstream os;
    os << who << ": initial point has length " << x.size() << ", expected " << problem.dim();
    throw std::invalid_argument(os.str());
  }
  if (!std::isfinite(problem.nonsmooth.value(x))) {
    std::ostringstream os;
    os << who << ": initial point is outside dom(P)";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

OuterParams resolve_for_ppa(OuterParams p) {
  validate_common(p);
  if (!(p.gamma0 > 0.0)) throw std::invalid_argument("gamma0 must satisfy 0<γ₀≤ρ₀");
  if (!p.rho0) p.rho0 = std::max(10.0, p.gamma0);
  const double rho0 = *p.rho0;
  if (!(rho0 > 1.0)) throw std::invalid_argument("rho0 must satisfy ρ₀>1");
  if (!(p.gamma0 <= rho0)) throw std::invalid_argument("gamma0 must satisfy 0<γ₀≤ρ₀");
  if (p.alpha0 < std::sqrt(p.gamma0 / rho0) * (1.0 - 1e-12))
    throw std::invalid_argument("alpha0 must satisfy √(γ₀/ρ₀)≤α₀≤1");
  return p;
}

OuterParams resolve_for_prox_al(OuterParams p, double mu) {
  validate_common(p);
  if (!(mu >= 0.0)) throw std::invalid_argument("mu must be >= 0");
  const double rho_min = 0.5 * (mu + std::sqrt(mu * mu + 4.0));
  if (!p.rho0) p.rho0 = std::max(10.0, rho_min + 1.0);
  const double rho0 = *p.rho0;
  if (!(rho0 > rho_min)) throw std::invalid_argument("rho0 must satisfy ρ₀>(μ+√(μ²+4))/2");
  if (p.alpha0 < std::sqrt((mu + 1.0 / rho0) / rho0) * (1.0 - 1e-12))
    throw std::invalid_argument("alpha0 must satisfy √((μ+1/ρ₀)/ρ₀)≤α₀≤1");
  p.gamma0 = 1.0 / rho0;
  return p;
}

double rho_at(const OuterParams& params, int k) {
  double r = params.rho0.value();
  for (int i = 0; i < k; ++i) r *= params.zeta;
  return r;
}

double eta_at(const OuterParams& params, int k) {
  double e = params.eta0;
  for (int i = 0; i < k; ++i) e *= params.sigma;
  return e;
}

CompositeProblem build_ppa_subproblem(const CompositeProblem& problem, const Vec& center,
                                      double rho) {
  CompositeProblem sub = problem;
  sub.smooth.value = [f = problem.smooth.value, center, rho](const Vec& x) {
    return f(x) + (x - center).squaredNorm() / (2.0 * rho);
  };
  sub.smooth.gradient = [g = problem.smooth.gradient, center, rho](const Vec& x) -> Vec {
    return g(x) + (x - center) / rho;
  };
  if (problem.smooth.bregman) {
    sub.smooth.bregman = [b = problem.smooth.bregman, rho](const Vec& x, const Vec& y) {
      return b(x, y) + (x - y).squaredNorm() / (2.0 * rho);
    };
  }
  sub.mu = problem.mu + 1.0 / rho;
  return sub;
}

PpaResult ppa_unconstrained(const CompositeProblem& problem, const OuterParams& params,
                            const Vec& init, const InnerObserver& observer) {
  problem.validate();
  if (problem.mu != 0.0)
    throw std::invalid_argument("ppa_unconstrained expects mu = 0; use apg_terminating for mu > 0");
  require_in_domain(problem, init, "ppa_unconstrained");

  PpaResult result;
  result.params = resolve_for_ppa(params);
  const OuterParams& p = result.params;
  const double eps = p.epsilon;

  Vec x_k = init;
  for (int k = 0; k < p.max_outer; ++k) {
    const double rho = rho_at(p, k);
    const double eta = eta_at(p, k);
    const CompositeProblem sub = build_ppa_subproblem(problem, x_k, rho);
    const ApgParams ip = inner_params(p, p.gamma0, eta);
    StepObserver watch;
    if (observer) {
      const ApgParams eff = normalize_params(ip, sub.mu);
      watch = [&, k, eff](const ApgState& before, const StepReport& step, const ApgState& after) {
        observer(k, sub, eff, before, step, after);
      };
    }
    ApgCertifiedResult inner = apg_terminating(sub, ip, x_k, watch);
    result.counters += inner.trace.counters;

    const Vec& x_next = inner.x_tilde;
    const double step = (x_next - x_k).norm();

    OuterTraceRow row;
    row.k = k;
    row.rho_k = rho;
    row.eta_k = eta;
    row.inner_iters = static_cast<std::int64_t>(inner.trace.rows.size());
    row.inner_grad_evals = inner.trace.counters.grad_f_evals;
    row.inner_prox_evals = inner.trace.counters.prox_evals;
    row.grad_evals = result.counters.grad_f_evals;
    row.prox_evals = result.counters.prox_evals;
    row.step_norm = step;
    row.certified_inner_residual = inner.certificate.residual;

    // u in dF_k(x_next) = dF(x_next) + (x_next - x_k)/rho
    Vec witness = inner.certificate.witness - (x_next - x_k) / rho;
    row.stationarity_residual = witness.norm();
    result.trace.push_back(row);

    // eta_k bounds the certificate once the inner solve converged; otherwise
    // fall back to the certificate it did produce.
    const bool inner_ok = inner.status == Status::Converged;
    const double bound = (inner_ok ? eta : inner.certificate.residual) + step / rho;
    const bool done = inner_ok && step / rho <= eps / 2.0 && eta <= eps / 2.0;
    if (done || bound < result.residual_bound) {
      result.x = x_next;
      result.residual_bound = bound;
      result.witness = std::move(witness);
      result.witness_norm = row.stationarity_residual;
      result.inner_certificate = inner.certificate;
      result.rho = rho;
      result.x_prev = x_k;
    }
    if (done) {
      result.status = Status::Converged;
      return result;
    }
    if (!inner_ok) return result;
    x_k = x_next;
  }
  return result;
}

double al_value(const ConicProblem& conic, const Vec& x, const Vec& lambda, double rho) {
  const double F = composite_value(conic.base, x);
  if (F == kInf) return kInf;
  if (conic.constraint.m == 0) return F;
  const double d = dist_polar(conic.cone, lambda + rho * conic.constraint.value(x));
  return F + (d * d - lambda.squaredNorm()) / (2.0 * rho);
}

Vec al_smooth_gradient(const ConicProblem& conic, const Vec& x, const Vec& lambda, double rho) {
  Vec grad = conic.base.smooth.gradient(x);
  if (conic.constraint.m == 0) return grad;
  const Vec mult = project_dual(conic.cone, lambda + rho * conic.constraint.value(x));
  return grad + conic.constraint.adjoint_apply(x, mult);
}

CompositeProblem build_al_subproblem(const ConicProblem& conic, const Vec& x_k,
                                     const Vec& lambda_k, double rho_k,
                                     OracleCounters* counters) {
  CompositeProblem sub = conic.base;
  sub.mu = conic.base.mu + 1.0 / rho_k;
  if (conic.constraint.m == 0) {
    sub = build_ppa_subproblem(conic.base, x_k, rho_k);
    return sub;
  }
  const double lambda_sq = lambda_k.squaredNorm();
  sub.smooth.value = [f = conic.base.smooth.value, g = conic.constraint.value, cone = conic.cone,
                      x_k, lambda_k, rho_k, lambda_sq, counters](const Vec& x) {
    const Vec dual = project_dual(cone, lambda_k + rho_k * g(x));
    if (counters) ++counters->cone_proj_evals;
    return f(x) + (dual.squaredNorm() - lambda_sq + (x - x_k).squaredNorm()) / (2.0 * rho_k);
  };
  sub.smooth.gradient = [grad = conic.base.smooth.gradient, g = conic.constraint.value,
                         adj = conic.constraint.adjoint_apply, cone = conic.cone, x_k, lambda_k,
                         rho_k, counters](const Vec& x) -> Vec {
    const Vec dual = project_dual(cone, lambda_k + rho_k * g(x));
    if (counters) ++counters->cone_proj_evals;
    return grad(x) + adj(x, dual) + (x - x_k) / rho_k;
  };
  // For affine g the penalty is h(lambda + rho g(x)) / rho with
  // h = dist^2(., -K) / 2, whose gap splits into two sign-definite terms:
  // |Pi_K*(v') - Pi_K*(v)|^2 / 2 - <Pi_K*(v), Pi_-K(v')>.
  if (conic.base.smooth.bregman && conic.constraint.affine) {
    sub.smooth.bregman = [b = conic.base.smooth.bregman, g = conic.constraint.value,
                          cone = conic.cone, lambda_k, rho_k, counters](const Vec& x, const Vec& y) {
      const Vec vx = lambda_k + rho_k * g(x);
      const Vec vy = lambda_k + rho_k * g(y);
      const Vec px = project_dual(cone, vx), py = project_dual(cone, vy);
      const Vec qx = project_polar(cone, vx);
      if (counters) counters->cone_proj_evals += 3;
      const double h_gap = 0.5 * (px - py).squaredNorm() - py.dot(qx);
      return b(x, y) + h_gap / rho_k + (x - y).squaredNorm() / (2.0 * rho_k);
    };
  }
  return sub;
}

Vec multiplier_update(const ConeSpec& cone, const Vec& lambda, double rho, const Vec& gval) {
  if (!(rho > 0.0)) throw std::invalid_argument("multiplier_update: rho must be > 0");
  return project_dual(cone, lambda + rho * gval);
}

KktReport kkt_report(const ConicProblem& conic, const Vec& x, const Vec& lambda_new,
                     const Certificate& inner_certificate, double rho, const Vec& x_prev,
                     const Vec& lambda_prev) {
  KktReport r;
  // u in grad f(x) + grad g(x) lambda_new + (x - x_prev)/rho + dP(x)
  r.stationarity_witness = inner_certificate.witness - (x - x_prev) / rho;
  r.stationarity_residual = r.stationarity_witness.norm();

  const int m = conic.constraint.m;
  if (m == 0) {
    r.complementarity_witness = Vec::Zero(0);
    r.complementarity_residual = 0.0;
    return r;
  }
  const Vec shifted = lambda_prev + rho * conic.constraint.value(x);
  // shifted - Pi_{K*}(shifted) lies in N_{K*}(lambda_new)
  r.complementarity_witness = (shifted - lambda_new) / rho;
  r.complementarity_residual = (lambda_new - lambda_prev).norm() / rho;
  r.witness_defects = normal_cone_gap(conic.cone, lambda_new, r.complementarity_witness);

  const double tol = 1e-9 * (1.0 + r.complementarity_witness.norm());
  if (r.witness_defects.membership_defect > tol || r.witness_defects.complementarity_defect > tol) {
    std::ostringstream os;
    os << "kkt_report: complementarity witness is not in the normal cone (membership defect "
       << r.witness_defects.membership_defect << ", complementarity defect "
       << r.witness_defects.complementarity_defect << "); multiplier and iterate do not match";
    throw InvariantError(os.str());
  }
  return r;
}

ProxAlResult prox_al(const ConicProblem& conic, const OuterParams& params, const Vec& init_x,
                     const Vec& init_lambda) {
  conic.validate();
  require_in_domain(conic.base, init_x, "prox_al");
  if (init_lambda.size() != conic.constraint.m)
    throw std::invalid_argument("prox_al: initial multiplier has wrong length");
  if (!in_dual_cone(conic.cone, init_lambda))
    throw std::invalid_argument("prox_al: initial multiplier is not in the dual cone");

  ProxAlResult result;
  result.params = resolve_for_prox_al(params, conic.base.mu);
  const OuterParams& p = result.params;
  const double eps = p.epsilon;

  ConicProblem counted = conic;
  if (conic.constraint.m > 0) counted.constraint = instrument(conic.constraint, result.counters);

  Vec x_k = init_x;
  Vec lambda_k = init_lambda;
  double best = kInf;
  for (int k = 0; k < p.max_outer; ++k) {
    const double rho = rho_at(p, k);
    const double eta = eta_at(p, k);
    const CompositeProblem sub = build_al_subproblem(counted, x_k, lambda_k, rho, &result.counters);

    const double gamma0 = 1.0 / rho;
    if (!(sub.mu * gamma0 <= 1.0 - 1e-9))
      throw InvariantError("prox_al: mu*gamma0 reached 1 despite the rho0 lower bound");
    ApgCertifiedResult inner = apg_terminating(sub, inner_params(p, gamma0, eta), x_k);
    if (inner.params.gamma0 != gamma0)
      throw InvariantError("prox_al: inner step size was clamped");
    result.counters += inner.trace.counters;

    const Vec& x_next = inner.x_tilde;
    Vec lambda_next = lambda_k;
    if (counted.constraint.m > 0) {
      lambda_next = multiplier_update(counted.cone, lambda_k, rho, counted.constraint.value(x_next));
      ++result.counters.cone_proj_evals;
    }
    KktReport report = kkt_report(counted, x_next, lambda_next, inner.certificate, rho, x_k, lambda_k);

    const double step =
        std::sqrt((x_next - x_k).squaredNorm() + (lambda_next - lambda_k).squaredNorm());

    OuterTraceRow row;
    row.k = k;
    row.rho_k = rho;
    row.eta_k = eta;
    row.inner_iters = static_cast<std::int64_t>(inner.trace.rows.size());
    row.inner_grad_evals = inner.trace.counters.grad_f_evals;
    row.inner_prox_evals = inner.trace.counters.prox_evals;
    row.grad_evals = result.counters.grad_f_evals;
    row.prox_evals = result.counters.prox_evals;
    row.step_norm = step;
    row.certified_inner_residual = inner.certificate.residual;
    row.stationarity_residual = report.stationarity_residual;
    row.complementarity_residual = report.complementarity_residual;
    result.trace.push_back(row);

    const bool done = inner.status == Status::Converged && step / rho <= eps / 2.0 && eta <= eps / 2.0;
    const double score = std::max(report.stationarity_residual, report.complementarity_residual);
    if (done || score < best) {
      best = score;
      result.x = x_next;
      result.lambda = lambda_next;
      result.kkt = std::move(report);
      result.inner_certificate = inner.certificate;
      result.rho = rho;
      result.x_prev = x_k;
      result.lambda_prev = lambda_k;
    }
    if (done) {
      result.status = Status::Converged;
      return result;
    }
    if (inner.status != Status::Converged) return result;
    x_k = x_next;
    lambda_k = std::move(lambda_next);
  }
  return result;
}

}  // namespace apgal
