#include "apgal/apg.hpp"

#include <cmath>
#include <sstream>

namespace apgal {

ApgParams normalize_params(ApgParams p, double mu) {
  if (!(p.gamma0 > 0.0) || !std::isfinite(p.gamma0)) throw std::invalid_argument("gamma0 must be > 0");
  if (!(p.alpha0 > 0.0 && p.alpha0 <= 1.0)) throw std::invalid_argument("alpha0 must lie in (0,1]");
  if (!(p.delta > 0.0 && p.delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
  if (p.M < 1) throw std::invalid_argument("M must be a positive integer");
  if (!(p.epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (p.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (p.max_backtracks < 1) throw std::invalid_argument("max_backtracks must be >= 1");
  if (!(mu >= 0.0)) throw std::invalid_argument("mu must be >= 0");
  if (mu > 0.0) {
    p.gamma0 = std::min(p.gamma0, (1.0 - 1e-9) / mu);
    if (p.alpha0 < std::sqrt(mu * p.gamma0) * (1.0 - 1e-12)) {
      std::ostringstream os;
      os << "alpha0 must satisfy sqrt(mu*gamma0) <= alpha0 <= 1 (alpha0=" << p.alpha0
         << ", sqrt(mu*gamma0)=" << std::sqrt(mu * p.gamma0) << ")";
      throw std::invalid_argument(os.str());
    }
  }
  return p;
}

ApgState ApgState::initial(const Vec& x0, const ApgParams& params) {
  ApgState s;
  s.t = 1;
  s.x = x0;
  s.z = x0;
  s.alpha_prev = params.alpha0;
  s.gamma_prev = params.gamma0;
  s.lambda_prod = 1.0;
  return s;
}

double solve_alpha(double gamma_prev, double gamma_t, double alpha_prev, double mu) {
  // gamma_prev*a^2 + (alpha_prev^2*gamma_t - mu*gamma_t*gamma_prev)*a - alpha_prev^2*gamma_t = 0
  const double a = gamma_prev;
  const double b = alpha_prev * alpha_prev * gamma_t - mu * gamma_t * gamma_prev;
  const double c = -alpha_prev * alpha_prev * gamma_t;
  double root;
  if (b == 0.0) {
    root = std::sqrt(-c / a);
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (!(disc >= 0.0)) throw InvariantError("solve_alpha: negative discriminant");
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    const double r1 = q / a;
    const double r2 = c / q;
    root = (r1 > 0.0) ? r1 : r2;
  }
  if (root > 1.0 && root <= 1.0 + 1e-12) root = 1.0;
  if (!(root > 0.0 && root <= 1.0)) {
    std::ostringstream os;
    os << "solve_alpha: no root in (0,1] (gamma_prev=" << gamma_prev << ", gamma_t=" << gamma_t
       << ", alpha_prev=" << alpha_prev << ", mu=" << mu << ")";
    throw InvariantError(os.str());
  }
  return root;
}

bool sufficient_decrease(double gamma, double f_new, double f_y, const Vec& grad_y,
                         const Vec& x_new, const Vec& y) {
  const Vec d = x_new - y;
  const double lhs = 2.0 * gamma * (f_new - f_y - grad_y.dot(d));
  const double rhs = d.squaredNorm();
  return lhs <= rhs * (1.0 + 1e-12) + 1e-15;
}

bool sufficient_decrease_exact(double gamma, double gap, const Vec& x_new, const Vec& y) {
  return 2.0 * gamma * gap <= (x_new - y).squaredNorm() * (1.0 + 1e-12);
}

namespace {

// Line-search test at trial point x_new from y, using the Bregman closure
// when the oracle has one. f_new is f(x_new), already evaluated.
bool accept_trial(const SmoothOracle& f, double gamma, double f_new, const Vec& grad_y,
                  const Vec& x_new, const Vec& y) {
  if (f.bregman) return sufficient_decrease_exact(gamma, f.bregman(x_new, y), x_new, y);
  return sufficient_decrease(gamma, f_new, f.value(y), grad_y, x_new, y);
}

}  // namespace

std::pair<ApgState, StepReport> apg_iteration(const CompositeProblem& problem,
                                              const ApgState& state, const ApgParams& params) {
  const double mu = problem.mu;
  const double start = params.warm_start ? state.gamma_prev : params.gamma0;
  for (int n = 0; n <= params.max_backtracks; ++n) {
    const double gamma = start * std::pow(params.delta, n);
    const double alpha = solve_alpha(state.gamma_prev, gamma, state.alpha_prev, mu);
    const double beta = mu * gamma / alpha;

    Vec y = ((1.0 - alpha) * state.x + alpha * (1.0 - beta) * state.z) / (1.0 - alpha * beta);
    const Vec grad_y = problem.smooth.gradient(y);
    const double step = gamma / alpha;
    Vec z_next = problem.nonsmooth.prox(step, beta * y + (1.0 - beta) * state.z - step * grad_y);
    Vec x_next = (1.0 - alpha) * state.x + alpha * z_next;
    const double f_next = problem.smooth.value(x_next);

    if (!accept_trial(problem.smooth, gamma, f_next, grad_y, x_next, y)) continue;

    StepReport report;
    report.n_t = n;
    report.gamma_t = gamma;
    report.alpha_t = alpha;
    report.beta_t = beta;
    report.F_new = f_next + problem.nonsmooth.value(x_next);
    report.y = std::move(y);
    report.z_next = z_next;

    ApgState next;
    next.t = state.t + 1;
    next.x = std::move(x_next);
    next.z = std::move(z_next);
    next.alpha_prev = alpha;
    next.gamma_prev = gamma;
    next.lambda_prod = state.lambda_prod * (1.0 - alpha);
    return {std::move(next), std::move(report)};
  }
  std::ostringstream os;
  os << "line search failed at iteration " << state.t << " after " << params.max_backtracks
     << " backtracks";
  throw LineSearchError(os.str());
}

namespace {

TraceRow make_row(const ApgState& before, const StepReport& step, const ApgState& after,
                  const OracleCounters& counters) {
  TraceRow row;
  row.t = before.t;
  row.n_t = step.n_t;
  row.gamma_t = step.gamma_t;
  row.alpha_t = step.alpha_t;
  row.beta_t = step.beta_t;
  row.F = step.F_new;
  row.lambda_prod = after.lambda_prod;
  row.grad_evals = counters.grad_f_evals;
  row.prox_evals = counters.prox_evals;
  return row;
}

}  // namespace

ApgRunResult apg_run(const CompositeProblem& problem, const ApgParams& params, const Vec& init,
                     const StepCallback& stop) {
  problem.validate();
  const ApgParams eff = normalize_params(params, problem.mu);
  if (init.size() != problem.dim()) throw std::invalid_argument("apg_run: init has wrong length");

  ApgRunResult result;
  const CompositeProblem counted = instrument(problem, result.trace.counters);
  result.trace.F_initial = composite_value(counted, init);
  if (!std::isfinite(result.trace.F_initial))
    throw std::invalid_argument("apg_run: initial point is outside dom(P)");

  ApgState state = ApgState::initial(init, eff);
  while (state.t <= eff.max_iters) {
    auto [next, step] = apg_iteration(counted, state, eff);
    result.trace.rows.push_back(make_row(state, step, next, result.trace.counters));
    const bool done = stop && stop(state, step, next);
    state = std::move(next);
    if (done) {
      result.status = Status::Converged;
      break;
    }
  }
  result.final_state = std::move(state);
  return result;
}

AdaptiveStep adaptive_pg(const CompositeProblem& problem, const Vec& v, double gamma_start,
                         double delta, int max_backtracks) {
  if (!(gamma_start > 0.0)) throw std::invalid_argument("adaptive_pg: gamma_start must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("adaptive_pg: delta must lie in (0,1)");
  AdaptiveStep out;
  out.grad_v = problem.smooth.gradient(v);
  for (int n = 0; n <= max_backtracks; ++n) {
    const double gamma = gamma_start * std::pow(delta, n);
    Vec cand = problem.nonsmooth.prox(gamma, v - gamma * out.grad_v);
    const double f_cand = problem.smooth.bregman ? 0.0 : problem.smooth.value(cand);
    if (accept_trial(problem.smooth, gamma, f_cand, out.grad_v, cand, v)) {
      out.x_tilde = std::move(cand);
      out.gamma_tilde = gamma;
      out.n_tilde = n;
      return out;
    }
  }
  throw LineSearchError("line search failed in adaptive proximal gradient step");
}

Certificate residual_certificate(const CompositeProblem& problem, const Vec& x_pre,
                                 const Vec& x_tilde, double gamma_tilde, const Vec& grad_pre) {
  Certificate c;
  c.x_pre = x_pre;
  c.x_tilde = x_tilde;
  c.gamma_tilde = gamma_tilde;
  c.witness = (x_pre - x_tilde) / gamma_tilde + problem.smooth.gradient(x_tilde) - grad_pre;
  c.residual = c.witness.norm();
  return c;
}

Certificate residual_certificate(const CompositeProblem& problem, const Vec& x_pre,
                                 const Vec& x_tilde, double gamma_tilde) {
  return residual_certificate(problem, x_pre, x_tilde, gamma_tilde,
                              problem.smooth.gradient(x_pre));
}

ApgCertifiedResult apg_terminating(const CompositeProblem& problem, const ApgParams& params,
                                   const Vec& init, const StepObserver& observer) {
  problem.validate();
  if (!(problem.mu > 0.0))
    throw std::invalid_argument("apg_terminating requires a strongly convex smooth part (mu > 0)");
  if (init.size() != problem.dim())
    throw std::invalid_argument("apg_terminating: init has wrong length");

  ApgCertifiedResult result;
  result.params = normalize_params(params, problem.mu);
  const ApgParams& eff = result.params;
  ApgTrace& trace = result.trace;
  const CompositeProblem counted = instrument(problem, trace.counters);

  trace.F_initial = composite_value(counted, init);
  if (!std::isfinite(trace.F_initial))
    throw std::invalid_argument("apg_terminating: initial point is outside dom(P)");

  auto run_check = [&](std::int64_t t, const Vec& point, TraceRow& row) {
    AdaptiveStep ad = adaptive_pg(counted, point, eff.gamma0, eff.delta, eff.max_backtracks);
    Certificate cert =
        residual_certificate(counted, point, ad.x_tilde, ad.gamma_tilde, ad.grad_v);
    row.cert_residual = cert.residual;
    row.cert_backtracks = ad.n_tilde;
    row.grad_evals = trace.counters.grad_f_evals;
    row.prox_evals = trace.counters.prox_evals;
    if (cert.residual < result.certificate.residual || result.checks.empty()) {
      result.certificate = cert;
      result.x_tilde = cert.x_tilde;
    }
    result.checks.push_back({t, ad.n_tilde, std::move(cert)});
  };

  ApgState state = ApgState::initial(init, eff);
  while (state.t <= eff.max_iters) {
    auto [next, step] = apg_iteration(counted, state, eff);
    if (observer) observer(state, step, next);
    TraceRow row = make_row(state, step, next, trace.counters);
    if (state.t % eff.M == 0) {
      run_check(state.t, next.x, row);
      if (result.checks.back().certificate.residual <= eff.epsilon) {
        result.certificate = result.checks.back().certificate;
        result.x_tilde = result.certificate.x_tilde;
        result.status = Status::Converged;
        trace.rows.push_back(std::move(row));
        return result;
      }
    }
    trace.rows.push_back(std::move(row));
    state = std::move(next);
  }

  // Budget exhausted. Make sure a certificate exists for the last iterate.
  if (result.checks.empty()) {
    run_check(trace.rows.back().t, state.x, trace.rows.back());
    if (result.certificate.residual <= eff.epsilon) result.status = Status::Converged;
  }
  return result;
}

}  // namespace apgal
