#pragma once

#include "apgal/model.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace apgal {

struct ApgParams {
  double gamma0 = 1.0;
  double alpha0 = 1.0;
  double delta = 0.5;
  int M = 10;                 // certificate cadence
  double epsilon = 1e-6;      // target residual for the certified solver
  std::int64_t max_iters = 1'000'000;
  int max_backtracks = 100;
  // Start each line search from the previous step size instead of gamma0.
  // Off by default: the convergence analysis assumes restarts from gamma0.
  bool warm_start = false;
};

/// Validates `params` against modulus `mu` and returns the effective copy.
/// For mu > 0, gamma0 is clamped to (1 - 1e-9) / mu so that 1 - mu*gamma
/// stays away from zero in the extrapolation step.
ApgParams normalize_params(ApgParams params, double mu);

struct ApgState {
  std::int64_t t = 1;
  Vec x;
  Vec z;
  double alpha_prev = 1.0;
  double gamma_prev = 1.0;
  double lambda_prod = 1.0;  // prod_{i<t} (1 - alpha_i)

  static ApgState initial(const Vec& x0, const ApgParams& params);
};

struct StepReport {
  int n_t = 0;
  double gamma_t = 0.0;
  double alpha_t = 0.0;
  double beta_t = 0.0;
  Vec y;
  Vec z_next;
  double F_new = 0.0;
};

struct Certificate {
  Vec x_pre;
  Vec x_tilde;
  double gamma_tilde = 0.0;
  Vec witness;  // an explicit element of dF(x_tilde)
  double residual = kInf;
};

/// One row of an inner-solver trace. Counters are cumulative and include
/// any certificate work done at this iteration.
struct TraceRow {
  std::int64_t t = 0;
  int n_t = 0;
  double gamma_t = 0.0;
  double alpha_t = 0.0;
  double beta_t = 0.0;
  double F = 0.0;
  double lambda_prod = 1.0;
  std::int64_t grad_evals = 0;
  std::int64_t prox_evals = 0;
  std::optional<double> cert_residual;
  std::optional<int> cert_backtracks;
};

struct ApgTrace {
  double F_initial = 0.0;
  std::vector<TraceRow> rows;
  OracleCounters counters;
};

enum class Status { Converged, IterationLimit };

/// Positive root in (0, 1] of
///   gamma_prev*a^2 = (1 - a)*alpha_prev^2*gamma_t + mu*a*gamma_t*gamma_prev.
double solve_alpha(double gamma_prev, double gamma_t, double alpha_prev, double mu);

/// Acceptance test for the backtracking line search:
///   2*gamma*(f(x+) - f(y) - <grad f(y), x+ - y>) <= |x+ - y|^2
/// with slack LHS <= RHS*(1 + 1e-12) + 1e-15 for rounding at equality.
bool sufficient_decrease(double gamma, double f_new, double f_y, const Vec& grad_y,
                         const Vec& x_new, const Vec& y);

/// Same test from an accurately evaluated gap f(x+) - f(y) - <grad f(y), x+ - y>.
/// No absolute slack: it only exists to absorb cancellation in value
/// differences, and would accept any step once |x+ - y|^2 drops below it.
bool sufficient_decrease_exact(double gamma, double gap, const Vec& x_new, const Vec& y);

/// One accelerated proximal gradient step with backtracking. Each trial step
/// size costs exactly one gradient and one prox evaluation.
/// Throws LineSearchError after params.max_backtracks rejected trials.
std::pair<ApgState, StepReport> apg_iteration(const CompositeProblem& problem,
                                              const ApgState& state, const ApgParams& params);

/// Called after every accepted step; return true to stop.
using StepCallback =
    std::function<bool(const ApgState& before, const StepReport& step, const ApgState& after)>;

struct ApgRunResult {
  ApgState final_state;
  ApgTrace trace;
  Status status = Status::IterationLimit;
};

/// Plain accelerated iteration without a termination test. Runs until `stop`
/// returns true or params.max_iters steps were taken.
ApgRunResult apg_run(const CompositeProblem& problem, const ApgParams& params, const Vec& init,
                     const StepCallback& stop = {});

struct AdaptiveStep {
  Vec x_tilde;
  double gamma_tilde = 0.0;
  int n_tilde = 0;
  Vec grad_v;  // gradient at the input point, reused by the certificate
};

/// Proximal gradient step from v with step size gamma_start*delta^n, n the
/// smallest nonnegative integer passing the sufficient-decrease test.
/// Costs one gradient evaluation and n+1 prox evaluations.
AdaptiveStep adaptive_pg(const CompositeProblem& problem, const Vec& v, double gamma_start,
                         double delta, int max_backtracks = 100);

/// u = (x_pre - x_tilde)/gamma_tilde + grad f(x_tilde) - grad f(x_pre).
/// u lies in dF(x_tilde), so |u| bounds dist(0, dF(x_tilde)).
Certificate residual_certificate(const CompositeProblem& problem, const Vec& x_pre,
                                 const Vec& x_tilde, double gamma_tilde);

/// Same, reusing an already evaluated grad f(x_pre).
Certificate residual_certificate(const CompositeProblem& problem, const Vec& x_pre,
                                 const Vec& x_tilde, double gamma_tilde, const Vec& grad_pre);

struct CertificateCheck {
  std::int64_t t = 0;
  int n_tilde = 0;
  Certificate certificate;
};

struct ApgCertifiedResult {
  Status status = Status::IterationLimit;
  Vec x_tilde;
  Certificate certificate;  // best one seen when status is IterationLimit
  std::vector<CertificateCheck> checks;
  ApgTrace trace;
  ApgParams params;  // effective parameters after clamping
};

/// Called after every accepted step, before any certificate check.
using StepObserver =
    std::function<void(const ApgState& before, const StepReport& step, const ApgState& after)>;

/// Certified accelerated solver for mu > 0. Every M iterations runs
/// adaptive_pg at the current iterate and stops as soon as the certificate
/// residual is <= params.epsilon.
ApgCertifiedResult apg_terminating(const CompositeProblem& problem, const ApgParams& params,
                                   const Vec& init, const StepObserver& observer = {});

}  // namespace apgal
