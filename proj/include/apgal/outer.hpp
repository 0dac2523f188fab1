#pragma once

#include "apgal/apg.hpp"
#include "apgal/model.hpp"
#include "apgal/proxcone.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace apgal {

/// Parameters shared by the proximal-point wrapper and the proximal AL
/// method. Unset optionals are resolved by `resolve_for_ppa` /
/// `resolve_for_prox_al`.
struct OuterParams {
  double epsilon = 1e-4;
  std::optional<double> rho0;
  double zeta = 2.0;
  double sigma = 0.4;
  double eta0 = 1.0;
  double gamma0 = 1.0;  // proximal-point wrapper only; the AL method uses 1/rho_k
  double alpha0 = 1.0;
  double delta = 0.5;
  int M = 10;
  int max_outer = 200;
  std::int64_t max_inner_iters = 1'000'000;
  int max_backtracks = 100;
};

/// Fills defaults and validates against the admissible ranges of the
/// proximal-point wrapper (mu = 0). Throws std::invalid_argument whose
/// message names the violated constraint.
OuterParams resolve_for_ppa(OuterParams params);

/// Same for the proximal AL method with modulus mu.
OuterParams resolve_for_prox_al(OuterParams params, double mu);

/// rho0 * zeta^k and eta0 * sigma^k, evaluated by repeated multiplication.
double rho_at(const OuterParams& params, int k);
double eta_at(const OuterParams& params, int k);

struct OuterTraceRow {
  int k = 0;
  double rho_k = 0.0;
  double eta_k = 0.0;
  std::int64_t inner_iters = 0;
  std::int64_t inner_grad_evals = 0;
  std::int64_t inner_prox_evals = 0;
  std::int64_t grad_evals = 0;  // cumulative over the whole solve
  std::int64_t prox_evals = 0;  // cumulative over the whole solve
  double step_norm = 0.0;
  double certified_inner_residual = 0.0;
  double stationarity_residual = 0.0;
  std::optional<double> complementarity_residual;
};

struct PpaResult {
  Status status = Status::IterationLimit;
  Vec x;
  double residual_bound = kInf;  // eta_k + |x^{k+1} - x^k| / rho_k
  Vec witness;                   // explicit element of dF(x)
  double witness_norm = kInf;
  Certificate inner_certificate;
  double rho = 0.0;
  Vec x_prev;
  std::vector<OuterTraceRow> trace;
  OracleCounters counters;
  OuterParams params;
};

/// f(x) + |x - center|^2 / (2 rho) with the same P; modulus mu + 1/rho.
CompositeProblem build_ppa_subproblem(const CompositeProblem& problem, const Vec& center,
                                      double rho);

/// Sees every accepted inner step of outer iteration k together with the
/// subproblem and the effective inner parameters.
using InnerObserver = std::function<void(int k, const CompositeProblem& sub, const ApgParams& inner,
                                         const ApgState& before, const StepReport& step,
                                         const ApgState& after)>;

/// Perturbed proximal-point wrapper for mu = 0: each outer step solves the
/// strongly convex subproblem with apg_terminating to accuracy eta_k.
PpaResult ppa_unconstrained(const CompositeProblem& problem, const OuterParams& params,
                            const Vec& init, const InnerObserver& observer = {});

/// f(x) + P(x) + (dist^2(lambda + rho g(x), -K) - |lambda|^2) / (2 rho).
double al_value(const ConicProblem& conic, const Vec& x, const Vec& lambda, double rho);

/// grad f(x) + grad g(x) * Pi_{K*}(lambda + rho g(x)).
Vec al_smooth_gradient(const ConicProblem& conic, const Vec& x, const Vec& lambda, double rho);

/// Proximal AL subproblem at (x_k, lambda_k, rho_k). Only adjoint products of
/// g are used. If `counters` is given, cone projections are counted there.
CompositeProblem build_al_subproblem(const ConicProblem& conic, const Vec& x_k,
                                     const Vec& lambda_k, double rho_k,
                                     OracleCounters* counters = nullptr);

/// Pi_{K*}(lambda + rho * gval).
Vec multiplier_update(const ConeSpec& cone, const Vec& lambda, double rho, const Vec& gval);

struct KktReport {
  Vec stationarity_witness;     // element of grad f + dP + grad g * lambda
  Vec complementarity_witness;  // element of N_{K*}(lambda), up to defects
  double stationarity_residual = kInf;
  double complementarity_residual = kInf;
  NormalConeGap witness_defects;
};

/// Builds the KKT witnesses for the pair (x, lambda_new) produced by one
/// outer step from (x_prev, lambda_prev) with penalty rho, where
/// `inner_certificate` certifies x for that step's subproblem.
/// Throws InvariantError if the complementarity witness is not in the
/// normal cone up to 1e-9 * (1 + |w|).
KktReport kkt_report(const ConicProblem& conic, const Vec& x, const Vec& lambda_new,
                     const Certificate& inner_certificate, double rho, const Vec& x_prev,
                     const Vec& lambda_prev);

struct ProxAlResult {
  Status status = Status::IterationLimit;
  Vec x;
  Vec lambda;
  KktReport kkt;
  Certificate inner_certificate;
  double rho = 0.0;
  Vec x_prev;
  Vec lambda_prev;
  std::vector<OuterTraceRow> trace;
  OracleCounters counters;
  OuterParams params;
};

/// First-order proximal augmented Lagrangian method with KKT certification.
ProxAlResult prox_al(const ConicProblem& conic, const OuterParams& params, const Vec& init_x,
                     const Vec& init_lambda);

}  // namespace apgal
