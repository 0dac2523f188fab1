// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include "apgal/apg.hpp"
#include "apgal/outer.hpp"
#include "apgal/problems.hpp"
#include "apgal/proxcone.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace apgal;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

struct Tally {
  long checked = 0;
  long violations = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    if (violations++ == 0) first = what;
  }
  Verdict verdict(const std::string& summary) const {
    std::ostringstream os;
    os << summary << "; " << checked << " checks, " << violations << " violations";
    if (violations) os << " (first: " << first << ")";
    return {violations == 0, os.str()};
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// ---------------------------------------------------------------- problems

ProxKind mixed_prox(int i, int n) {
  switch (i % 5) {
    case 0: return prox_kind::Zero{};
    case 1: return prox_kind::L1{0.1};
    case 2: return prox_kind::Box{Vec::Constant(n, -1.0), Vec::Constant(n, 1.0)};
    case 3: return prox_kind::NonnegOrthant{};
    default: return prox_kind::SquaredL2{0.5, Vec::Constant(n, 0.2)};
  }
}

struct RandomCase {
  std::string label;
  CompositeProblem problem;
  bool smooth_only = false;  // P = 0
};

RandomCase random_case(int i, double mu) {
  QuarticSpec spec;
  spec.n = 5 + (i * 7) % 46;
  spec.k_terms = spec.n;
  spec.seed = 1000 + static_cast<std::uint64_t>(i);
  spec.mu_add = mu;
  spec.prox = mixed_prox(i, spec.n);
  RandomCase c;
  c.label = "quartic#" + std::to_string(i) + " n=" + std::to_string(spec.n) + " mu=" + fmt("%g", mu);
  c.problem = gen_quartic(spec);
  c.smooth_only = i % 5 == 0;
  return c;
}

Vec default_init(const CompositeProblem& p) { return p.nonsmooth.prox(1.0, Vec::Zero(p.dim())); }

// -------------------------------------------------- trajectory invariants

// Checks one accepted step against the per-step properties. `problem` must
// be the uninstrumented problem the step was taken on.
void check_step(Tally& tally, const std::string& where, const CompositeProblem& problem,
                const ApgParams& eff, const ApgState& before, const StepReport& step) {
  const double mu = problem.mu;
  const double a = step.alpha_t, g = step.gamma_t;
  const double ap = before.alpha_prev, gp = before.gamma_prev;
  const std::string at = where + " t=" + std::to_string(before.t);

  tally.expect(std::sqrt(mu * g) <= a * (1 + 1e-12), at + ": alpha below sqrt(mu gamma)");
  tally.expect(a <= 1 + 1e-12, at + ": alpha above 1");
  tally.expect(step.beta_t >= -1e-12 && step.beta_t <= 1 + 1e-12, at + ": beta outside [0,1]");
  const double ratio = a * a / g, ratio_prev = ap * ap / gp;
  tally.expect(ratio <= ratio_prev + 1e-12 * (1 + ratio_prev), at + ": alpha^2/gamma increased");
  const double lhs = gp * a * a, rhs = (1 - a) * ap * ap * g + mu * a * g * gp;
  tally.expect(std::abs(lhs - rhs) <= 1e-10 * std::max(std::abs(lhs), std::abs(rhs)),
               at + ": alpha equation residual");
  tally.expect(g == eff.gamma0 * std::pow(eff.delta, step.n_t), at + ": gamma not gamma0 delta^n");

  if (step.n_t == 0) return;
  // The previous candidate must fail the sufficient-decrease test.
  const double gc = eff.gamma0 * std::pow(eff.delta, step.n_t - 1);
  const double ac = solve_alpha(gp, gc, ap, mu);
  const double bc = mu * gc / ac;
  const Vec y = ((1 - ac) * before.x + ac * (1 - bc) * before.z) / (1 - ac * bc);
  const Vec gy = problem.smooth.gradient(y);
  const double s = gc / ac;
  const Vec zc = problem.nonsmooth.prox(s, bc * y + (1 - bc) * before.z - s * gy);
  const Vec xc = (1 - ac) * before.x + ac * zc;
  const bool accepted =
      problem.smooth.bregman
          ? sufficient_decrease_exact(gc, problem.smooth.bregman(xc, y), xc, y)
          : sufficient_decrease(gc, problem.smooth.value(xc), problem.smooth.value(y), gy, xc, y);
  tally.expect(!accepted, at + ": smaller backtrack count would have been accepted");
}

// ------------------------------------------------------------- certificates

Vec recompute_witness(const CompositeProblem& p, const Certificate& c) {
  return (c.x_pre - c.x_tilde) / c.gamma_tilde + p.smooth.gradient(c.x_tilde) -
         p.smooth.gradient(c.x_pre);
}

void check_certificate(Tally& tally, const std::string& at, const CompositeProblem& p,
                       const Certificate& c) {
  const Vec u = recompute_witness(p, c);
  tally.expect((u - c.witness).norm() <= 1e-12, at + ": witness not recomputable");
  tally.expect(std::abs(u.norm() - c.residual) <= 1e-12, at + ": residual is not |u|");
  const Vec xt = p.nonsmooth.prox(c.gamma_tilde, c.x_pre - c.gamma_tilde * p.smooth.gradient(c.x_pre));
  tally.expect((xt - c.x_tilde).norm() <= 1e-12, at + ": x_tilde not recomputable");
}

// -------------------------------------------- suite 1 run, shared by 2 and 9

struct Suite1 {
  Tally soundness, invariants, accounting;
  int apg_runs = 0, ppa_runs = 0;
  long steps = 0;
};

void account_apg_trace(Tally& tally, const std::string& where, const ApgCertifiedResult& r) {
  std::int64_t g_prev = 0, p_prev = 0;
  std::size_t ci = 0;
  for (const auto& row : r.trace.rows) {
    std::int64_t eg = 0, ep = 0;
    if (row.cert_residual) {
      if (ci >= r.checks.size()) {
        tally.expect(false, where + ": certificate row without a check");
        return;
      }
      eg = 2;  // gradient at the check point and at x_tilde
      ep = r.checks[ci++].n_tilde + 1;
    }
    const std::string at = where + " t=" + std::to_string(row.t);
    tally.expect(row.grad_evals - g_prev == row.n_t + 1 + eg, at + ": gradient count");
    tally.expect(row.prox_evals - p_prev == row.n_t + 1 + ep, at + ": prox count");
    g_prev = row.grad_evals;
    p_prev = row.prox_evals;
  }
  tally.expect(ci == r.checks.size(), where + ": unmatched certificate checks");
  tally.expect(r.trace.counters.grad_f_evals == g_prev && r.trace.counters.prox_evals == p_prev,
               where + ": totals differ from last row");
}

Suite1 run_suite1() {
  Suite1 s;
  const double mus[] = {0.0, 0.1, 1.0};
  for (int i = 0; i < 50; ++i) {
    const double mu = mus[i % 3];
    const RandomCase c = random_case(i, mu);
    const CompositeProblem& p = c.problem;
    const Vec x0 = default_init(p);

    if (mu > 0) {
      ++s.apg_runs;
      ApgParams params;
      params.epsilon = 1e-6;
      const ApgParams eff = normalize_params(params, mu);
      const ApgCertifiedResult r = apg_terminating(
          p, params, x0, [&](const ApgState& before, const StepReport& step, const ApgState&) {
            ++s.steps;
            check_step(s.invariants, c.label, p, eff, before, step);
          });
      s.soundness.expect(r.status == Status::Converged, c.label + ": did not converge");
      for (const auto& ch : r.checks)
        check_certificate(s.soundness, c.label + " check t=" + std::to_string(ch.t), p, ch.certificate);
      if (c.smooth_only)
        s.soundness.expect(std::abs(r.certificate.residual - p.smooth.gradient(r.x_tilde).norm()) <= 1e-10,
                           c.label + ": residual differs from |grad f|");
      s.soundness.expect(r.certificate.residual <= params.epsilon, c.label + ": residual above epsilon");
      account_apg_trace(s.accounting, c.label, r);
    } else {
      ++s.ppa_runs;
      OuterParams params;
      params.epsilon = 1e-5;
      const PpaResult r = ppa_unconstrained(
          p, params, x0,
          [&](int k, const CompositeProblem& sub, const ApgParams& eff, const ApgState& before,
              const StepReport& step, const ApgState&) {
            ++s.steps;
            check_step(s.invariants, c.label + " k=" + std::to_string(k), sub, eff, before, step);
          });
      s.soundness.expect(r.status == Status::Converged, c.label + ": did not converge");
      const CompositeProblem sub = build_ppa_subproblem(p, r.x_prev, r.rho);
      check_certificate(s.soundness, c.label + " inner", sub, r.inner_certificate);
      const Vec w = recompute_witness(sub, r.inner_certificate) - (r.x - r.x_prev) / r.rho;
      s.soundness.expect((w - r.witness).norm() <= 1e-12, c.label + ": outer witness not recomputable");
      if (c.smooth_only)
        s.soundness.expect(std::abs(r.witness_norm - p.smooth.gradient(r.x).norm()) <= 1e-10,
                           c.label + ": residual differs from |grad f|");
      s.soundness.expect(r.witness_norm <= r.residual_bound && r.residual_bound <= params.epsilon,
                         c.label + ": residual above epsilon");
      // outer rows accumulate the inner counts exactly
      std::int64_t g = 0, q = 0;
      for (const auto& row : r.trace) {
        g += row.inner_grad_evals;
        q += row.inner_prox_evals;
        s.accounting.expect(row.grad_evals == g && row.prox_evals == q,
                            c.label + " k=" + std::to_string(row.k) + ": outer accounting");
      }
    }
  }
  return s;
}

// ------------------------------------------------------------------ suites

Verdict criterion3() {
  Tally tally;
  const double mus[] = {0.01, 0.1, 1.0};
  for (int i = 0; i < 10; ++i) {
    const RandomCase c = random_case(100 + i, mus[i % 3]);
    const CompositeProblem& p = c.problem;
    const Vec x1 = default_init(p);
    const ReferenceSolution ref = reference_solve(p, 1e-10);
    const double F_hat = composite_value(p, ref.x);

    ApgParams params;
    params.epsilon = 1e-9;
    const ApgCertifiedResult r = apg_terminating(p, params, x1);
    const ApgParams& eff = r.params;
    const double F1 = r.trace.F_initial;
    const double base = F1 - F_hat + eff.alpha0 * eff.alpha0 / (2 * eff.gamma0) * (x1 - ref.x).squaredNorm();
    const double slack = 1e-9 * (1 + std::abs(F1));
    for (const auto& row : r.trace.rows)
      tally.expect(row.F - F_hat <= row.lambda_prod * base + slack,
                   c.label + " t=" + std::to_string(row.t) + ": above the envelope");
  }
  return tally.verdict("10 problems, reference residual <= 1e-10");
}

QuarticSpec scaling_spec(double mu, int k_terms) {
  QuarticSpec spec;
  spec.n = 50;
  spec.k_terms = k_terms;
  spec.seed = 2024;
  spec.mu_add = mu;
  return spec;
}

Verdict criterion4() {
  const CompositeProblem p = gen_quartic(scaling_spec(1.0, 50));
  const Vec x0 = default_init(p);
  std::int64_t evals[2];
  const double eps[2] = {1e-4, 1e-8};
  for (int i = 0; i < 2; ++i) {
    ApgParams params;
    params.epsilon = eps[i];
    const ApgCertifiedResult r = apg_terminating(p, params, x0);
    if (r.status != Status::Converged) return {false, fmt("no certificate at eps=%g", eps[i])};
    evals[i] = r.trace.counters.grad_f_evals;
  }
  const double ratio = double(evals[1]) / double(evals[0]);
  std::ostringstream os;
  os << "grad evals " << evals[0] << " @1e-4, " << evals[1] << " @1e-8, ratio " << fmt("%.3f", ratio)
     << " (limit 3)";
  return {ratio <= 3.0, os.str()};
}

Verdict criterion5() {
  const CompositeProblem p = gen_quartic(scaling_spec(0.0, 50));
  const Vec x0 = default_init(p);
  std::int64_t evals[2];
  const double eps[2] = {1e-2, 1e-4};
  for (int i = 0; i < 2; ++i) {
    OuterParams params;
    params.epsilon = eps[i];
    const PpaResult r = ppa_unconstrained(p, params, x0);
    if (r.status != Status::Converged) return {false, fmt("no certificate at eps=%g", eps[i])};
    evals[i] = r.counters.grad_f_evals;
  }
  const double ratio = double(evals[1]) / double(evals[0]);
  std::ostringstream os;
  os << "grad evals " << evals[0] << " @1e-2, " << evals[1] << " @1e-4, ratio " << fmt("%.3f", ratio)
     << " (band [2.5, 40])";
  return {ratio >= 2.5 && ratio <= 40.0, os.str()};
}

// Re-derives every KKT quantity from the stored pair and certificate.
void validate_kkt(Tally& tally, const std::string& at, const ConicProblem& conic,
                  const ProxAlResult& r, double eps) {
  tally.expect(r.status == Status::Converged, at + ": did not converge");
  const CompositeProblem sub = build_al_subproblem(conic, r.x_prev, r.lambda_prev, r.rho);
  check_certificate(tally, at + " inner", sub, r.inner_certificate);
  const Vec s = recompute_witness(sub, r.inner_certificate) - (r.x - r.x_prev) / r.rho;
  tally.expect((s - r.kkt.stationarity_witness).norm() <= 1e-12 * (1 + s.norm()),
               at + ": stationarity witness not recomputable");
  const int m = conic.constraint.m;
  if (m > 0) {
    const Vec w = (r.lambda_prev + r.rho * conic.constraint.value(r.x) - r.lambda) / r.rho;
    tally.expect((w - r.kkt.complementarity_witness).norm() <= 1e-12 * (1 + w.norm()),
                 at + ": complementarity witness not recomputable");
    const NormalConeGap gap = normal_cone_gap(conic.cone, r.lambda, w);
    const double lim = 1e-9 * (1 + w.norm());
    tally.expect(gap.membership_defect <= lim && gap.complementarity_defect <= lim,
                 at + ": witness defects");
    tally.expect(in_dual_cone(conic.cone, r.lambda), at + ": multiplier outside the dual cone");
    // distance from g(x) to the normal cone, attained at w
    const double dist = (conic.constraint.value(r.x) - w).norm();
    tally.expect(std::abs(dist - r.kkt.complementarity_residual) <= 1e-12 * (1 + dist),
                 at + ": complementarity residual is not |g(x) - w|");
    const double step = (r.lambda - r.lambda_prev).norm() / r.rho;
    tally.expect(std::abs(step - r.kkt.complementarity_residual) <= 1e-12 * (1 + step),
                 at + ": complementarity residual is not the multiplier step");
  }
  tally.expect(std::abs(s.norm() - r.kkt.stationarity_residual) <= 1e-12 * (1 + s.norm()),
               at + ": stationarity residual is not |s|");
  tally.expect(r.kkt.stationarity_residual <= eps, at + ": stationarity above epsilon");
  tally.expect(r.kkt.complementarity_residual <= eps, at + ": complementarity above epsilon");
}

Verdict criterion6() {
  Tally tally;
  const double eps = 1e-4;
  OuterParams params;
  params.epsilon = eps;
  {
    const ConicProblem c = named_conic("kkt-1d");
    const ProxAlResult r = prox_al(c, params, Vec::Zero(1), Vec::Zero(1));
    validate_kkt(tally, "kkt-1d", c, r, eps);
    tally.expect(std::abs(r.x[0] - 1) <= 1e-3 && std::abs(r.lambda[0] - 2) <= 1e-3,
                 "kkt-1d: far from (1, 2)");
  }
  {
    const ConicProblem c = named_conic("eq-qp");
    const ProxAlResult r = prox_al(c, params, Vec::Zero(2), Vec::Zero(1));
    validate_kkt(tally, "eq-qp", c, r, eps);
    tally.expect((r.x - Vec::Constant(2, 0.5)).norm() <= 1e-3 && std::abs(r.lambda[0] + 0.5) <= 1e-3,
                 "eq-qp: far from ((0.5, 0.5), -0.5)");
  }
  for (int i = 0; i < 20; ++i) {
    ConstrainedSpec spec;
    spec.base.n = 4 + (i * 5) % 27;
    spec.base.k_terms = spec.base.n;
    spec.base.seed = 500 + static_cast<std::uint64_t>(i);
    spec.base.mu_add = (i % 2) ? 0.1 : 0.0;
    spec.base.prox = mixed_prox(i, spec.base.n);
    spec.m1 = 1 + (i * 3) % 10;
    spec.m2 = i % 6;
    spec.seed = 900 + static_cast<std::uint64_t>(i);
    const GeneratedConic gen = gen_constrained(spec);
    const ProxAlResult r =
        prox_al(gen.problem, params, gen.x_feasible, Vec::Zero(gen.problem.constraint.m));
    validate_kkt(tally, "constrained#" + std::to_string(i), gen.problem, r, eps);
  }
  return tally.verdict("2 handcrafted + 20 random constrained quartics at eps=1e-4");
}

Verdict criterion7() {
  Tally tally;
  const std::vector<std::pair<std::string, ConeSpec>> mixes = {
      {"orthant", {{{ConeKind::NonnegOrthant, 5}}}},
      {"zero", {{{ConeKind::ZeroCone, 4}}}},
      {"soc", {{{ConeKind::SecondOrder, 4}}}},
      {"orthant+zero+soc", {{{ConeKind::NonnegOrthant, 3}, {ConeKind::ZeroCone, 2}, {ConeKind::SecondOrder, 4}}}},
      {"soc+orthant+soc", {{{ConeKind::SecondOrder, 2}, {ConeKind::NonnegOrthant, 2}, {ConeKind::SecondOrder, 6}}}},
  };
  UniformStream rng(77);
  for (const auto& [name, cone] : mixes) {
    const int m = cone.total_size();
    for (int draw = 0; draw < 1000; ++draw) {
      const double scale = std::pow(10.0, rng.next(-3, 3));
      const Vec u = scale * rng.vector(m, -1, 1);
      const Vec v = scale * rng.vector(m, -1, 1);
      const Vec pp = project_polar(cone, u), pd = project_dual(cone, u);
      const std::string at = name + " draw " + std::to_string(draw);
      tally.expect((pp + pd - u).norm() <= 1e-12 * (1 + u.norm()), at + ": Moreau identity");
      tally.expect(std::abs(pp.dot(pd)) <= 1e-10 * (1 + u.squaredNorm()), at + ": orthogonality");
      tally.expect((project_polar(cone, pp) - pp).norm() <= 1e-12 * (1 + u.norm()), at + ": idempotence");
      tally.expect((project_dual(cone, pd) - pd).norm() <= 1e-12 * (1 + u.norm()), at + ": dual idempotence");
      const double d = (u - v).norm();
      tally.expect((pp - project_polar(cone, v)).norm() <= d * (1 + 1e-12) + 1e-15, at + ": polar expansive");
      tally.expect((pd - project_dual(cone, v)).norm() <= d * (1 + 1e-12) + 1e-15, at + ": dual expansive");
      tally.expect(in_dual_cone(cone, pd, 1e-12 * (1 + u.norm())), at + ": dual projection not in K*");
      tally.expect(std::abs(dist_polar(cone, u) - pd.norm()) <= 1e-12 * (1 + u.norm()), at + ": dist");
    }
  }
  // prox kernel: nonexpansiveness for every kind, gamma-independence for indicators
  const int n = 6;
  const std::vector<ProxKind> kinds = {
      prox_kind::Zero{}, prox_kind::L1{0.3}, prox_kind::Box{Vec::Constant(n, -0.5), Vec::Constant(n, 1.0)},
      prox_kind::NonnegOrthant{}, prox_kind::SquaredL2{2.0, Vec::Constant(n, 0.1)}};
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    for (int draw = 0; draw < 1000; ++draw) {
      const Vec u = rng.vector(n, -3, 3), v = rng.vector(n, -3, 3);
      const double g = rng.next(1e-3, 10), g2 = rng.next(1e-3, 10);
      const std::string at = "prox kind " + std::to_string(k) + " draw " + std::to_string(draw);
      tally.expect((prox(kinds[k], g, u) - prox(kinds[k], g, v)).norm() <= (u - v).norm() * (1 + 1e-12),
                   at + ": prox expansive");
      if (k == 2 || k == 3) tally.expect(prox(kinds[k], g, u) == prox(kinds[k], g2, u), at + ": gamma dependence");
    }
  }
  return tally.verdict("5 cone mixes x 1000 draws, 5 prox kinds x 1000 draws");
}

Verdict criterion8() {
  Tally tally;
  UniformStream rng(8);
  const double h = 1e-5;
  for (int i = 0; i < 6; ++i) {
    QuarticSpec spec;
    spec.n = 1 + i * 10;
    spec.k_terms = spec.n + 3;
    spec.seed = 300 + static_cast<std::uint64_t>(i);
    spec.mu_add = 0.2 * (i % 3);
    const CompositeProblem p = gen_quartic(spec);
    for (int j = 0; j < 100; ++j) {
      const double err = check_gradient(p.smooth, rng.vector(spec.n, -1, 1), h);
      tally.expect(err <= 1e-5, "quartic#" + std::to_string(i) + fmt(": fd error %.3g", err));
    }
  }

  std::vector<std::pair<std::string, ConicProblem>> conics = {{"kkt-1d", named_conic("kkt-1d")},
                                                              {"eq-qp", named_conic("eq-qp")}};
  for (int i = 0; i < 3; ++i) {
    ConstrainedSpec spec;
    spec.base.n = 5 + 5 * i;
    spec.base.k_terms = spec.base.n;
    spec.base.seed = 40 + static_cast<std::uint64_t>(i);
    spec.m1 = 3 + i;
    spec.m2 = 2;
    spec.seed = 60 + static_cast<std::uint64_t>(i);
    conics.emplace_back("constrained#" + std::to_string(i), gen_constrained(spec).problem);
  }
  for (const auto& [name, conic] : conics) {
    const int n = conic.base.dim(), m = conic.constraint.m;
    for (int j = 0; j < 100; ++j) {
      const Vec xk = rng.vector(n, -1, 1);
      const Vec lk = project_dual(conic.cone, rng.vector(m, -2, 2));
      const double rho = std::pow(10.0, rng.next(-1, 2));
      const CompositeProblem sub = build_al_subproblem(conic, xk, lk, rho);
      const double err = check_gradient(sub.smooth, rng.vector(n, -1, 1), h);
      tally.expect(err <= 1e-5, name + fmt(": AL subproblem fd error %.3g", err));
    }
  }
  return tally.verdict("6 generated quartics + 5 AL subproblem families, 100 points each");
}

void report(int id, const char* name, const std::function<Verdict()>& run, int& failures) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = run();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!v.pass) ++failures;
  std::printf("criterion %d %-28s %s  %s [%.1fs]\n", id, name, v.pass ? "PASS" : "FAIL", v.detail.c_str(),
              secs);
  std::fflush(stdout);
}

}  // namespace

int main() {
  int failures = 0;
  Suite1 s1;
  double s1_secs = 0;
  {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      s1 = run_suite1();
    } catch (const std::exception& e) {
      s1.soundness.expect(false, std::string("exception: ") + e.what());
    }
    s1_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  const std::string runs = std::to_string(s1.apg_runs) + " certified APG + " + std::to_string(s1.ppa_runs) +
                           " proximal-point runs";
  report(1, "(certificate soundness)", [&] { return s1.soundness.verdict(runs + fmt(", %.1fs shared", s1_secs)); },
         failures);
  report(2, "(trajectory invariants)",
         [&] { return s1.invariants.verdict(std::to_string(s1.steps) + " accepted steps from suite 1"); }, failures);
  report(3, "(descent envelope)", criterion3, failures);
  report(4, "(linear-rate scaling)", criterion4, failures);
  report(5, "(sublinear scaling)", criterion5, failures);
  report(6, "(KKT certification)", criterion6, failures);
  report(7, "(cone/prox kernel)", criterion7, failures);
  report(8, "(gradient oracles)", criterion8, failures);
  report(9, "(operation accounting)",
         [&] {
           return s1.accounting.verdict(
               "per step grad = prox = n_t+1; check rows add 2 grad (check point, x_tilde) and n~+1 prox");
         },
         failures);
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
