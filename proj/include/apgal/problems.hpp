#pragma once

#include "apgal/model.hpp"
#include "apgal/proxcone.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace apgal {

/// f(x) = sum_j c_j (<a_j, x> - b_j)^4 / 4 + mu_add/2 |x|^2. Coefficients are
/// drawn from a seeded 64-bit Mersenne twister with c_j in [0.5, 1.5] and
/// entries of a_j, b_j in [-1, 1].
struct QuarticSpec {
  int n = 1;
  int k_terms = 1;
  std::uint64_t seed = 0;
  double mu_add = 0.0;
  ProxKind prox = prox_kind::Zero{};
};

/// Inequality rows B x <= d and equality rows C x = e, i.e.
/// g(x) = (B x - d; C x - e) and K = R_+^{m1} x {0}^{m2}.
struct ConstrainedSpec {
  QuarticSpec base;
  int m1 = 0;
  int m2 = 0;
  std::uint64_t seed = 0;
};

/// Explicit quartic data. Rows of A are the atoms a_j.
struct QuarticData {
  Eigen::MatrixXd A;
  Vec b;
  Vec c;
  double mu_add = 0.0;
};

struct AffineConstraintData {
  Eigen::MatrixXd B;
  Vec d;
  Eigen::MatrixXd C;
  Vec e;
};

struct GeneratedConic {
  ConicProblem problem;
  AffineConstraintData data;
  Vec x_feasible;
};

/// Deterministic draw of the quartic coefficients for `spec`.
QuarticData draw_quartic(const QuarticSpec& spec);

CompositeProblem quartic_problem(const QuarticData& data, const ProxKind& prox);
CompositeProblem gen_quartic(const QuarticSpec& spec);

/// Affine g(x) = (B x - d; C x - e) as a matrix-free constraint map.
ConstraintMap affine_constraint(const AffineConstraintData& data);

/// Draws B, C and a point x_feas in dom(P), then sets d = B x_feas + slack
/// (slack in [0.1, 1]) and e = C x_feas. Throws std::runtime_error if no
/// strictly feasible draw is found in 100 attempts.
GeneratedConic gen_constrained(const ConstrainedSpec& spec);

/// Named hand-built instances:
///   "quadratic-1d"  f = x^2/2, P = 0
///   "quartic-1d"    f = x^4/4, P = 0
///   "kkt-1d"        min x^2 s.t. 1 - x <= 0      (x*, lambda*) = (1, 2)
///   "eq-qp"         min |x|^2/2 s.t. x1 + x2 = 1  (x*, lambda*) = ((.5,.5), -.5)
std::vector<std::string> named_instances();
bool is_constrained_instance(const std::string& name);
CompositeProblem named_composite(const std::string& name);
ConicProblem named_conic(const std::string& name);

struct ReferenceSolution {
  Vec x;
  double residual = kInf;
};

/// High-accuracy solve used as an F* proxy in tests: the certified solver
/// for mu > 0, the proximal-point wrapper for mu = 0. Throws
/// std::runtime_error if the certified residual does not reach `tol`.
ReferenceSolution reference_solve(const CompositeProblem& problem, double tol, const Vec& init);
ReferenceSolution reference_solve(const CompositeProblem& problem, double tol);

/// Uniform draws in [lo, hi) from the top 53 bits of std::mt19937_64, whose
/// output sequence is fixed by the standard (unlike the distributions).
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed);
  double next(double lo, double hi);
  Vec vector(Eigen::Index n, double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace apgal
