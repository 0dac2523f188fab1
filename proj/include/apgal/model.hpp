#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace apgal {

using Vec = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Raised when a backtracking search exhausts its budget. In practice this
/// means the smooth part is not convex, its gradient is inconsistent with its
/// value, or the iterates left every region where the gradient is Lipschitz.
class LineSearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A broken internal invariant (should be unreachable for valid input).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Smooth convex part f with its gradient. Must be a pure function of x.
struct SmoothOracle {
  int dim = 0;
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  /// Optional. bregman(x, y) = f(x) - f(y) - <grad f(y), x - y>, evaluated
  /// without subtracting nearly equal values. The line search falls back to
  /// value differences when it is absent.
  std::function<double(const Vec&, const Vec&)> bregman;
};

/// Prox-friendly part P. `value` returns +inf outside dom(P); `prox(gamma, z)`
/// returns argmin_x gamma*P(x) + 0.5*|x - z|^2.
struct ProxTerm {
  int dim = 0;
  std::function<double(const Vec&)> value;
  std::function<Vec(double, const Vec&)> prox;
};

/// min f(x) + P(x), with mu the strong convexity modulus of f on dom(P).
struct CompositeProblem {
  SmoothOracle smooth;
  ProxTerm nonsmooth;
  double mu = 0.0;

  int dim() const { return smooth.dim; }
  /// Throws std::invalid_argument on dimension mismatch or mu < 0.
  void validate() const;
};

/// Constraint map g: R^n -> R^m. `adjoint_apply(x, v)` computes the
/// transposed Jacobian product grad g(x) * v without forming the Jacobian.
struct ConstraintMap {
  int n = 0;
  int m = 0;
  std::function<Vec(const Vec&)> value;
  std::function<Vec(const Vec&, const Vec&)> adjoint_apply;
  bool affine = false;  // g(x) = Jx - c with constant J
};

enum class ConeKind { NonnegOrthant, ZeroCone, SecondOrder };

struct ConeBlock {
  ConeKind kind;
  int size;
};

/// Product cone K. Second-order blocks store the scalar ("t") coordinate
/// first: {(t, xbar) : |xbar| <= t}.
struct ConeSpec {
  std::vector<ConeBlock> blocks;

  int total_size() const;
  void validate() const;
};

/// min f(x) + P(x) s.t. -g(x) in K.
struct ConicProblem {
  CompositeProblem base;
  ConstraintMap constraint;
  ConeSpec cone;

  void validate() const;
};

struct OracleCounters {
  std::int64_t f_value_evals = 0;
  std::int64_t grad_f_evals = 0;
  std::int64_t prox_evals = 0;
  std::int64_t g_evals = 0;
  std::int64_t adjoint_evals = 0;
  std::int64_t cone_proj_evals = 0;

  OracleCounters& operator+=(const OracleCounters& o);
  friend OracleCounters operator-(OracleCounters a, const OracleCounters& b);
  bool operator==(const OracleCounters&) const = default;
};

/// Returns a copy of `problem` whose closures bump `counters` on every call.
/// The original oracles stay untouched; `counters` must outlive the copy.
CompositeProblem instrument(const CompositeProblem& problem,
                            OracleCounters& counters);
ConstraintMap instrument(const ConstraintMap& map, OracleCounters& counters);

/// Largest coordinate-wise discrepancy between central differences of
/// `oracle.value` and `oracle.gradient`, measured as |fd - g| / (1 + |g|).
/// Throws std::domain_error naming the coordinate if the oracle returns a
/// non-finite number.
double check_gradient(const SmoothOracle& oracle, const Vec& x, double h);

/// f(x) + P(x); +inf outside dom(P).
double composite_value(const CompositeProblem& problem, const Vec& x);

}  // namespace apgal
