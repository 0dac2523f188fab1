#include "apgal/problems.hpp"

#include "apgal/apg.hpp"
#include "apgal/outer.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace apgal {

UniformStream::UniformStream(std::uint64_t seed) : engine_(seed) {}

double UniformStream::next(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Vec UniformStream::vector(Eigen::Index n, double lo, double hi) {
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = next(lo, hi);
  return v;
}

QuarticData draw_quartic(const QuarticSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("quartic: n must be >= 1");
  if (spec.k_terms < 0) throw std::invalid_argument("quartic: k_terms must be >= 0");
  if (!(spec.mu_add >= 0.0)) throw std::invalid_argument("quartic: mu_add must be >= 0");
  UniformStream rng(spec.seed);
  QuarticData d;
  d.A.resize(spec.k_terms, spec.n);
  for (int j = 0; j < spec.k_terms; ++j)
    for (int i = 0; i < spec.n; ++i) d.A(j, i) = rng.next(-1.0, 1.0);
  d.b = rng.vector(spec.k_terms, -1.0, 1.0);
  d.c = rng.vector(spec.k_terms, 0.5, 1.5);
  d.mu_add = spec.mu_add;
  return d;
}

CompositeProblem quartic_problem(const QuarticData& data, const ProxKind& prox) {
  const int n = static_cast<int>(data.A.cols());
  if (data.b.size() != data.A.rows() || data.c.size() != data.A.rows())
    throw std::invalid_argument("quartic: atom data sizes disagree");
  if ((data.c.array() <= 0.0).any()) throw std::invalid_argument("quartic: weights must be > 0");

  CompositeProblem p;
  p.smooth.dim = n;
  p.smooth.value = [data](const Vec& x) {
    const Vec r = data.A * x - data.b;
    return 0.25 * data.c.dot(r.array().square().square().matrix()) +
           0.5 * data.mu_add * x.squaredNorm();
  };
  p.smooth.gradient = [data](const Vec& x) -> Vec {
    const Vec r = data.A * x - data.b;
    const Vec w = (data.c.array() * r.array().cube()).matrix();
    return data.A.transpose() * w + data.mu_add * x;
  };
  p.smooth.bregman = [data](const Vec& x, const Vec& y) {
    // (r + s)^4 - r^4 - 4 r^3 s = s^2 ((2r + s)^2 + 2 r^2)
    const Eigen::ArrayXd r = (data.A * y - data.b).array();
    const Eigen::ArrayXd s = (data.A * (x - y)).array();
    const Eigen::ArrayXd atom = s.square() * ((2.0 * r + s).square() + 2.0 * r.square());
    return 0.25 * data.c.dot(atom.matrix()) + 0.5 * data.mu_add * (x - y).squaredNorm();
  };
  p.nonsmooth = make_prox_term(prox, n);
  p.mu = data.mu_add;
  return p;
}

CompositeProblem gen_quartic(const QuarticSpec& spec) {
  return quartic_problem(draw_quartic(spec), spec.prox);
}

ConstraintMap affine_constraint(const AffineConstraintData& data) {
  const Eigen::Index n = data.B.rows() > 0 ? data.B.cols() : data.C.cols();
  const Eigen::Index m1 = data.B.rows();
  const Eigen::Index m2 = data.C.rows();
  if (data.d.size() != m1 || data.e.size() != m2)
    throw std::invalid_argument("affine constraint: right-hand side sizes disagree");
  if (m1 > 0 && m2 > 0 && data.B.cols() != data.C.cols())
    throw std::invalid_argument("affine constraint: B and C have different column counts");

  ConstraintMap g;
  g.n = static_cast<int>(n);
  g.m = static_cast<int>(m1 + m2);
  g.value = [data, m1, m2](const Vec& x) -> Vec {
    Vec out(m1 + m2);
    if (m1 > 0) out.head(m1) = data.B * x - data.d;
    if (m2 > 0) out.tail(m2) = data.C * x - data.e;
    return out;
  };
  g.affine = true;
  g.adjoint_apply = [data, m1, m2, n](const Vec&, const Vec& v) -> Vec {
    Vec out = Vec::Zero(n);
    if (m1 > 0) out += data.B.transpose() * v.head(m1);
    if (m2 > 0) out += data.C.transpose() * v.tail(m2);
    return out;
  };
  return g;
}

namespace {

ConeSpec orthant_zero_cone(int m1, int m2) {
  ConeSpec cone;
  if (m1 > 0) cone.blocks.push_back({ConeKind::NonnegOrthant, m1});
  if (m2 > 0) cone.blocks.push_back({ConeKind::ZeroCone, m2});
  return cone;
}

}  // namespace

GeneratedConic gen_constrained(const ConstrainedSpec& spec) {
  if (spec.m1 < 0 || spec.m2 < 0) throw std::invalid_argument("constrained: m1, m2 must be >= 0");
  const int n = spec.base.n;
  GeneratedConic out;
  out.problem.base = gen_quartic(spec.base);

  UniformStream rng(spec.seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    AffineConstraintData data;
    data.B.resize(spec.m1, n);
    data.C.resize(spec.m2, n);
    for (int j = 0; j < spec.m1; ++j)
      for (int i = 0; i < n; ++i) data.B(j, i) = rng.next(-1.0, 1.0);
    for (int j = 0; j < spec.m2; ++j)
      for (int i = 0; i < n; ++i) data.C(j, i) = rng.next(-1.0, 1.0);
    const Vec x = prox(spec.base.prox, 1.0, rng.vector(n, -1.0, 1.0));
    const Vec slack = rng.vector(spec.m1, 0.1, 1.0);
    data.d = data.B * x + slack;
    data.e = data.C * x;

    const bool strict = spec.m1 == 0 || ((data.B * x - data.d).array() < 0.0).all();
    const bool equal = spec.m2 == 0 || (data.C * x - data.e).cwiseAbs().maxCoeff() <= 1e-12;
    if (!strict || !equal || !std::isfinite(out.problem.base.nonsmooth.value(x))) continue;

    out.problem.constraint = affine_constraint(data);
    out.problem.constraint.n = n;
    out.problem.cone = orthant_zero_cone(spec.m1, spec.m2);
    out.data = std::move(data);
    out.x_feasible = x;
    out.problem.validate();
    return out;
  }
  throw std::runtime_error("gen_constrained: no strictly feasible draw after 100 attempts");
}

std::vector<std::string> named_instances() {
  return {"quadratic-1d", "quartic-1d", "kkt-1d", "eq-qp"};
}

bool is_constrained_instance(const std::string& name) {
  return name == "kkt-1d" || name == "eq-qp";
}

namespace {

CompositeProblem power_1d(int power, double coef, double mu) {
  CompositeProblem p;
  p.smooth.dim = 1;
  p.smooth.value = [power, coef](const Vec& x) { return coef * std::pow(x[0], power); };
  p.smooth.gradient = [power, coef](const Vec& x) -> Vec {
    return Vec::Constant(1, coef * power * std::pow(x[0], power - 1));
  };
  if (power == 2 || power == 4) {
    p.smooth.bregman = [power, coef](const Vec& x, const Vec& y) {
      const double r = y[0], s = x[0] - y[0];
      return power == 2 ? coef * s * s : coef * s * s * ((2 * r + s) * (2 * r + s) + 2 * r * r);
    };
  }
  p.nonsmooth = make_prox_term(prox_kind::Zero{}, 1);
  p.mu = mu;
  return p;
}

CompositeProblem half_squared_norm(int n) {
  CompositeProblem p;
  p.smooth.dim = n;
  p.smooth.value = [](const Vec& x) { return 0.5 * x.squaredNorm(); };
  p.smooth.gradient = [](const Vec& x) -> Vec { return x; };
  p.smooth.bregman = [](const Vec& x, const Vec& y) { return 0.5 * (x - y).squaredNorm(); };
  p.nonsmooth = make_prox_term(prox_kind::Zero{}, n);
  p.mu = 1.0;
  return p;
}

}  // namespace

CompositeProblem named_composite(const std::string& name) {
  if (name == "quadratic-1d") return half_squared_norm(1);
  if (name == "quartic-1d") return power_1d(4, 0.25, 0.0);
  if (is_constrained_instance(name)) return named_conic(name).base;
  throw std::invalid_argument("unknown named instance '" + name + "'");
}

ConicProblem named_conic(const std::string& name) {
  ConicProblem c;
  AffineConstraintData data;
  if (name == "kkt-1d") {
    c.base = power_1d(2, 1.0, 2.0);
    data.B = Eigen::MatrixXd::Constant(1, 1, -1.0);
    data.d = Vec::Constant(1, -1.0);
    data.C.resize(0, 1);
    data.e.resize(0);
    c.cone = orthant_zero_cone(1, 0);
  } else if (name == "eq-qp") {
    c.base = half_squared_norm(2);
    data.B.resize(0, 2);
    data.d.resize(0);
    data.C = Eigen::MatrixXd::Ones(1, 2);
    data.e = Vec::Ones(1);
    c.cone = orthant_zero_cone(0, 1);
  } else if (name == "quadratic-1d" || name == "quartic-1d") {
    c.base = named_composite(name);
    c.constraint.n = 1;
    c.constraint.m = 0;
    return c;
  } else {
    throw std::invalid_argument("unknown named instance '" + name + "'");
  }
  c.constraint = affine_constraint(data);
  c.validate();
  return c;
}

ReferenceSolution reference_solve(const CompositeProblem& problem, double tol, const Vec& init) {
  if (!(tol >= 1e-12)) throw std::invalid_argument("reference_solve: tol must be >= 1e-12");
  ReferenceSolution ref;
  if (problem.mu > 0.0) {
    ApgParams p;
    p.epsilon = tol;
    p.max_iters = 5'000'000;
    const ApgCertifiedResult r = apg_terminating(problem, p, init);
    ref.x = r.x_tilde;
    ref.residual = r.certificate.residual;
  } else {
    OuterParams p;
    p.epsilon = tol;
    p.max_outer = 200;
    const PpaResult r = ppa_unconstrained(problem, p, init);
    ref.x = r.x;
    ref.residual = r.witness_norm;
    if (r.status != Status::Converged) ref.residual = kInf;
  }
  if (!(ref.residual <= tol)) {
    std::ostringstream os;
    os << "reference_solve: budget exhausted before reaching residual " << tol;
    throw std::runtime_error(os.str());
  }
  return ref;
}

ReferenceSolution reference_solve(const CompositeProblem& problem, double tol) {
  const Vec init = problem.nonsmooth.prox(1.0, Vec::Zero(problem.dim()));
  return reference_solve(problem, tol, init);
}

}  // namespace apgal
