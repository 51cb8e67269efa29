#include "gsep/ekeland.hpp"

#include "gsep/norms.hpp"

namespace gsep {

double Objective::operator()(const Vector& z) const {
  double v = constant + linear.dot(z);
  for (const auto& t : terms) v += t.weight * t.norm->eval(t.map * z + t.offset);
  return v;
}

bool EkelandResult::holds(double tol) const {
  return verification.decrease <= tol && verification.worst_violation <= tol && verification.distance <= lambda + tol;
}

namespace {

ConvexProgram piece_program(const ConvexPiece& piece, const Objective& f) {
  ConvexProgram prog(piece.dim);
  prog.linear = f.linear;
  prog.rows = piece.rows;
  prog.terms = f.terms;
  for (const auto& b : piece.balls) {
    const Matrix map = b.map.size() ? b.map : Matrix::Identity(piece.dim, piece.dim);
    prog.bounds.push_back({b.norm, map, -b.center, b.radius});
  }
  return prog;
}

struct Minimum {
  double value = 0.0;
  double lower = 0.0;
  Vector z;
};

// Minimum of f (+ c * metric(. - anchor) when c > 0) over the union of pieces.
// With shrink > 0 the metric weight is c * (1 - shrink), which among near-ties
// prefers points far from the anchor, i.e. with smaller f.
Minimum union_minimum(const EkelandProblem& p, const ConvexOptions& opt, double c = 0.0,
                      const Vector* anchor = nullptr, double shrink = 0.0) {
  std::optional<Minimum> best;
  double lower = std::numeric_limits<double>::infinity();
  for (const auto& piece : p.domain) {
    ConvexProgram prog = piece_program(piece, p.f);
    if (c > 0.0) prog.terms.push_back({p.metric, Matrix::Identity(piece.dim, piece.dim), -*anchor, c * (1.0 - shrink)});
    const ConvexResult r = minimize(prog, opt);
    if (r.status == ConvexStatus::infeasible) continue;
    if (r.status == ConvexStatus::unbounded) throw Error("objective is unbounded below", "premise");
    if (!r.ok()) throw Error("argmin oracle did not converge", "oracle");
    lower = std::min(lower, r.lower_bound + p.f.constant);
    if (!best || r.value + p.f.constant < best->value) best = Minimum{r.value + p.f.constant, 0.0, r.z};
  }
  if (!best) throw Error("empty domain", "premise");
  best->lower = lower;
  return *best;
}

bool in_domain(const EkelandProblem& p, const Vector& x, double tol) {
  for (const auto& piece : p.domain) {
    if (piece.contains(x, tol)) return true;
  }
  return false;
}

}  // namespace

std::pair<double, Vector> infimum(const EkelandProblem& p, const ConvexOptions& opt) {
  const Minimum m = union_minimum(p, opt);
  return {m.lower, m.z};
}

EkelandResult ekeland_descent(const EkelandProblem& p, const Vector& x0, double eps, double lambda,
                              const EkelandOptions& opt) {
  require_dim(x0.size(), p.f.dim, "Ekeland start");
  if (!(eps > 0.0) || !(lambda > 0.0)) throw Error("eps and lambda must be positive", "premise");
  if (!in_domain(p, x0, opt.tol)) throw Error("start point outside the domain", "premise");
  const double f0 = p.f(x0);
  const Minimum inf = union_minimum(p, opt.program);
  if (!(f0 - inf.lower < eps)) {
    throw Error("f(x0) < inf f + eps fails: f(x0) - inf = " + std::to_string(f0 - inf.lower), "premise");
  }

  EkelandResult out;
  out.lambda = lambda;
  out.infimum_lower = inf.lower;
  const double c = eps / lambda;
  Vector x = x0;
  double fx = f0;
  Minimum step;
  for (;;) {
    step = union_minimum(p, opt.program, c, &x);
    Vector next = step.z;
    const Minimum tie = union_minimum(p, opt.program, c, &x, 1e-4);
    if (p.f(tie.z) + c * p.metric->eval(tie.z - x) <= step.value + opt.tol) next = tie.z;
    const double move = p.metric->eval(next - x);
    // Stop when the current point is itself an argmin.
    if (move <= opt.tol || fx - p.f(next) < c * move - opt.tol) break;
    if (out.iterations >= opt.max_iterations) throw Error("iteration cap reached", "iteration_cap");
    const double fn = p.f(next);
    out.final_decrement = fx - fn;
    out.path_length += move;
    x = next;
    fx = fn;
    ++out.iterations;
  }

  out.x = x;
  out.tuple = split(x, p.block_dim > 0 ? p.block_dim : static_cast<int>(x.size()));
  auto& v = out.verification;
  v.distance = p.metric->eval(x - x0);
  v.decrease = fx - f0;
  v.worst_violation = std::max(0.0, fx - step.lower);
  v.anchored_violation = std::max(0.0, f0 - step.lower);
  v.strict_distance = v.distance <= lambda - 1e-12;
  return out;
}

EkelandProblem difference_problem(const std::vector<SetPtr>& sets, const NormPtr& norm, const NormPtr& norm_plus) {
  if (sets.size() < 2) throw Error("at least two sets are required");
  const int n = static_cast<int>(sets.size());
  const int d = sets.front()->dim();
  for (const auto& s : sets) require_dim(s->dim(), d, "set");
  require_dim(norm->dim(), (n - 1) * d, "difference norm");
  require_dim(norm_plus->dim(), n * d, "product norm");
  EkelandProblem p;
  p.f = Objective(n * d);
  Matrix M = Matrix::Zero((n - 1) * d, n * d);
  for (int i = 0; i + 1 < n; ++i) {
    M.block(i * d, i * d, d, d).setIdentity();
    M.block(i * d, (n - 1) * d, d, d) = -Matrix::Identity(d, d);
  }
  p.f.terms.push_back({norm, M, Vector::Zero((n - 1) * d), 1.0});
  p.domain = SetExpr::product(sets)->pieces();
  p.metric = norm_plus;
  p.block_dim = d;
  return p;
}

bool intersection_empty(const std::vector<SetPtr>& sets) {
  std::vector<ConvexPiece> acc = sets.front()->pieces();
  for (std::size_t i = 1; i < sets.size(); ++i) {
    std::vector<ConvexPiece> next;
    for (const auto& a : acc) {
      for (const auto& b : sets[i]->pieces()) {
        ConvexPiece c = intersect(a, b);
        if (piece_point(c)) next.push_back(std::move(c));
      }
    }
    acc = std::move(next);
    if (acc.empty()) return true;
  }
  return acc.empty();
}

GapDescentResult gap_descent_point(const std::vector<SetPtr>& sets, const std::vector<Vector>& omega, double eps_prime,
                          double delta, const NormPtr& norm, const NormPtr& norm_plus, const EkelandOptions& opt) {
  if (omega.size() != sets.size()) throw DimensionError("omega must have one block per set");
  if (!intersection_empty(sets)) throw Error("the sets intersect, so f1 vanishes somewhere", "premise");
  const EkelandProblem p = difference_problem(sets, norm, norm_plus);
  const Vector w = concat(omega);
  GapDescentResult out;
  out.ekeland = ekeland_descent(p, w, eps_prime, delta, opt);
  const Vector& x = out.ekeland.x;
  out.point = out.ekeland.tuple;
  out.f1 = p.f(x);
  out.f1_omega = p.f(w);
  const double dist = norm_plus->eval(x - w);
  out.within_delta = dist < delta;
  out.descent = out.f1 + (eps_prime / delta) * dist <= out.f1_omega + opt.tol;
  out.perturbation = out.ekeland.verification.worst_violation <= opt.tol;
  out.positive = out.f1 > 0.0;
  return out;
}

}  // namespace gsep
