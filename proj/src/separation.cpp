#include "gsep/separation.hpp"

#include "gsep/norms.hpp"

#include <cmath>

namespace gsep {

void SeparationInstance::validate() const {
  if (sets.size() < 2) throw DimensionError("at least two sets are required");
  if (omega.size() != sets.size()) throw DimensionError("omega must have one block per set");
  const int dd = d();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    require_dim(sets[i]->dim(), dd, "set");
    require_dim(omega[i].size(), dd, "omega block");
  }
  if (!inner || !plus) throw Error("both product norms are required");
  require_dim(inner->dim(), (n() - 1) * dd, "inner norm");
  require_dim(plus->dim(), n() * dd, "plus norm");
  if (base) require_dim(base->dim(), dd, "base norm");
  if (!(eps > 0.0) || !(delta > 0.0)) throw Error("eps and delta must be positive");
  if (tau && !(*tau > 0.0 && *tau < 1.0)) throw Error("tau must lie in (0, 1)");
}

Premise check_premise(const SeparationInstance& inst, const ConvexOptions& opt) {
  inst.validate();
  const EkelandProblem p = difference_problem(inst.sets, inst.inner, inst.plus);
  const Vector w = concat(inst.omega);
  Premise out;
  out.f1_omega = p.f(w);
  out.infimum = std::max(0.0, infimum(p, opt).first);
  out.gap = std::max(0.0, out.f1_omega - out.infimum);
  out.omega_in_sets = contains(*SetExpr::product(inst.sets), w);
  out.holds = out.omega_in_sets && out.gap < inst.eps;
  return out;
}

double select_eps_prime(double gap, double eps) {
  double e = gap + 0.5 * (eps - gap);
  if (0.9 * eps > gap) e = std::min(e, 0.9 * eps);
  return e;
}

bool VerificationReport::ok() const {
  for (const auto& c : checks) {
    if (!c.holds) return false;
  }
  return true;
}

std::string VerificationReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.holds) return c.label;
  }
  return {};
}

namespace {

// (u_1 - u_n, ..., u_{n-1} - u_n) as a flat vector.
Vector differences(const std::vector<Vector>& u) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) out.push_back(u[i] - u.back());
  return concat(out);
}

double dual_norm_of_sum(const std::vector<Vector>& xs, const NormPtr& base) {
  Vector s = Vector::Zero(xs.front().size());
  for (const auto& x : xs) s += x;
  return base ? base->dual(s) : s.norm();
}

double alignment(const std::vector<Vector>& x, const std::vector<Vector>& xs) {
  double a = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) a += xs[i].dot(x.back() - x[i]);
  return a;
}

Flavor default_flavor(const SeparationInstance& inst) {
  if (inst.tau) return Flavor::frechet;
  for (const auto& s : inst.sets) {
    if (!s->convex()) return Flavor::frechet;
  }
  return Flavor::clarke;
}

struct Decomposition {
  Vector v;
  double residual = 0.0;
};

// min plus*(M^T v + G lambda) over <v, c> = |c|, inner*(v) <= 1, lambda >= 0,
// where M maps a tuple to its differences and G spans the normal cone.
Decomposition decompose(const SeparationInstance& inst, const Vector& x, const Cone& normal,
                        const ConvexOptions& opt) {
  const int n = inst.n();
  const int d = inst.d();
  const int m = (n - 1) * d;
  const int k = static_cast<int>(normal.generators.size());
  Matrix Mt = Matrix::Zero(n * d, m);
  for (int i = 0; i + 1 < n; ++i) {
    Mt.block(i * d, i * d, d, d).setIdentity();
    Mt.block((n - 1) * d, i * d, d, d) = -Matrix::Identity(d, d);
  }
  const Vector c = Mt.transpose() * x;
  const double f1 = inst.inner->eval(c);

  ConvexProgram prog(m + k);
  Matrix map(n * d, m + k);
  map << Mt, normal.matrix();
  prog.terms.push_back({dual_of(inst.plus), map, Vector::Zero(n * d), 1.0});
  Vector a = Vector::Zero(m + k);
  a.head(m) = c / f1;
  prog.rows.push_back({a, 1.0});
  prog.rows.push_back({-a, -1.0});
  for (int j = 0; j < k; ++j) prog.rows.push_back({-Vector::Unit(m + k, m + j), 0.0});
  Matrix pick = Matrix::Zero(m, m + k);
  pick.leftCols(m).setIdentity();
  prog.bounds.push_back({dual_of(inst.inner), pick, Vector::Zero(m), 1.0});

  const ConvexResult r = minimize(prog, opt);
  if (!r.ok()) throw Error("decomposition program did not converge", "oracle");
  const double s = inst.inner->dual(r.z.head(m));
  Decomposition out;
  out.v = r.z.head(m) / s;
  const Vector lambda = r.z.tail(k) / s;
  out.residual = inst.plus->dual(Mt * out.v + normal.matrix() * lambda);
  return out;
}

SeparationCertificate assemble(const SeparationInstance& inst, const Vector& x, const Vector& v, Flavor flavor) {
  const int n = inst.n();
  const int d = inst.d();
  SeparationCertificate cert;
  cert.flavor = flavor;
  cert.x = split(x, d);
  Vector total = Vector::Zero(d);
  for (int i = 0; i + 1 < n; ++i) {
    cert.x_star.push_back(-v.segment(i * d, d));
    total += v.segment(i * d, d);
  }
  cert.x_star.push_back(total);
  cert.m = inst.inner->eval(-differences(cert.x));
  cert.alignment = alignment(cert.x, cert.x_star);
  cert.r_sum = dual_norm_of_sum(cert.x_star, inst.base);
  cert.r_unit = std::abs(inst.inner->dual(concat({cert.x_star.begin(), cert.x_star.end() - 1})) - 1.0);
  const auto cone = normal_cone(*SetExpr::product(inst.sets), x, flavor);
  cert.r_cone = cone_distance(concat(cert.x_star), cone.cone, *dual_of(inst.plus)).value;
  return cert;
}

}  // namespace

VerificationReport verify_certificate(const SeparationCertificate& cert, const SeparationInstance& inst,
                                      const Tolerances& tol) {
  inst.validate();
  VerificationReport rep;
  auto& c = rep.checks;
  const int n = inst.n();
  if (static_cast<int>(cert.x.size()) != n || static_cast<int>(cert.x_star.size()) != n) {
    c.push_back({"shape", 1.0, 0.0, "<=", false});
    return rep;
  }
  const Vector x = concat(cert.x);
  const Vector xs = concat(cert.x_star);
  c.push_back(at_most("sum_zero", dual_norm_of_sum(cert.x_star, inst.base), tol.report));
  c.push_back(at_most("unit_norm",
                      std::abs(inst.inner->dual(concat({cert.x_star.begin(), cert.x_star.end() - 1})) - 1.0),
                      tol.report));
  const auto product = SetExpr::product(inst.sets);
  const bool inside = contains(*product, x, tol.feasibility);
  c.push_back(at_most("in_sets", inside ? 0.0 : 1.0, 0.0));
  c.push_back(below("within_delta", inst.plus->eval(x - concat(inst.omega)), inst.delta, tol.strict_margin));
  double dist = std::numeric_limits<double>::infinity();
  if (inside) {
    try {
      dist = cone_distance(xs, normal_cone(*product, x, cert.flavor).cone, *dual_of(inst.plus)).value;
    } catch (const Error&) {
    }
  }
  c.push_back(below("cone_distance", dist, inst.eps / inst.delta, tol.strict_margin));
  const double m = inst.inner->eval(-differences(cert.x));
  const double a = alignment(cert.x, cert.x_star);
  c.push_back(above("positive_gap", m, 0.0, 0.0));
  c.push_back(at_most("alignment", std::abs(a - m), tol.report));
  if (inst.tau) {
    c.push_back(above("tau_alignment", a, *inst.tau * m, tol.strict_margin));
    if (cert.xi && cert.kappa) {
      const double room = std::max(inst.delta - inst.plus->eval(x - concat(inst.omega)),
                                   (inst.eps - cert.eps_prime) / inst.delta);
      c.push_back(below("xi_room", *cert.xi, room, 0.0));
      c.push_back(below("xi_gap", 10.0 * *cert.kappa * *cert.xi, (1.0 - *inst.tau) * m, 0.0));
    }
  }
  return rep;
}

SeparationCertificate separate(const SeparationInstance& inst, const SeparateOptions& opt) {
  inst.validate();
  const Premise pre = check_premise(inst, opt.ekeland.program);
  if (!pre.omega_in_sets) throw Error("omega is not in the product of the sets", "premise");
  if (!intersection_empty(inst.sets)) throw Error("the sets intersect", "premise");
  if (!pre.holds) {
    throw Error("premise fails: gap " + std::to_string(pre.gap) + " >= eps " + std::to_string(inst.eps), "premise");
  }
  const double eps_prime = select_eps_prime(pre.gap, inst.eps);
  // Solver tolerances follow the problem scale; small local radii otherwise
  // leave the Ekeland point too coarse for the decomposition bound.
  EkelandOptions ekeland = opt.ekeland;
  ekeland.tol = std::min(ekeland.tol, 1e-6 * eps_prime);
  ekeland.program.abs_tol = std::min(ekeland.program.abs_tol, 1e-8 * eps_prime);
  // The descent runs with a constant between gap and eps' so the decomposition
  // bound eps'/delta keeps a margin over solver error.
  const double eps_descent = eps_prime - 0.1 * (eps_prime - pre.gap);
  const Flavor flavor = default_flavor(inst);
  const Vector w = concat(inst.omega);
  const EkelandProblem whole = difference_problem(inst.sets, inst.inner, inst.plus);
  const auto product = SetExpr::product(inst.sets);

  std::optional<double> kappa;
  if (inst.tau) {
    if (!inst.base) throw Error("the tau variant needs the base norm");
    kappa = estimate_kappa(Condition::C1, {inst.base, inst.inner, inst.plus, nullptr}, opt.kappa_budget).kappa();
  }

  double best = std::numeric_limits<double>::infinity();
  std::string failure = "decomposition";
  auto attempt = [&](const EkelandProblem& p, int branch) -> std::optional<SeparationCertificate> {
    const EkelandResult ek = ekeland_descent(p, w, eps_descent, inst.delta, ekeland);
    const Vector& x = ek.x;
    const auto cone = normal_cone(*product, x, flavor);
    const Decomposition dec = decompose(inst, x, cone.cone, opt.decomposition);
    best = std::min(best, dec.residual);
    if (dec.residual > eps_prime / inst.delta + opt.tol.report) return std::nullopt;
    SeparationCertificate cert = assemble(inst, x, dec.v, flavor);
    cert.eps_prime = eps_prime;
    cert.gap = pre.gap;
    cert.decomposition_residual = dec.residual;
    cert.branch = branch;
    if (inst.tau) {
      cert.tau = inst.tau;
      cert.kappa = kappa;
      cert.xi = 0.5 * std::min({inst.delta - inst.plus->eval(x - w), (inst.eps - eps_prime) / inst.delta,
                                (1.0 - *inst.tau) * cert.m / (10.0 * *kappa)});
    }
    const auto rep = verify_certificate(cert, inst, opt.tol);
    if (!rep.ok()) {
      failure = rep.first_failure();
      return std::nullopt;
    }
    return cert;
  };

  if (auto cert = attempt(whole, -1)) return *cert;
  // Restrict the Ekeland step to single product pieces through omega.
  for (std::size_t b = 0; b < whole.domain.size(); ++b) {
    if (whole.domain.size() == 1 || !whole.domain[b].contains(w, opt.tol.feasibility)) continue;
    EkelandProblem p = whole;
    p.domain = {whole.domain[b]};
    if (auto cert = attempt(p, static_cast<int>(b))) return *cert;
  }
  throw SeparationError("no verified certificate (best residual " + std::to_string(best) + ")", failure, best);
}

namespace {

void validate_local(const LocalProblem& prob) {
  if (prob.sets.empty()) throw DimensionError("at least one set is required");
  const int d = prob.sets.front()->dim();
  const int n = static_cast<int>(prob.sets.size());
  for (const auto& s : prob.sets) require_dim(s->dim(), d, "set");
  require_dim(prob.x_bar.size(), d, "x_bar");
  if (!prob.base || !prob.norm) throw Error("base norm and product norm are required");
  require_dim(prob.base->dim(), d, "base norm");
  require_dim(prob.norm->dim(), n * d, "product norm");
  if (!(prob.rho > 0.0) || !(prob.eps > 0.0) || !(prob.delta > 0.0)) throw Error("rho, eps and delta must be positive");
  if (!prob.omega.empty() && prob.omega.size() != prob.sets.size()) throw DimensionError("omega size");
}

// Certificate quantities in the coordinates of prob (sets untranslated) with
// per-set shifts s_i; the ball is centred at x_bar when no shifts are given
// and at 0 otherwise.
void fill_local(LocalCertificate& c, const LocalProblem& prob) {
  const int n = static_cast<int>(prob.sets.size());
  const int d = prob.sets.front()->dim();
  std::vector<Vector> offsets;
  for (int i = 0; i < n; ++i) {
    const Vector s = c.shifts.empty() ? Vector(Vector::Zero(d)) : c.shifts[i];
    offsets.push_back(c.x0 + s - c.x[i]);
  }
  c.m = prob.norm->eval(concat(offsets));
  c.alignment = 0.0;
  for (int i = 0; i < n; ++i) c.alignment += c.x_star[i].dot(offsets[i]);
  c.unit = prob.norm->dual(concat(c.x_star));
  const auto cone = normal_cone(*SetExpr::product(prob.sets), concat(c.x), c.generic.flavor);
  c.mixed = prob.delta * cone_distance(concat(c.x_star), cone.cone, *dual_of(prob.norm)).value +
            c.rho * dual_norm_of_sum(c.x_star, prob.base);
}

}  // namespace

LocalCertificate separate_local(const LocalProblem& prob, const SeparateOptions& opt) {
  validate_local(prob);
  const int n = static_cast<int>(prob.sets.size());
  std::vector<Vector> omega = prob.omega;
  for (int i = 0; i < n; ++i) {
    const auto proj = project(*prob.sets[i], prob.x_bar, *prob.base);
    if (proj.lower > prob.rho) {
      throw Error("the ball around x_bar misses set " + std::to_string(i), "ball_misses_set");
    }
    if (prob.omega.empty()) omega.push_back(proj.point);
  }

  double rho = prob.rho;
  for (int retry = 0; retry <= 5; ++retry, rho *= 0.9) {
    SeparationInstance inst;
    inst.sets = prob.sets;
    inst.sets.push_back(SetExpr::ball(prob.x_bar, rho, prob.base, true));
    if (!intersection_empty(inst.sets)) {
      throw Error("the sets meet inside the closed ball", "local_emptiness");
    }
    inst.omega = omega;
    inst.omega.push_back(prob.x_bar);
    inst.base = prob.base;
    inst.inner = prob.norm;
    inst.plus = gamma_norm(prob.norm, prob.delta / rho, prob.base);
    inst.eps = prob.eps;
    inst.delta = prob.delta;
    inst.tau = prob.tau;
    SeparationCertificate cert = separate(inst, opt);
    const Vector x0 = cert.x.back();
    if (prob.base->eval(x0 - prob.x_bar) >= rho - opt.tol.strict_margin) continue;

    LocalCertificate out;
    out.generic = cert;
    out.enlarged = inst;
    out.x.assign(cert.x.begin(), cert.x.end() - 1);
    out.x_star.assign(cert.x_star.begin(), cert.x_star.end() - 1);
    out.x0 = x0;
    out.rho = rho;
    out.retries = retry;
    fill_local(out, prob);
    return out;
  }
  throw Error("x0 stays on the sphere after shrinking the radius", "ball_boundary");
}

LocalCertificate separate_shifted(LocalProblem prob, const std::vector<Vector>& shifts, const SeparateOptions& opt) {
  validate_local(prob);
  if (shifts.size() != prob.sets.size()) throw DimensionError("one shift per set is required");
  LocalProblem moved = prob;
  moved.x_bar = Vector::Zero(prob.x_bar.size());
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    require_dim(shifts[i].size(), prob.x_bar.size(), "shift");
    moved.sets[i] = SetExpr::translate(prob.sets[i], -shifts[i]);
    if (!prob.omega.empty()) moved.omega[i] = prob.omega[i] - shifts[i];
  }
  LocalCertificate out = separate_local(moved, opt);
  for (std::size_t i = 0; i < shifts.size(); ++i) out.x[i] += shifts[i];
  out.shifts = shifts;
  prob.x_bar = moved.x_bar;
  fill_local(out, prob);
  return out;
}

VerificationReport verify_local(const LocalCertificate& cert, const LocalProblem& prob, const Tolerances& tol) {
  validate_local(prob);
  VerificationReport rep;
  auto& c = rep.checks;
  const int n = static_cast<int>(prob.sets.size());
  if (static_cast<int>(cert.x.size()) != n || static_cast<int>(cert.x_star.size()) != n) {
    c.push_back({"shape", 1.0, 0.0, "<=", false});
    return rep;
  }
  LocalCertificate re = cert;
  const bool inside = contains(*SetExpr::product(prob.sets), concat(cert.x), tol.feasibility);
  c.push_back(at_most("in_sets", inside ? 0.0 : 1.0, 0.0));
  if (!inside) return rep;
  fill_local(re, prob);
  const Vector center = cert.shifts.empty() ? prob.x_bar : Vector(Vector::Zero(prob.x_bar.size()));
  c.push_back(at_most("unit_norm", std::abs(re.unit - 1.0), tol.report));
  c.push_back(below("mixed_residual", re.mixed, prob.eps, tol.strict_margin));
  c.push_back(below("x0_in_ball", prob.base->eval(cert.x0 - center), cert.rho, tol.strict_margin));
  c.push_back(at_most("radius", cert.rho, prob.rho));
  if (!prob.omega.empty()) {
    c.push_back(below("within_delta", prob.norm->eval(concat(cert.x) - concat(prob.omega)), prob.delta,
                      tol.strict_margin));
  }
  c.push_back(at_most("alignment", std::abs(re.alignment - re.m), tol.report));
  if (prob.tau) c.push_back(above("tau_alignment", re.alignment, *prob.tau * re.m, tol.strict_margin));
  return rep;
}

std::string to_string(Profile p) {
  switch (p) {
    case Profile::unified:
      return "unified";
    case Profile::eta_delta:
      return "eta_delta";
    case Profile::p_weighted:
      return "p_weighted";
    case Profile::ep:
      return "EP";
  }
  return "";
}

Profile profile_from_string(const std::string& s) {
  if (s == "unified") return Profile::unified;
  if (s == "eta_delta") return Profile::eta_delta;
  if (s == "p_weighted") return Profile::p_weighted;
  if (s == "EP" || s == "ep") return Profile::ep;
  throw Error("unknown profile " + s);
}

SeparationInstance install_profile(SeparationInstance inst, const ProfileSpec& spec) {
  if (!inst.base) throw Error("profiles need the base norm");
  const int n = inst.n();
  switch (spec.profile) {
    case Profile::unified:
    case Profile::ep:
      inst.inner = max_of_blocks(inst.base, n - 1);
      inst.plus = max_of_blocks(inst.base, n);
      break;
    case Profile::eta_delta:
      if (!(spec.eta > 0.0)) throw Error("eta must be positive");
      inst.inner = max_of_blocks(inst.base, n - 1);
      inst.plus = gamma_norm(inst.inner, inst.delta / spec.eta, inst.base);
      break;
    case Profile::p_weighted:
      inst.inner = p_composition(spec.p, {}, inst.base, n - 1);
      inst.plus = p_composition(spec.p, {}, inst.base, n);
      break;
  }
  return inst;
}

namespace {

double p_sum(const std::vector<double>& v, double p) {
  if (p == kInf) return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += std::pow(x, p);
  return std::pow(s, 1.0 / p);
}

}  // namespace

SpecializationReport specialize(const SeparationInstance& inst, const SeparationCertificate& cert,
                                const ProfileSpec& spec, const Tolerances& tol) {
  if (!inst.base) throw Error("profiles need the base norm");
  SpecializationReport rep;
  rep.profile = spec.profile;
  rep.generic = verify_certificate(cert, inst, tol);
  auto& c = rep.specialized.checks;
  const int n = inst.n();
  const auto dual_base = dual_of(inst.base);
  auto distances = [&](const std::vector<Vector>& xs) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
      const auto cone = normal_cone(*inst.sets[i], cert.x[i], cert.flavor);
      out.push_back(cone_distance(xs[i], cone.cone, *dual_base).value);
    }
    return out;
  };
  std::vector<double> duals, gaps, moves;
  for (int i = 0; i < n; ++i) {
    duals.push_back(inst.base->dual(cert.x_star[i]));
    moves.push_back(inst.base->eval(cert.x[i] - inst.omega[i]));
    if (i + 1 < n) gaps.push_back(inst.base->eval(cert.x.back() - cert.x[i]));
  }
  const std::vector<double> heads(duals.begin(), duals.end() - 1);
  const double a = alignment(cert.x, cert.x_star);
  const double ratio = inst.eps / inst.delta;
  c.push_back(at_most("sum_zero", dual_norm_of_sum(cert.x_star, inst.base), tol.report));

  switch (spec.profile) {
    case Profile::unified: {
      c.push_back(at_most("dual_sum_unit", std::abs(p_sum(heads, 1.0) - 1.0), tol.report));
      c.push_back(below("distance_sum", p_sum(distances(cert.x_star), 1.0), ratio, tol.strict_margin));
      c.push_back(at_most("alignment_max", std::abs(a - p_sum(gaps, kInf)), tol.report));
      c.push_back(below("within_delta", p_sum(moves, kInf), inst.delta, tol.strict_margin));
      break;
    }
    case Profile::eta_delta: {
      const auto dist = distances(cert.x_star);
      double weighted = spec.eta * dist.back();
      for (int i = 0; i + 1 < n; ++i) weighted += inst.delta * dist[i];
      c.push_back(at_most("dual_sum_unit", std::abs(p_sum(heads, 1.0) - 1.0), tol.report));
      c.push_back(below("weighted_distance", weighted, inst.eps, tol.strict_margin));
      c.push_back(at_most("alignment_max", std::abs(a - p_sum(gaps, kInf)), tol.report));
      c.push_back(below("within_delta", p_sum({moves.begin(), moves.end() - 1}, kInf), inst.delta,
                        tol.strict_margin));
      c.push_back(below("within_eta", moves.back(), spec.eta, tol.strict_margin));
      break;
    }
    case Profile::p_weighted: {
      const double q = conjugate_exponent(spec.p);
      c.push_back(at_most("dual_q_unit", std::abs(p_sum(heads, q) - 1.0), tol.report));
      c.push_back(below("distance_q", p_sum(distances(cert.x_star), q), ratio, tol.strict_margin));
      c.push_back(at_most("alignment_p", std::abs(a - p_sum(gaps, spec.p)), tol.report));
      c.push_back(below("within_delta_p", p_sum(moves, spec.p), inst.delta, tol.strict_margin));
      break;
    }
    case Profile::ep: {
      // The last set is the ball; spread its multiplier over the others and
      // renormalize so that the sum vanishes exactly.
      const auto& ball = inst.sets.back();
      if (ball->kind() != SetExpr::Kind::ball) throw Error("the EP profile needs the ball as last set");
      const auto& bc = ball->ball_constraint();
      const int m = n - 1;
      std::vector<Vector> adjusted;
      double scale = 0.0;
      for (int i = 0; i < m; ++i) {
        adjusted.push_back(cert.x_star[i] + cert.x_star.back() / m);
        scale += inst.base->dual(adjusted.back());
      }
      for (auto& v : adjusted) v /= scale;
      adjusted.push_back(Vector::Zero(inst.d()));
      std::vector<double> dist = distances(adjusted);
      dist.pop_back();
      std::vector<double> norms;
      for (int i = 0; i < m; ++i) norms.push_back(inst.base->dual(adjusted[i]));
      c.push_back(at_most("ep_sum_zero", dual_norm_of_sum(adjusted, inst.base), tol.report));
      c.push_back(at_most("ep_dual_sum_unit", std::abs(p_sum(norms, 1.0) - 1.0), tol.report));
      c.push_back(below("ball_interior", bc.value(cert.x.back()), bc.radius, tol.strict_margin));
      const double bound = ratio < 1.0 ? ratio / (1.0 - ratio) : std::numeric_limits<double>::infinity();
      c.push_back(below("ep_eps_below_delta", ratio, 1.0, 0.0));
      c.push_back(below("ep_distance_sum", p_sum(dist, 1.0), bound, tol.strict_margin));
      break;
    }
  }
  return rep;
}

}  // namespace gsep
