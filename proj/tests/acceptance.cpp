// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include "gsep/report.hpp"

#include "gsep/norms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace gsep;
using lp::Row;
namespace fs = std::filesystem;

namespace {

const fs::path corpus{GSEP_CORPUS_DIR};

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (failures.size() < 5) failures.push_back(what);
    }
  }
};

Vector vec(std::initializer_list<double> v) {
  Vector out(v.size());
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

Vector gaussian(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = g(rng);
  return v;
}

std::vector<fs::path> files(const std::string& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(corpus / dir)) {
    if (e.path().extension() == ".json") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vector> tuple(const nlohmann::json& j) {
  std::vector<Vector> out;
  for (const auto& v : j) {
    Vector x(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) x(static_cast<Eigen::Index>(i)) = v[i].get<double>();
    out.push_back(x);
  }
  return out;
}

const ResidualRow* row(const Report& r, const std::string& label) {
  for (const auto& x : r.residuals) {
    if (x.label == label) return &x;
  }
  return nullptr;
}

// Normal cone of a polyhedral set at x built from the rows active at x.
Cone active_cone(const SetExpr& s, const Vector& x) {
  std::vector<Vector> gens;
  for (const auto& r : s.rows()) {
    if (r.a.dot(x) >= r.b - 1e-8) gens.push_back(r.a);
  }
  return Cone(static_cast<int>(x.size()), gens);
}

Cone block_cone(const std::vector<SetPtr>& sets, const std::vector<Vector>& x) {
  const int d = static_cast<int>(x.front().size());
  const int n = static_cast<int>(x.size());
  std::vector<Vector> gens;
  for (int i = 0; i < n; ++i) {
    for (const auto& g : active_cone(*sets[i], x[i]).generators) {
      Vector e = Vector::Zero(n * d);
      e.segment(i * d, d) = g;
      gens.push_back(e);
    }
  }
  return Cone(n * d, gens);
}

bool in_rows(const SetExpr& s, const Vector& x) {
  for (const auto& r : s.rows()) {
    if (r.a.dot(x) > r.b + 1e-9) return false;
  }
  return true;
}

// 1. Certificate soundness ---------------------------------------------------------

Verdict certificate_soundness() {
  Verdict v;
  double worst_sum = 0.0, worst_unit = 0.0, worst_align = 0.0, worst_cone_margin = 1e300;
  const auto paths = files("separate");
  v.require(paths.size() >= 25, "fewer than 25 instances");
  for (const auto& p : paths) {
    const std::string name = p.stem().string();
    const Instance inst = load_instance(p.string());
    const Report r = run("separate", inst);
    v.require(r.outcome == Outcome::verified, name + " not verified (" + r.label + ")");
    if (r.outcome != Outcome::verified) continue;
    const auto x = tuple(r.result["certificate"]["x"]);
    const auto xs = tuple(r.result["certificate"]["x_star"]);
    const int n = inst.n();
    const double eps = *inst.params.eps, delta = *inst.params.delta;

    Vector sum = Vector::Zero(inst.dimension);
    for (const auto& y : xs) sum += y;
    const double r_sum = inst.base->dual(sum);
    const double r_unit = std::abs(inst.inner->dual(concat({xs.begin(), xs.end() - 1})) - 1.0);
    worst_sum = std::max(worst_sum, r_sum);
    worst_unit = std::max(worst_unit, r_unit);
    v.require(r_sum <= 1e-9, name + " sum");
    v.require(r_unit <= 1e-9, name + " unit");

    bool inside = true;
    for (int i = 0; i < n; ++i) inside = inside && in_rows(*inst.sets[i], x[i]);
    v.require(inside, name + " point outside the sets");
    v.require(inst.plus->eval(concat(x) - concat(inst.omega)) < delta, name + " outside the delta ball");

    const double r_cone = cone_distance(concat(xs), block_cone(inst.sets, x), *dual_of(inst.plus)).value;
    worst_cone_margin = std::min(worst_cone_margin, eps / delta - r_cone);
    v.require(r_cone < eps / delta - 1e-9, name + " cone distance");

    double a = 0.0;
    std::vector<Vector> diff;
    for (int i = 0; i + 1 < n; ++i) {
      a += xs[i].dot(x[n - 1] - x[i]);
      diff.push_back(x[n - 1] - x[i]);
    }
    const double m = inst.inner->eval(concat(diff));
    worst_align = std::max(worst_align, std::abs(a - m));
    v.require(std::abs(a - m) <= 1e-7, name + " alignment");
    for (double tau : {0.5, 0.9, 0.99}) v.require(a > tau * m, name + " tau alignment");
  }
  v.detail << paths.size() << " instances; worst sum " << worst_sum << ", unit " << worst_unit << ", |A-m| "
           << worst_align << ", smallest eps/delta - r_cone " << worst_cone_margin;
  return v;
}

// 2. Specialization regressions ------------------------------------------------------

Verdict specialization() {
  Verdict v;
  const auto paths = files("specialize");
  for (const auto& p : paths) {
    const Instance inst = load_instance(p.string());
    const Report r = run("specialize", inst);
    const std::string name = p.stem().string();
    v.require(r.outcome == Outcome::verified, name + " not verified (" + r.label + ")");
    if (r.outcome != Outcome::verified || inst.profile == "p_weighted") continue;
    const auto x = tuple(r.result["certificate"]["x"]);
    const auto xs = tuple(r.result["certificate"]["x_star"]);
    const int n = inst.n();
    const double eps = *inst.params.eps, delta = *inst.params.delta;
    double unit = 0.0, dist_head = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      unit += inst.base->dual(xs[i]);
      dist_head += cone_distance(xs[i], active_cone(*inst.sets[i], x[i]), *dual_of(inst.base)).value;
    }
    const double dist_last = cone_distance(xs[n - 1], active_cone(*inst.sets[n - 1], x[n - 1]), *dual_of(inst.base)).value;
    v.require(std::abs(unit - 1.0) <= 1e-9, name + " unit sum");
    if (inst.profile == "unified") {
      v.require(dist_head + dist_last < eps / delta, name + " distance sum");
    } else {
      v.require(delta * dist_head + *inst.params.eta * dist_last < eps, name + " weighted distance");
    }
  }
  // eta = delta collapses the two profiles.
  for (const std::string stem : {"half_lines", "three_boxes"}) {
    const Report u = run("specialize", load_instance((corpus / "specialize" / (stem + "_unified.json")).string()));
    const Instance e_inst = load_instance((corpus / "specialize" / (stem + "_eta_equal.json")).string());
    const Report e = run("specialize", e_inst);
    auto generic = [](const Report& r) {
      Report g;
      for (const auto& x : r.residuals) {
        if (x.label.find('.') == std::string::npos) g.residuals.push_back(x);
      }
      return emit(g, Format::table);
    };
    v.require(generic(u) == generic(e), stem + " residual tables differ");
    v.require(u.result["certificate"]["x_star"] == e.result["certificate"]["x_star"], stem + " multipliers differ");
    const auto* ds = row(u, "unified.distance_sum");
    const auto* wd = row(e, "eta_delta.weighted_distance");
    const double delta = *e_inst.params.delta;
    v.require(ds && wd && std::abs(wd->value - delta * ds->value) <= 1e-12 &&
                  std::abs(wd->bound - delta * ds->bound) <= 1e-12,
              stem + " weighted and plain distance rows disagree");
  }
  v.detail << paths.size() << " instances; eta = delta tables identical on 2 pairs";
  return v;
}

// 3. Norm calculus ---------------------------------------------------------------------

Verdict norm_calculus() {
  Verdict v;
  const auto base = euclidean(2);
  double worst = 0.0;
  for (double p : {1.0, 2.0, kInf}) {
    for (int n : {2, 3, 4}) {
      const double root = p == kInf ? 1.0 : std::pow(n, 1.0 / p);
      const NormFamily f{base, nullptr, nullptr, p_composition(p, {}, base, n)};
      const SamplingBudget budget{2000, 5};
      const double c3 = estimate_kappa(Condition::C3, f, budget).kappa_hat;
      const double c4 = estimate_kappa(Condition::C4, f, budget).kappa_hat;
      const double c5 = estimate_kappa(Condition::C5, f, budget).kappa_hat;
      for (double e : {std::abs(c3 - 1.0), std::abs(c4 - root), std::abs(c5 - root)}) {
        worst = std::max(worst, e);
        v.require(e <= 1e-6, "p " + std::to_string(p) + " n " + std::to_string(n));
      }
    }
  }
  const auto skew = polyhedral_norm({vec({1, 0}), vec({-1, 0}), vec({1, 1}), vec({-1, -1})});
  const auto forced = compose_forced(skew, euclidean(1), 2);
  const double a = skew->eval(vec({1, -1})), b = skew->eval(vec({2, 1}));
  const double s = forced->eval(vec({0, 2})), x = forced->eval(vec({1, 1})), y = forced->eval(vec({-1, 1}));
  v.require(std::abs(a - 3.0) <= 1e-12 && std::abs(b - 2.0) <= 1e-12, "monotonicity counterexample values");
  v.require(std::abs(s - 4.0) <= 1e-12 && std::abs(x - 1.0) <= 1e-12 && std::abs(y - 1.0) <= 1e-12,
            "triangle counterexample values");
  const Report r = run("norms-check", load_instance((corpus / "norms-check" / "skew_vector_norm.json").string()));
  v.require(r.outcome == Outcome::absent, "norms-check does not report the counterexample");
  const auto* sampled = row(r, "monotone_sampled");
  v.require(sampled && !sampled->holds, "sampled monotonicity check missed the skew norm");
  v.detail << "9 lp compositions, worst |kappa - closed form| " << worst << "; skew norm " << a << " vs " << b << ", "
           << s << " vs " << x << "+" << y;
  return v;
}

// 4. Cone correctness ------------------------------------------------------------------

std::vector<Row> random_polyhedron(std::mt19937_64& rng, const Vector& x0, int active, int slack) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<Row> rows;
  for (int i = 0; i < active + slack; ++i) {
    const Vector a = gaussian(rng, static_cast<int>(x0.size()));
    rows.push_back({a, a.dot(x0) + (i < active ? 0.0 : u(rng))});
  }
  return rows;
}

// Dykstra projection of d onto {d : a.d <= 0} over the rows active at x.
Vector into_tangent(const std::vector<Row>& rows, const Vector& x, Vector d) {
  std::vector<Vector> normals;
  for (const auto& r : rows) {
    if (std::abs(r.a.dot(x) - r.b) <= 1e-9) normals.push_back(r.a);
  }
  std::vector<Vector> inc(normals.size(), Vector::Zero(d.size()));
  for (int it = 0; it < 10000; ++it) {
    const Vector prev = d;
    for (std::size_t k = 0; k < normals.size(); ++k) {
      const Vector y = d + inc[k];
      const double viol = normals[k].dot(y);
      d = viol > 0.0 ? Vector(y - viol / normals[k].squaredNorm() * normals[k]) : y;
      inc[k] = y - d;
    }
    if ((d - prev).norm() <= 1e-16) break;
  }
  return d;
}

// Largest <g, x' - x> / (|g| |x' - x|) over `samples` set points within radius
// of x. Directions leaving the set are projected into its tangent cone, which
// keeps narrow vertices sampled.
double frechet_quotient(const std::vector<Row>& rows, const Vector& x, const Vector& g, double radius, int samples,
                        std::mt19937_64& rng) {
  std::uniform_real_distribution<double> t(0.0, 1.0);
  auto inside = [&](const Vector& dir) {
    for (const auto& r : rows) {
      if (r.a.dot(x + dir) > r.b + 1e-12) return false;
    }
    return true;
  };
  double worst = -1.0;
  int hits = 0;
  while (hits < samples) {
    Vector dir = gaussian(rng, static_cast<int>(x.size()));
    if (!inside(dir * (radius / dir.norm()))) dir = into_tangent(rows, x, dir);
    if (dir.norm() < 1e-12) continue;
    dir *= radius * t(rng) / dir.norm();
    if (dir.norm() == 0.0 || !inside(dir)) continue;
    ++hits;
    worst = std::max(worst, g.dot(dir) / (g.norm() * dir.norm()));
  }
  return worst;
}

Verdict cone_correctness() {
  Verdict v;
  std::mt19937_64 rng(4242);
  double worst_q = -1.0;
  int product_failures = 0, polarity_checked = 0;
  std::vector<std::pair<SetPtr, Vector>> polys;
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + t % 2;
    const Vector x0 = gaussian(rng, d);
    const auto rows = random_polyhedron(rng, x0, 1 + t % d, 3);
    const auto s = SetExpr::polyhedron(rows, d);
    const auto nc = normal_cone(*s, x0);
    v.require(!nc.cone.is_zero(), "zero cone at a boundary point");
    for (const auto& g : nc.cone.generators) {
      const double q = frechet_quotient(rows, x0, g, 1e-3, 10000, rng);
      worst_q = std::max(worst_q, q);
      v.require(q <= 0.01, "sampled normal definition, polyhedron " + std::to_string(t));
      // Control: the reversed normal must be rejected by the same sampler.
      v.require(frechet_quotient(rows, x0, -g, 1e-3, 1000, rng) > 0.01, "sampler accepts a reversed normal");
    }
    polys.emplace_back(s, x0);
  }
  // Product cones over consecutive pairs of equal dimension.
  for (std::size_t k = 0; k + 2 < polys.size(); k += 2) {
    const auto& [s1, x1] = polys[k];
    const auto& [s2, x2] = polys[k + 2];
    const auto n1 = normal_cone(*s1, x1), n2 = normal_cone(*s2, x2);
    const auto prod = product_cone({n1, n2});
    const int d = static_cast<int>(x1.size());
    for (int j = 0; j < 1112; ++j) {
      const Vector a = prod.cone.sample(rng);
      if (!cone_contains(n1.cone, a.head(d)) || !cone_contains(n2.cone, a.tail(d))) ++product_failures;
      const Vector b = concat({n1.cone.sample(rng), n2.cone.sample(rng)});
      if (!cone_contains(prod.cone, b)) ++product_failures;
    }
  }
  v.require(product_failures == 0, std::to_string(product_failures) + " product membership failures");
  // Tangent/normal polarity on the random polyhedra and every convex corpus set at x_bar.
  auto polarity = [&](const SetExpr& s, const Vector& x, const std::string& what) {
    const auto tc = tangent_cone(s, x);
    const auto nc = normal_cone(s, x);
    ++polarity_checked;
    v.require(cone_equal(polar(tc.cone), nc.cone, 1e-7), "polarity " + what);
  };
  for (const auto& [s, x] : polys) polarity(*s, x, "random polyhedron");
  for (const std::string dir : {"equivalence-suite", "stationarity", "transversality"}) {
    for (const auto& p : files(dir)) {
      const Instance inst = load_instance(p.string());
      for (const auto& s : inst.sets) {
        if (s->convex()) polarity(*s, *inst.x_bar, p.stem().string());
      }
    }
  }
  v.detail << "20 polyhedra, worst quotient " << worst_q << "; 20016 product samples, " << product_failures
           << " failures; polarity on " << polarity_checked << " cones";
  return v;
}

// 5. Ekeland conclusions -----------------------------------------------------------------

ConvexPiece rect(double x0, double x1, double y0, double y1) {
  return {2, {{vec({1, 0}), x1}, {vec({-1, 0}), -x0}, {vec({0, 1}), y1}, {vec({0, -1}), -y0}}, {}};
}

// Smallest f(u) + c d(u, x) - f(x) over a grid of [-1, 1]^2 and the piece vertices.
double grid_gap(const EkelandProblem& p, const Vector& x, double c) {
  double worst = 1e300;
  const double fx = p.f(x);
  auto visit = [&](const Vector& u) {
    bool in = false;
    for (const auto& piece : p.domain) in = in || piece.contains(u, 1e-12);
    if (in) worst = std::min(worst, p.f(u) + c * p.metric->eval(u - x) - fx);
  };
  const int steps = 1000;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; j <= steps; ++j) visit(vec({-1.0 + 2.0 * i / steps, -1.0 + 2.0 * j / steps}));
  }
  for (const auto& piece : p.domain) {
    for (const auto& q : polytope_vertices(piece.rows, piece.dim, 1e-12)) visit(q);
  }
  return worst;
}

Verdict ekeland_conclusions() {
  Verdict v;
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    EkelandProblem p;
    p.f = Objective(2);
    p.f.linear = vec({U(rng), U(rng)}) * 0.5;
    for (int k = 0; k < 1 + t % 3; ++k) {
      Matrix M(2, 2);
      M << U(rng), U(rng), U(rng), U(rng);
      p.f.terms.push_back({t % 2 ? lp_norm(2, 1.0) : lp_norm(2, kInf), M, vec({U(rng), U(rng)}), 1.0});
    }
    p.domain = {rect(-1, 0.2, -1, 1)};
    if (t % 4 == 3) p.domain.push_back(rect(0.5, 1, -0.5, 0.5));
    p.metric = t % 3 ? lp_norm(2, kInf) : lp_norm(2, 1.0);
    const Vector x0 = vec({0.5 * U(rng) - 0.4, U(rng)});
    const double gap = p.f(x0) - infimum(p).first;
    const double eps = gap + 0.05 + 0.5 * (U(rng) + 1);
    const double lambda = 0.1 + (U(rng) + 1);
    const auto r = ekeland_descent(p, x0, eps, lambda);
    const std::string id = "instance " + std::to_string(t);
    v.require(p.metric->eval(r.x - x0) <= lambda, id + " distance");
    v.require(p.f(r.x) <= p.f(x0) + 1e-12, id + " decrease");
    const double g = grid_gap(p, r.x, eps / lambda);
    worst = std::max(worst, -g);
    v.require(g >= -1e-6, id + " perturbation");
  }
  v.detail << "20 instances, worst grid violation " << std::max(0.0, worst);
  return v;
}

// 6. Primal-dual round trip ------------------------------------------------------------

Collection collection_of(const std::string& dir, const std::string& name) {
  const Instance inst = load_instance((corpus / dir / (name + ".json")).string());
  return {inst.sets, *inst.x_bar, inst.base, inst.product};
}

// The witness sets, moved by -(x_i + a_i), miss the box of half-width rho.
bool box_oracle_empty(const Collection& c, const StationarityWitness& w) {
  std::vector<Row> rows;
  const int d = c.d();
  for (int i = 0; i < c.n(); ++i) {
    for (const auto& r : c.sets[i]->rows()) rows.push_back({r.a, r.b - r.a.dot(w.x[i] + w.a[i])});
  }
  for (int j = 0; j < d; ++j) {
    rows.push_back({Vector::Unit(d, j), w.rho});
    rows.push_back({-Vector::Unit(d, j), w.rho});
  }
  return !lp::polyhedron_feasible(rows, d).feasible;
}

Verdict round_trip() {
  Verdict v;
  const Collection opp = collection_of("stationarity", "opposite_half_planes_alpha");
  const auto scan = check_alpha_stationary(opp, 0.1, 0.1);
  v.require(scan.witness.has_value(), "no witness at alpha 0.1");
  if (scan.witness) {
    v.require(verify_witness(*scan.witness, opp).ok(), "witness fails verification");
    v.require(box_oracle_empty(opp, *scan.witness), "witness fails the LP oracle");
  }
  try {
    const auto cert = dual_stationarity_certificate(opp, 0.1, 0.2, 0.1, 0.5);
    v.require(verify_dual_certificate(cert, opp).ok(), "dual certificate fails verification");
    v.require(cert.sum_norm < 0.2, "dual sum not below beta");
    const auto back = dual_to_primal(opp, 0.05, 0.1, 0.1, simplified(cert));
    v.require(verify_witness(back, opp).ok(), "returned witness fails verification");
    v.require(box_oracle_empty(opp, back), "returned witness fails the LP oracle");
  } catch (const Error& e) {
    v.require(false, std::string("dual step: ") + e.label() + ": " + e.what());
  }

  const Collection axes = collection_of("transversality", "crossing_axes");
  const double alpha_hat = transversality_constant(axes, 0.1).alpha_hat;
  v.require(std::abs(alpha_hat - 1.0) <= 1e-6, "transversality constant " + std::to_string(alpha_hat));
  v.require(!check_alpha_stationary(axes, 0.5, 0.1).witness, "witness at alpha 0.5");
  // Random unit normal tuples drawn from the cones at x_bar.
  std::mt19937_64 rng(5);
  const auto n1 = normal_cone(*axes.sets[0], axes.x_bar), n2 = normal_cone(*axes.sets[1], axes.x_bar);
  double smallest = 1e300;
  for (int k = 0; k < 10000; ++k) {
    Vector y = concat({n1.cone.sample(rng), n2.cone.sample(rng)});
    if (k % 4 == 0) y.head(2).setZero();
    if (k % 4 == 1) y.tail(2).setZero();
    const double h = axes.norm->dual(y);
    if (h < 1e-12) continue;
    y /= h;
    smallest = std::min(smallest, axes.base->dual(y.head(2) + y.tail(2)));
  }
  v.require(smallest >= 1.0 - 1e-6, "unit normal tuple with small sum");
  v.detail << "half-planes witness, dual certificate and return trip verified; crossing axes alpha_hat " << alpha_hat
           << ", smallest sampled sum " << smallest;
  return v;
}

// 7. Equivalence suites ----------------------------------------------------------------

Verdict equivalence_suites() {
  Verdict v;
  int convex = 0, positive = 0, negative = 0, extended = 0;
  for (const auto& p : files("equivalence-suite")) {
    const Instance inst = load_instance(p.string());
    const Collection c{inst.sets, *inst.x_bar, inst.base, inst.product};
    const std::string name = p.stem().string();
    bool all_convex = true;
    for (const auto& s : c.sets) all_convex = all_convex && s->convex();
    if (all_convex) {
      const auto s = convex_equivalence_suite(c);
      v.require(s.agree(), name + " convex suite disagrees");
      ++convex;
      (s.value() ? positive : negative)++;
    }
    const auto c4 = estimate_kappa(Condition::C4, {c.base, nullptr, nullptr, c.norm});
    if (!c4.certified) continue;
    const auto s = extended_ep_suite(c);
    v.require(s.agree(), name + " extended suite disagrees");
    ++extended;
  }
  v.require(convex >= 10, "fewer than 10 convex instances");
  v.require(positive > 0 && negative > 0, "convex instances not mixed");
  v.require(extended >= 6, "fewer than 6 extended instances");
  v.detail << convex << " convex instances (" << positive << " positive, " << negative << " negative), " << extended
           << " under certified C4";
  return v;
}

// 8. Determinism -----------------------------------------------------------------------

Verdict determinism() {
  Verdict v;
  int reports = 0;
  for (const auto& c : commands()) {
    const std::string dir = (corpus / c).string();
    const auto a = run_suite(c, dir);
    const auto b = run_suite(c, dir);
    v.require(a.to_json().dump() == b.to_json().dump(), c + " suite output differs");
    for (std::size_t k = 0; k < a.reports.size(); ++k) {
      ++reports;
      v.require(emit(a.reports[k], Format::json) == emit(b.reports[k], Format::json), a.files[k] + " json differs");
      v.require(emit(a.reports[k], Format::table) == emit(b.reports[k], Format::table), a.files[k] + " table differs");
    }
  }
  v.detail << reports << " reports byte-identical across two runs";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Verdict (*)()>> criteria{
      {"certificate_soundness", certificate_soundness},
      {"specialization_regressions", specialization},
      {"norm_calculus", norm_calculus},
      {"cone_correctness", cone_correctness},
      {"ekeland_conclusions", ekeland_conclusions},
      {"primal_dual_round_trip", round_trip},
      {"equivalence_suites", equivalence_suites},
      {"determinism", determinism},
  };
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.failures.push_back(std::string("exception: ") + e.what());
    }
    all = all && v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << k + 1 << " " << criteria[k].first << ": " << v.detail.str();
    for (const auto& f : v.failures) std::cout << "; " << f;
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    std::cout << " (" << std::setprecision(3) << took.count() << " s)" << std::setprecision(6) << std::endl;
  }
  return all ? 0 : 1;
}
