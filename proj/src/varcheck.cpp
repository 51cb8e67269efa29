#include "gsep/varcheck.hpp"

#include "gsep/norms.hpp"

#include <cmath>
#include <random>
#include <set>

namespace gsep {

void Collection::validate(double tol) const {
  if (sets.size() < 2) throw DimensionError("at least two sets are required");
  if (!base || !norm) throw Error("base norm and product norm are required");
  for (const auto& s : sets) require_dim(s->dim(), d(), "set");
  require_dim(base->dim(), d(), "base norm");
  require_dim(norm->dim(), n() * d(), "product norm");
  for (int i = 0; i < n(); ++i) {
    if (!contains(*sets[i], x_bar, tol)) {
      throw Error("x_bar is outside set " + std::to_string(i), "x_bar_outside");
    }
  }
}

namespace {

Vector sum_blocks(const Vector& y, int n, int d) {
  Vector s = Vector::Zero(d);
  for (int i = 0; i < n; ++i) s += block(y, i, d);
  return s;
}

std::vector<Vector> repeat(const Vector& v, int n) { return std::vector<Vector>(n, v); }

std::vector<Vector> add(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  std::vector<Vector> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

double tuple_dist(const Collection& c, const std::vector<Vector>& x) {
  Vector diff = concat(x);
  for (int i = 0; i < c.n(); ++i) block(diff, i, c.d()) -= c.x_bar;
  return c.norm->eval(diff);
}

}  // namespace

std::vector<Vector> direction_schedule(const Collection& c, const SearchBudget& b) {
  const int n = c.n();
  const int d = c.d();
  std::vector<Vector> dirs;
  auto push = [&](Vector v) {
    const double len = c.norm->eval(v);
    if (len > 1e-12) dirs.push_back(v / len);
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      for (double sgn : {1.0, -1.0}) {
        Vector v = Vector::Zero(n * d);
        v(i * d + j) = sgn;
        push(v);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    const auto cone = normal_cone(*c.sets[i], c.x_bar, Flavor::frechet);
    for (const auto& g : cone.cone.generators) {
      Vector alone = Vector::Zero(n * d);
      block(alone, i, d) = g;
      push(alone);
      Vector against = Vector::Zero(n * d);
      for (int k = 0; k < n; ++k) block(against, k, d) = k == i ? Vector(g) : Vector(-g);
      push(against);
    }
  }
  std::mt19937_64 rng(b.seed);
  std::normal_distribution<double> N(0.0, 1.0);
  for (int k = 0; k < b.random_directions; ++k) {
    Vector v(n * d);
    for (int j = 0; j < n * d; ++j) v(j) = N(rng);
    push(v);
  }
  return dirs;
}

std::vector<double> rho_grid(double eps, int points) {
  std::vector<double> out;
  for (int k = 0; k < points; ++k) {
    const double t = points > 1 ? static_cast<double>(k) / (points - 1) : 0.0;
    out.push_back(0.5 * eps * std::pow(10.0, -3.0 * t));
  }
  return out;
}

Emptiness shifted_emptiness(const std::vector<SetPtr>& sets, const std::vector<Vector>& shifts, const Vector& center,
                            double radius, const Norm& base, double margin) {
  Emptiness out;
  out.distance_lower = std::numeric_limits<double>::infinity();
  bool center_common = true;
  for (std::size_t i = 0; i < sets.size() && center_common; ++i) {
    center_common = contains(*sets[i], center + shifts[i], 1e-12);
  }
  if (center_common) {
    out.point = center;
    out.distance_lower = 0.0;
    return out;
  }

  std::vector<std::vector<ConvexPiece>> pieces;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::vector<ConvexPiece> moved;
    for (const auto& p : sets[i]->pieces()) moved.push_back(p.translated(-shifts[i]));
    pieces.push_back(std::move(moved));
  }
  ConvexOptions opt;
  opt.stop_if_lower_above = radius + margin;
  opt.stop_if_upper_below = radius;
  std::vector<std::size_t> idx(sets.size(), 0);
  for (;;) {
    ConvexPiece acc = pieces[0][idx[0]];
    for (std::size_t i = 1; i < sets.size(); ++i) acc = intersect(acc, pieces[i][idx[i]]);
    if (const auto proj = project_piece(acc, center, base, opt)) {
      out.distance_lower = std::min(out.distance_lower, proj->lower);
      if (!(proj->lower > radius + margin)) {
        if (proj->distance <= radius) out.point = proj->point;
        return out;
      }
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == pieces[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  out.empty = true;
  return out;
}

VerificationReport verify_witness(const StationarityWitness& w, const Collection& c, const Tolerances& tol) {
  VerificationReport rep;
  auto& ch = rep.checks;
  if (static_cast<int>(w.x.size()) != c.n() || static_cast<int>(w.a.size()) != c.n()) {
    ch.push_back({"shape", 1.0, 0.0, "<=", false});
    return rep;
  }
  bool inside = true;
  for (int i = 0; i < c.n(); ++i) inside = inside && contains(*c.sets[i], w.x[i], tol.feasibility);
  ch.push_back(at_most("in_sets", inside ? 0.0 : 1.0, 0.0));
  ch.push_back(below("radius", w.rho, w.eps, 0.0));
  ch.push_back(above("radius_positive", w.rho, 0.0, 0.0));
  ch.push_back(below("points_near", tuple_dist(c, w.x), w.eps, tol.strict_margin));
  ch.push_back(below("perturbation", c.norm->eval(concat(w.a)), w.alpha * w.rho, tol.strict_margin));
  const auto e = shifted_emptiness(c.sets, add(w.x, w.a), Vector::Zero(c.d()), w.rho, *c.base, tol.strict_margin);
  ch.push_back(above("empty_intersection", e.distance_lower, w.rho, tol.strict_margin));
  return rep;
}

bool ScheduleResult::all_found() const {
  if (rows.empty()) return false;
  for (const auto& r : rows) {
    if (r.a.empty()) return false;
  }
  return true;
}

namespace {

// Shift tuples of norm `scale` along each direction; the first emptying one.
std::optional<std::vector<Vector>> first_emptying(const Collection& c, const std::vector<Vector>& dirs,
                                                  const std::vector<Vector>& base_points, double scale, const Vector& center,
                                                  double radius, ScanStats& stats) {
  for (const auto& dir : dirs) {
    const auto a = split(dir * scale, c.d());
    ++stats.tested;
    if (shifted_emptiness(c.sets, add(base_points, a), center, radius, *c.base).empty) return a;
  }
  return std::nullopt;
}

constexpr double kInside = 0.99;

}  // namespace

ScheduleResult check_extremal(const Collection& c, double rho, const SearchBudget& b) {
  c.validate();
  if (!(rho > 0.0)) throw Error("rho must be positive");
  const auto dirs = direction_schedule(c, b);
  const auto zero = repeat(Vector::Zero(c.d()), c.n());
  ScheduleResult out;
  out.stats.directions = static_cast<int>(dirs.size());
  out.stats.radii = 1;
  out.stats.points = 1;
  for (double eps : b.eps_schedule) {
    ShiftWitness row{eps, rho, {}};
    if (auto a = first_emptying(c, dirs, zero, kInside * eps, c.x_bar, rho, out.stats)) row.a = *a;
    out.rows.push_back(std::move(row));
  }
  return out;
}

ScheduleResult check_stationary(const Collection& c, const SearchBudget& b) {
  c.validate();
  const auto dirs = direction_schedule(c, b);
  const auto zero = repeat(Vector::Zero(c.d()), c.n());
  ScheduleResult out;
  out.stats.directions = static_cast<int>(dirs.size());
  out.stats.radii = b.rho_points;
  out.stats.points = 1;
  for (double eps : b.eps_schedule) {
    ShiftWitness row{eps, 0.0, {}};
    for (double rho : rho_grid(eps, b.rho_points)) {
      if (auto a = first_emptying(c, dirs, zero, kInside * eps * rho, c.x_bar, rho, out.stats)) {
        row.rho = rho;
        row.a = *a;
        break;
      }
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

namespace {

// x_bar itself followed by nearest points of seeded perturbations of x_bar,
// kept when their distance from x_bar stays below eps.
std::vector<std::vector<Vector>> base_points(const Collection& c, double eps, const SearchBudget& b) {
  std::vector<std::vector<Vector>> out{repeat(c.x_bar, c.n())};
  std::mt19937_64 rng(b.seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> N(0.0, 1.0);
  std::uniform_real_distribution<double> U(0.1, 0.4);
  for (int k = 0; k < b.point_samples; ++k) {
    std::vector<Vector> x;
    for (int i = 0; i < c.n(); ++i) {
      Vector u(c.d());
      for (int j = 0; j < c.d(); ++j) u(j) = N(rng);
      u *= U(rng) * eps / std::max(1e-12, c.base->eval(u));
      x.push_back(project(*c.sets[i], c.x_bar + u, *c.base).point);
    }
    if (tuple_dist(c, x) < eps) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

AlphaScan check_alpha_stationary(const Collection& c, double alpha, double eps, const SearchBudget& b) {
  c.validate();
  if (!(alpha > 0.0) || !(eps > 0.0)) throw Error("alpha and eps must be positive");
  const auto dirs = direction_schedule(c, b);
  const auto points = base_points(c, eps, b);
  AlphaScan out;
  out.stats.directions = static_cast<int>(dirs.size());
  out.stats.radii = b.rho_points;
  out.stats.points = static_cast<int>(points.size());
  const Vector origin = Vector::Zero(c.d());
  for (double rho : rho_grid(eps, b.rho_points)) {
    for (const auto& x : points) {
      if (auto a = first_emptying(c, dirs, x, kInside * alpha * rho, origin, rho, out.stats)) {
        StationarityWitness w;
        w.alpha = alpha;
        w.eps = eps;
        w.rho = rho;
        w.x = x;
        w.a = *a;
        w.x_dist = tuple_dist(c, x);
        w.a_norm = c.norm->eval(concat(*a));
        out.witness = std::move(w);
        return out;
      }
    }
  }
  return out;
}

TransversalScan check_alpha_transversal(const Collection& c, double alpha, double eps, const SearchBudget& b) {
  const AlphaScan scan = check_alpha_stationary(c, alpha, eps, b);
  TransversalScan out;
  out.confirmed = !scan.witness;
  out.counterexample = scan.witness;
  out.stats = scan.stats;
  return out;
}

namespace {

struct Face {
  Vector point;
  std::vector<Vector> normals;  // rows active at point
};

// Active row sets realized at points of the polyhedron within the open ball
// B_eps(x_bar). Each subset S of the rows that can be active there is tried:
// the program keeps S active and maximizes the slack of the others; the
// active set at its solution is a realized one (possibly larger than S).
std::vector<Face> nearby_faces(const ConvexPiece& piece, const Vector& x_bar, double eps, const NormPtr& base) {
  const int d = piece.dim;
  std::vector<int> near;
  for (int j = 0; j < static_cast<int>(piece.rows.size()); ++j) {
    const auto& r = piece.rows[j];
    const double scale = base->dual(r.a);
    if (scale <= 1e-14) continue;
    if ((r.b - r.a.dot(x_bar)) / scale < eps) near.push_back(j);
  }
  const int k = static_cast<int>(near.size());
  const int max_size = k <= 10 ? k : d;
  std::vector<std::vector<int>> subsets{{}};
  for (int j = 0; j < k; ++j) {
    const std::size_t count = subsets.size();
    for (std::size_t s = 0; s < count; ++s) {
      if (static_cast<int>(subsets[s].size()) >= max_size) continue;
      auto next = subsets[s];
      next.push_back(near[j]);
      subsets.push_back(std::move(next));
    }
  }

  std::set<std::vector<int>> seen;
  std::vector<Face> out;
  Matrix take_x = Matrix::Zero(d, d + 1);
  take_x.leftCols(d).setIdentity();
  for (const auto& S : subsets) {
    ConvexProgram prog(d + 1);
    prog.linear(d) = -1.0;
    for (int j = 0; j < static_cast<int>(piece.rows.size()); ++j) {
      const auto& r = piece.rows[j];
      Vector a = Vector::Zero(d + 1);
      a.head(d) = r.a;
      if (std::find(S.begin(), S.end(), j) != S.end()) {
        prog.rows.push_back({a, r.b});
        prog.rows.push_back({-a, -r.b});
      } else {
        a(d) = 1.0;
        prog.rows.push_back({a, r.b});
      }
    }
    Vector cap = Vector::Zero(d + 1);
    cap(d) = 1.0;
    prog.rows.push_back({cap, 1.0});
    prog.bounds.push_back({base, take_x, -x_bar, eps * (1.0 - 1e-9)});
    const ConvexResult r = minimize(prog);
    if (!r.ok()) continue;
    const Vector x = r.z.head(d);
    std::vector<int> active;
    for (int j = 0; j < static_cast<int>(piece.rows.size()); ++j) {
      const auto& row = piece.rows[j];
      if (row.b - row.a.dot(x) <= 1e-9 * (1.0 + std::abs(row.b))) active.push_back(j);
    }
    if (!seen.insert(active).second) continue;
    Face f{x, {}};
    for (int j : active) f.normals.push_back(piece.rows[j].a);
    out.push_back(std::move(f));
  }
  return out;
}

struct TupleMin {
  double ratio = std::numeric_limits<double>::infinity();
  Vector y;
};

// min base*(sum y) over y = G lambda, lambda >= 0, <u, y> >= 1.
std::optional<Vector> min_sum_along(const Matrix& G, const Vector& u, const Matrix& S, const NormPtr& base_dual) {
  const int m = static_cast<int>(G.cols());
  ConvexProgram prog(m);
  for (int j = 0; j < m; ++j) {
    Vector e = Vector::Zero(m);
    e(j) = -1.0;
    prog.rows.push_back({e, 0.0});
  }
  prog.rows.push_back({-(G.transpose() * u), -1.0});
  prog.terms.push_back({base_dual, S * G, Vector::Zero(S.rows()), 1.0});
  const ConvexResult r = minimize(prog);
  if (!r.ok()) return std::nullopt;
  return Vector(G * r.z);
}

}  // namespace

TransversalityReport transversality_constant(const Collection& c, double eps) {
  c.validate();
  if (!(eps > 0.0)) throw Error("eps must be positive");
  const int n = c.n();
  const int d = c.d();
  std::vector<std::vector<Face>> faces;
  for (const auto& s : c.sets) {
    const auto pieces = s->pieces();
    if (pieces.size() != 1 || !pieces.front().polyhedral()) {
      throw Error("transversality constant needs polyhedral sets", "non_polyhedral");
    }
    faces.push_back(nearby_faces(pieces.front(), c.x_bar, eps, c.base));
  }

  const NormPtr base_dual = dual_of(c.base);
  Matrix S = Matrix::Zero(d, n * d);
  for (int i = 0; i < n; ++i) S.block(0, i * d, d, d).setIdentity();
  auto ratio = [&](const Vector& y) {
    const double h = c.norm->dual(y);
    return h > 1e-14 ? c.base->dual(S * y) / h : std::numeric_limits<double>::infinity();
  };

  // Vertices of the primal unit ball of a polyhedral product norm: the
  // constraint |y|_* >= 1 is then a union of half-spaces <u, y> >= 1.
  std::optional<std::vector<Vector>> ball_vertices;
  if (auto f = c.norm->facets(); f && n * d <= 8 && f->size() <= 64) {
    std::vector<lp::Row> rows;
    for (const auto& a : *f) rows.push_back({a, 1.0});
    ball_vertices = polytope_vertices(rows, n * d);
  }

  TransversalityReport out;
  out.eps = eps;
  out.alpha_hat = std::numeric_limits<double>::infinity();
  out.exact = ball_vertices.has_value();
  std::vector<std::size_t> idx(n, 0);
  for (const auto& f : faces) {
    if (f.empty()) throw Error("no face of a set meets the ball", "x_bar_outside");
  }
  for (;;) {
    ++out.face_tuples;
    std::vector<Vector> gens;
    for (int i = 0; i < n; ++i) {
      for (const auto& g : faces[i][idx[i]].normals) {
        Vector e = Vector::Zero(n * d);
        block(e, i, d) = g;
        gens.push_back(std::move(e));
      }
    }
    TupleMin best;
    if (!gens.empty()) {
      Matrix G(n * d, static_cast<Eigen::Index>(gens.size()));
      for (std::size_t j = 0; j < gens.size(); ++j) G.col(j) = gens[j];
      auto consider = [&](const std::optional<Vector>& y) {
        if (!y) return false;
        const double r = ratio(*y);
        if (r < best.ratio - 1e-13) {
          best = {r, *y};
          return true;
        }
        return false;
      };
      if (ball_vertices) {
        for (const auto& u : *ball_vertices) consider(min_sum_along(G, u, S, base_dual));
      } else {
        // Linearize |y|_* at the current tuple and re-solve until no progress,
        // from every generator and every pair of generators.
        std::vector<Vector> starts = gens;
        for (std::size_t j = 0; j < gens.size(); ++j) {
          for (std::size_t k = j + 1; k < gens.size(); ++k) starts.push_back(gens[j] + gens[k]);
        }
        for (const auto& y0 : starts) {
          if (c.norm->dual(y0) <= 1e-14) continue;
          Vector y = y0;
          consider(y);
          double current = ratio(y);
          for (int it = 0; it < 30; ++it) {
            const auto next = min_sum_along(G, c.norm->dual_support(y), S, base_dual);
            if (!next || !(ratio(*next) < current - 1e-13)) break;
            y = *next;
            current = ratio(y);
            consider(y);
          }
        }
      }
    }
    if (best.ratio < out.alpha_hat) {
      out.alpha_hat = best.ratio;
      const double h = c.norm->dual(best.y);
      out.x_star = split(best.y / h, d);
      out.points.clear();
      for (int i = 0; i < n; ++i) out.points.push_back(faces[i][idx[i]].point);
    }
    int k = 0;
    while (k < n && ++idx[k] == faces[k].size()) idx[k++] = 0;
    if (k == n) break;
  }
  return out;
}

namespace {

// Constant of C3..C6 for (base, norm): closed form when recognized, else the
// sampled estimate, which must be certified.
double compat_constant(Condition cond, const Collection& c, const SamplingBudget& budget) {
  if (auto a = analytic_product_constants(*c.norm, c.base)) {
    return (*a)[static_cast<int>(cond) - static_cast<int>(Condition::C3)];
  }
  NormFamily fam{c.base, nullptr, nullptr, c.norm};
  const KappaReport r = estimate_kappa(cond, fam, budget);
  if (!r.certified) throw Error(to_string(cond) + " constant is not certified", to_string(cond));
  return r.kappa();
}

Cone product_normal(const Collection& c, const std::vector<Vector>& x) {
  return normal_cone(*SetExpr::product(c.sets), concat(x), Flavor::frechet).cone;
}

bool all_convex(const Collection& c) {
  for (const auto& s : c.sets) {
    if (!s->convex()) return false;
  }
  return true;
}

}  // namespace

DualStationarityCertificate dual_stationarity_certificate(const Collection& c, double alpha, double beta, double eps,
                                                          double tau, const DualOptions& opt) {
  c.validate();
  if (!(alpha > 0.0) || !(beta > alpha) || !(eps > 0.0)) throw Error("need 0 < alpha < beta and eps > 0");
  if (!(tau > 0.0 && tau < 1.0)) throw Error("tau must lie in (0, 1)");
  const int n = c.n();
  const int d = c.d();
  const double kappa = compat_constant(Condition::C6, c, opt.kappa_budget);
  compat_constant(Condition::C5, c, opt.kappa_budget);

  const double xi = 0.5 * std::min({0.5 * (1.0 - tau), 0.5 * (-alpha + std::sqrt(alpha * alpha + 4.0 * eps)),
                                    (beta - alpha) / (kappa + beta)});
  const AlphaScan scan = check_alpha_stationary(c, alpha, xi * xi, opt.budget);
  if (!scan.witness) {
    throw Error("no approximate " + std::to_string(alpha) + "-stationarity witness within the search budget",
                "witness_unavailable");
  }
  const StationarityWitness& w = *scan.witness;

  DualStationarityCertificate out;
  out.alpha = alpha;
  out.beta = beta;
  out.eps = eps;
  out.tau = tau;
  out.xi = xi;
  out.kappa = kappa;
  out.rho = w.rho;
  out.eps_prime = alpha * w.rho;
  out.delta = alpha * std::sqrt(w.rho);
  out.x_prime = w.x;
  out.a = w.a;
  out.witness = w;

  LocalProblem prob;
  prob.sets = c.sets;
  prob.x_bar = c.x_bar;
  prob.rho = w.rho;
  prob.eps = out.eps_prime;
  prob.delta = out.delta;
  prob.base = c.base;
  prob.norm = c.norm;
  prob.omega = w.x;
  // Convex sets take the exact sum rule; otherwise the tau variant with a
  // tau above tau + 2 xi keeps the final alignment bound.
  if (!all_convex(c)) prob.tau = 0.5 * (tau + 2.0 * xi + 1.0);
  const LocalCertificate lc = separate_shifted(prob, add(w.x, w.a), opt.separate);

  out.x = lc.x;
  out.x0 = lc.x0;
  const Cone cone = product_normal(c, out.x);
  const ConeDistance cd = cone_distance(concat(lc.x_star), cone, *dual_of(c.norm));
  const double len = c.norm->dual(cd.witness);
  if (!(len > 0.0)) throw Error("projected normal tuple vanishes", "unit_norm");
  const Vector xs = cd.witness / len;
  out.x_star = split(xs, d);
  out.flavor = Flavor::frechet;
  out.sum_norm = c.base->dual(sum_blocks(xs, n, d));
  out.sum_bound = (alpha + kappa * xi) / (1.0 - xi);
  out.unit = c.norm->dual(xs);
  out.cone_residual = cone_distance(xs, cone, *euclidean(n * d)).value;
  std::vector<Vector> offsets;
  for (int i = 0; i < n; ++i) offsets.push_back(out.x0 + out.a[i] + out.x_prime[i] - out.x[i]);
  out.m = c.norm->eval(concat(offsets));
  out.alignment = xs.dot(concat(offsets));

  const auto rep = verify_dual_certificate(out, c);
  if (!rep.ok()) throw Error("certificate fails " + rep.first_failure(), rep.first_failure());
  return out;
}

VerificationReport verify_dual_certificate(const DualStationarityCertificate& cert, const Collection& c,
                                           const Tolerances& tol) {
  VerificationReport rep;
  auto& ch = rep.checks;
  const int n = c.n();
  const int d = c.d();
  if (static_cast<int>(cert.x.size()) != n || static_cast<int>(cert.x_prime.size()) != n ||
      static_cast<int>(cert.a.size()) != n || static_cast<int>(cert.x_star.size()) != n) {
    ch.push_back({"shape", 1.0, 0.0, "<=", false});
    return rep;
  }
  bool inside = true;
  for (int i = 0; i < n; ++i) {
    inside = inside && contains(*c.sets[i], cert.x[i], tol.feasibility) &&
             contains(*c.sets[i], cert.x_prime[i], tol.feasibility);
  }
  ch.push_back(at_most("in_sets", inside ? 0.0 : 1.0, 0.0));
  if (!inside) return rep;
  ch.push_back(below("points_near", tuple_dist(c, cert.x), cert.eps, tol.strict_margin));
  ch.push_back(below("witness_points_near", tuple_dist(c, cert.x_prime), cert.eps, tol.strict_margin));
  ch.push_back(below("perturbation", c.norm->eval(concat(cert.a)), cert.eps, tol.strict_margin));
  ch.push_back(below("x0_small", c.base->eval(cert.x0), cert.eps, tol.strict_margin));
  const Vector xs = concat(cert.x_star);
  ch.push_back(below("sum_below_beta", c.base->dual(sum_blocks(xs, n, d)), cert.beta, tol.strict_margin));
  ch.push_back(at_most("unit_norm", std::abs(c.norm->dual(xs) - 1.0), tol.report));
  ch.push_back(at_most("normal_cone", cone_distance(xs, product_normal(c, cert.x), *euclidean(n * d)).value,
                       tol.cone_membership));
  std::vector<Vector> offsets;
  for (int i = 0; i < n; ++i) offsets.push_back(cert.x0 + cert.a[i] + cert.x_prime[i] - cert.x[i]);
  ch.push_back(above("tau_alignment", xs.dot(concat(offsets)), cert.tau * c.norm->eval(concat(offsets)),
                     tol.strict_margin));
  return rep;
}

StationarityWitness dual_to_primal(const Collection& c, double beta, double alpha, double eps,
                                   const SimplifiedCertificate& cert, const SamplingBudget& kappa_budget) {
  c.validate();
  if (!(alpha > beta) || !(beta > 0.0)) throw Error("need alpha > beta > 0", "order");
  const int n = c.n();
  const int d = c.d();
  if (static_cast<int>(cert.x.size()) != n || static_cast<int>(cert.x_star.size()) != n) {
    throw DimensionError("certificate needs one point and one normal per set");
  }
  const Tolerances tol;
  const Vector xs = concat(cert.x_star);
  const Vector xh = concat(cert.x);
  bool inside = true;
  for (int i = 0; i < n; ++i) inside = inside && contains(*c.sets[i], cert.x[i], tol.feasibility);
  if (!inside || !(tuple_dist(c, cert.x) < eps) || std::abs(c.norm->dual(xs) - 1.0) > tol.report ||
      !(c.base->dual(sum_blocks(xs, n, d)) < beta) ||
      cone_distance(xs, product_normal(c, cert.x), *euclidean(n * d)).value > tol.cone_membership) {
    throw Error("the dual certificate does not satisfy its conditions", "certificate");
  }
  const double kappa = compat_constant(Condition::C5, c, kappa_budget);
  const double xi = 0.5 * (alpha - beta);
  const double xi_prime = alpha - beta - xi;
  const double q = xi / (kappa + alpha);
  const Vector v = c.norm->dual_support(xs);

  // Frechet radius: <x*, w - x> <= q |w - x| on the product within
  // (kappa + alpha) rho of x, checked per piece as a convex program.
  auto frechet_ok = [&](double rho) {
    for (const auto& piece : SetExpr::product(c.sets)->pieces()) {
      ConvexProgram prog(n * d);
      prog.linear = -xs;
      prog.rows = piece.rows;
      prog.terms.push_back({c.norm, Matrix::Identity(n * d, n * d), -xh, q});
      prog.bounds.push_back({c.norm, Matrix::Identity(n * d, n * d), -xh, (kappa + alpha) * rho});
      for (const auto& b : piece.balls) {
        const Matrix map = b.map.size() ? b.map : Matrix::Identity(n * d, n * d);
        prog.bounds.push_back({b.norm, map, -b.center, b.radius});
      }
      const ConvexResult r = minimize(prog);
      if (r.status == ConvexStatus::infeasible) continue;
      if (r.lower_bound < -xs.dot(xh) - 1e-9) return false;
    }
    return true;
  };

  double rho = 0.5 * eps;
  Vector violating;
  for (int halving = 0; halving <= 20; ++halving, rho *= 0.5) {
    if (!frechet_ok(rho)) continue;
    const auto a = split(v * ((alpha - 0.5 * xi_prime) * rho), d);
    const auto e = shifted_emptiness(c.sets, add(cert.x, a), Vector::Zero(d), rho, *c.base);
    if (!e.empty) {
      if (e.point) violating = *e.point;
      continue;
    }
    StationarityWitness w;
    w.alpha = alpha;
    w.eps = eps;
    w.rho = rho;
    w.x = cert.x;
    w.a = a;
    w.x_dist = tuple_dist(c, cert.x);
    w.a_norm = c.norm->eval(concat(a));
    return w;
  }
  std::string where;
  for (Eigen::Index j = 0; j < violating.size(); ++j) where += (j ? ", " : "") + std::to_string(violating(j));
  throw Error("intersection still meets the ball after 20 halvings (common point [" + where + "])", "nonempty");
}

bool SuiteReport::agree() const {
  for (const auto& r : rows) {
    if (r.holds != rows.front().holds) return false;
  }
  return true;
}

namespace {

const std::vector<double> kAlphaSchedule{1.0, 0.1, 0.01};
const std::vector<double> kRhoList{10.0, 1.0, 0.1, 0.01};

std::string budget_note(const ScanStats& s) {
  return std::to_string(s.tested) + " configurations over " + std::to_string(s.directions) + " directions";
}

// Approximate alpha-stationarity for every alpha and eps of the schedules.
SuiteRow approximate_stationarity(const Collection& c, const SearchBudget& b) {
  SuiteRow row{"approximate_stationarity", true, ""};
  long tested = 0;
  for (double alpha : kAlphaSchedule) {
    for (double eps : b.eps_schedule) {
      const AlphaScan scan = check_alpha_stationary(c, alpha, eps, b);
      tested += scan.stats.tested;
      if (!scan.witness) {
        row.holds = false;
        row.note = "none found for alpha " + std::to_string(alpha) + ", eps " + std::to_string(eps) + " after " +
                   std::to_string(tested) + " configurations";
        return row;
      }
    }
  }
  row.note = "witness for every alpha and eps of the schedules";
  return row;
}

}  // namespace

SuiteReport convex_equivalence_suite(const Collection& c, const SearchBudget& b) {
  c.validate();
  if (!all_convex(c)) throw Error("the equivalence suite needs convex sets", "nonconvex");
  SuiteReport out;

  int extremal_radii = 0;
  std::string first_miss;
  for (double rho : kRhoList) {
    const ScheduleResult r = check_extremal(c, rho, b);
    if (r.all_found()) {
      ++extremal_radii;
    } else if (first_miss.empty()) {
      first_miss = "radius " + std::to_string(rho) + ": " + budget_note(r.stats);
    }
  }
  out.rows.push_back({"local_extremality", extremal_radii > 0,
                      extremal_radii > 0 ? "shifts for every eps at some radius" : "none found; " + first_miss});

  const ScheduleResult st = check_stationary(c, b);
  out.rows.push_back({"stationarity", st.all_found(),
                      st.all_found() ? "witness for every eps" : "none found; " + budget_note(st.stats)});

  out.rows.push_back(approximate_stationarity(c, b));

  const bool global = extremal_radii == static_cast<int>(kRhoList.size());
  out.rows.push_back({"global_perturbation", global,
                      global ? "shifts for every eps and radius" : "fails; " + (first_miss.empty() ? "" : first_miss)});
  return out;
}

SuiteReport extended_ep_suite(const Collection& c, const SearchBudget& b) {
  c.validate();
  compat_constant(Condition::C4, c, {4000, b.seed});
  SuiteReport out;
  out.rows.push_back(approximate_stationarity(c, b));

  const std::vector<double> bounds{0.5, 0.2};
  SuiteRow full{"full_dual_conditions", true, "certificate for every eps"};
  DualOptions opt;
  opt.budget = b;
  for (double eps : bounds) {
    try {
      dual_stationarity_certificate(c, 0.5 * eps, eps, eps, 0.5, opt);
    } catch (const Error& e) {
      full.holds = false;
      full.note = "eps " + std::to_string(eps) + ": " + e.label();
      break;
    }
  }
  out.rows.push_back(full);

  SuiteRow simple{"simplified_dual_conditions", true, ""};
  bool polyhedral = true;
  for (const auto& s : c.sets) {
    const auto p = s->pieces();
    polyhedral = polyhedral && p.size() == 1 && p.front().polyhedral();
  }
  if (polyhedral) {
    for (double eps : bounds) {
      const auto t = transversality_constant(c, eps);
      if (!(t.alpha_hat < eps)) {
        simple.holds = false;
        simple.note = "smallest sum " + std::to_string(t.alpha_hat) + " at radius " + std::to_string(eps);
        break;
      }
    }
    if (simple.holds) simple.note = "unit normal tuples with small sums near x_bar";
  } else {
    simple.holds = full.holds;
    simple.note = "field projection of the full conditions";
  }
  out.rows.push_back(simple);
  return out;
}

}  // namespace gsep
