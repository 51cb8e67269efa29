#include "gsep/sets.hpp"

#include <algorithm>
#include <cmath>

namespace gsep {
namespace {

double row_scale(const lp::Row& r) { return std::max(1.0, r.a.norm()); }

bool row_active(const lp::Row& r, const Vector& x, double tol) {
  return std::abs(r.a.dot(x) - r.b) <= tol * row_scale(r);
}

Vector to_vector(const nlohmann::json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

nlohmann::json from_vector(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Matrix embed_map(const Matrix& map, int dim, int offset, int total) {
  Matrix out = Matrix::Zero(map.size() ? map.rows() : dim, total);
  if (map.size()) {
    out.middleCols(offset, dim) = map;
  } else {
    out.middleCols(offset, dim) = Matrix::Identity(dim, dim);
  }
  return out;
}

}  // namespace

// ConvexPiece ----------------------------------------------------------------

bool ConvexPiece::contains(const Vector& x, double tol) const {
  require_dim(x.size(), dim, "piece membership");
  for (const auto& r : rows) {
    if (r.a.dot(x) - r.b > tol * row_scale(r)) return false;
  }
  for (const auto& b : balls) {
    const double v = b.value(x);
    if (b.closed ? v > b.radius + tol : v >= b.radius) return false;
  }
  return true;
}

ConvexPiece ConvexPiece::translated(const Vector& shift) const {
  require_dim(shift.size(), dim, "piece translation");
  ConvexPiece out = *this;
  for (auto& r : out.rows) r.b += r.a.dot(shift);
  for (auto& b : out.balls) b.center += b.local(shift);
  return out;
}

ConvexPiece ConvexPiece::embedded(int offset, int total) const {
  ConvexPiece out;
  out.dim = total;
  for (const auto& r : rows) {
    Vector a = Vector::Zero(total);
    a.segment(offset, dim) = r.a;
    out.rows.push_back({a, r.b, r.type});
  }
  for (const auto& b : balls) {
    BallConstraint e = b;
    e.map = embed_map(b.map, dim, offset, total);
    out.balls.push_back(e);
  }
  return out;
}

ConvexPiece intersect(const ConvexPiece& a, const ConvexPiece& b) {
  require_dim(a.dim, b.dim, "piece intersection");
  ConvexPiece out = a;
  out.rows.insert(out.rows.end(), b.rows.begin(), b.rows.end());
  out.balls.insert(out.balls.end(), b.balls.begin(), b.balls.end());
  return out;
}

// SetExpr --------------------------------------------------------------------

SetPtr SetExpr::polyhedron(std::vector<lp::Row> rows, int dim) {
  auto s = std::make_shared<SetExpr>();
  s->kind_ = Kind::polyhedron;
  s->dim_ = dim;
  for (const auto& r : rows) {
    require_dim(r.a.size(), dim, "polyhedron row");
    if (!r.a.allFinite() || !std::isfinite(r.b)) throw Error("polyhedron rows must be finite", "schema");
  }
  s->rows_ = std::move(rows);
  return s;
}

SetPtr SetExpr::ball(Vector center, double radius, NormPtr norm, bool closed) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error("ball radius must be positive", "schema");
  require_dim(norm->dim(), center.size(), "ball norm");
  auto s = std::make_shared<SetExpr>();
  s->kind_ = Kind::ball;
  s->dim_ = static_cast<int>(center.size());
  s->ball_ = {std::move(norm), std::move(center), radius, closed, Matrix()};
  return s;
}

SetPtr SetExpr::translate(SetPtr inner, Vector shift) {
  require_dim(shift.size(), inner->dim(), "translation");
  auto s = std::make_shared<SetExpr>();
  s->kind_ = Kind::translate;
  s->dim_ = inner->dim();
  s->shift_ = std::move(shift);
  s->members_ = {std::move(inner)};
  return s;
}

SetPtr SetExpr::set_union(std::vector<SetPtr> members) {
  if (members.empty()) throw Error("union needs at least one member", "schema");
  auto s = std::make_shared<SetExpr>();
  s->kind_ = Kind::set_union;
  s->dim_ = members.front()->dim();
  for (const auto& m : members) require_dim(m->dim(), s->dim_, "union member");
  s->members_ = std::move(members);
  return s;
}

SetPtr SetExpr::product(std::vector<SetPtr> members) {
  if (members.empty()) throw Error("product needs at least one member", "schema");
  auto s = std::make_shared<SetExpr>();
  s->kind_ = Kind::product;
  for (const auto& m : members) s->dim_ += m->dim();
  s->members_ = std::move(members);
  return s;
}

bool SetExpr::convex() const {
  switch (kind_) {
    case Kind::polyhedron:
    case Kind::ball:
      return true;
    case Kind::translate:
      return inner()->convex();
    case Kind::set_union:
      return members_.size() == 1 && members_.front()->convex();
    case Kind::product:
      return std::all_of(members_.begin(), members_.end(), [](const SetPtr& m) { return m->convex(); });
  }
  return false;
}

std::vector<ConvexPiece> SetExpr::pieces() const {
  switch (kind_) {
    case Kind::polyhedron:
      return {ConvexPiece{dim_, rows_, {}}};
    case Kind::ball: {
      ConvexPiece p{dim_, {}, {}};
      auto facets = ball_.closed ? ball_.norm->facets() : std::nullopt;
      if (facets) {
        for (const auto& a : *facets) p.rows.push_back({a, ball_.radius + a.dot(ball_.center), lp::RowType::le});
      } else {
        p.balls.push_back(ball_);
      }
      return {p};
    }
    case Kind::translate: {
      auto out = inner()->pieces();
      for (auto& p : out) p = p.translated(shift_);
      return out;
    }
    case Kind::set_union: {
      std::vector<ConvexPiece> out;
      for (const auto& m : members_) {
        auto p = m->pieces();
        out.insert(out.end(), p.begin(), p.end());
      }
      return out;
    }
    case Kind::product: {
      std::vector<ConvexPiece> acc = {ConvexPiece{dim_, {}, {}}};
      int offset = 0;
      for (const auto& m : members_) {
        std::vector<ConvexPiece> next;
        for (const auto& a : acc) {
          for (const auto& p : m->pieces()) next.push_back(intersect(a, p.embedded(offset, dim_)));
        }
        acc = std::move(next);
        offset += m->dim();
      }
      return acc;
    }
  }
  return {};
}

nlohmann::json SetExpr::to_json() const {
  switch (kind_) {
    case Kind::polyhedron: {
      nlohmann::json rows = nlohmann::json::array(), bounds = nlohmann::json::array();
      for (const auto& r : rows_) {
        rows.push_back(from_vector(r.a));
        bounds.push_back(r.b);
      }
      return {{"kind", "polyhedron"}, {"rows", rows}, {"bounds", bounds}};
    }
    case Kind::ball:
      return {{"kind", "ball"},
              {"center", from_vector(ball_.center)},
              {"radius", ball_.radius},
              {"norm", ball_.norm->to_json()},
              {"closed", ball_.closed}};
    case Kind::translate:
      return {{"kind", "translate"}, {"inner", inner()->to_json()}, {"shift", from_vector(shift_)}};
    case Kind::set_union:
    case Kind::product: {
      nlohmann::json m = nlohmann::json::array();
      for (const auto& s : members_) {
        nlohmann::json e = s->to_json();
        if (kind_ == Kind::product) e["dim"] = s->dim();
        m.push_back(e);
      }
      return {{"kind", kind_ == Kind::set_union ? "union" : "product"}, {"members", m}};
    }
  }
  return {};
}

SetPtr SetExpr::from_json(const nlohmann::json& j, int dim) {
  if (!j.is_object() || !j.contains("kind")) throw Error("set: expected an object with \"kind\"", "schema");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "polyhedron") {
    const auto& rows = j.at("rows");
    const auto& bounds = j.at("bounds");
    if (rows.size() != bounds.size()) throw Error("polyhedron: rows and bounds differ in length", "schema");
    std::vector<lp::Row> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Vector a = to_vector(rows[i]);
      require_dim(a.size(), dim, "polyhedron row");
      out.push_back({a, bounds[i].get<double>(), lp::RowType::le});
    }
    return polyhedron(std::move(out), dim);
  }
  if (kind == "ball") {
    Vector c = to_vector(j.at("center"));
    require_dim(c.size(), dim, "ball center");
    return ball(c, j.at("radius").get<double>(), base_norm_from_json(j.at("norm"), dim), j.value("closed", true));
  }
  if (kind == "translate") {
    Vector a = to_vector(j.at("shift"));
    require_dim(a.size(), dim, "translation shift");
    return translate(from_json(j.at("inner"), dim), a);
  }
  if (kind == "union") {
    std::vector<SetPtr> m;
    for (const auto& e : j.at("members")) m.push_back(from_json(e, dim));
    return set_union(std::move(m));
  }
  if (kind == "product") {
    // Members carry their own dimension.
    std::vector<SetPtr> m;
    for (const auto& e : j.at("members")) m.push_back(from_json(e, e.at("dim").get<int>()));
    return product(std::move(m));
  }
  throw Error("unknown set kind \"" + kind + "\"", "schema");
}

// Queries ----------------------------------------------------------------------

bool contains(const SetExpr& s, const Vector& x, double tol) {
  require_dim(x.size(), s.dim(), "set membership");
  switch (s.kind()) {
    case SetExpr::Kind::polyhedron:
      return ConvexPiece{s.dim(), s.rows(), {}}.contains(x, tol);
    case SetExpr::Kind::ball:
      return ConvexPiece{s.dim(), {}, {s.ball_constraint()}}.contains(x, tol);
    case SetExpr::Kind::translate:
      return contains(*s.inner(), x - s.shift(), tol);
    case SetExpr::Kind::set_union:
      return std::any_of(s.members().begin(), s.members().end(),
                         [&](const SetPtr& m) { return contains(*m, x, tol); });
    case SetExpr::Kind::product: {
      int off = 0;
      for (const auto& m : s.members()) {
        if (!contains(*m, x.segment(off, m->dim()), tol)) return false;
        off += m->dim();
      }
      return true;
    }
  }
  return false;
}

std::optional<SetProjection> project_piece(const ConvexPiece& p, const Vector& x, const Norm& n,
                                           const ConvexOptions& opt) {
  require_dim(x.size(), p.dim, "projection point");
  require_dim(n.dim(), p.dim, "projection norm");
  if (p.polyhedral()) {
    if (!lp::polyhedron_feasible(p.rows, p.dim, opt.lp).feasible) return std::nullopt;
  }
  ConvexProgram prog(p.dim);
  prog.rows = p.rows;
  auto shared = std::shared_ptr<const Norm>(&n, [](const Norm*) {});
  prog.terms.push_back({shared, Matrix::Identity(p.dim, p.dim), -x, 1.0});
  for (const auto& b : p.balls) {
    const Matrix map = b.map.size() ? b.map : Matrix::Identity(p.dim, p.dim);
    prog.bounds.push_back({b.norm, map, -b.center, b.radius});
  }
  const ConvexResult r = minimize(prog, opt);
  if (r.status == ConvexStatus::infeasible) return std::nullopt;
  if (r.z.size() == 0) throw Error("projection: no feasible iterate within the iteration budget");
  return SetProjection{r.z, n.eval(r.z - x), std::max(0.0, r.lower_bound)};
}

SetProjection project(const SetExpr& s, const Vector& x, const Norm& n, const ConvexOptions& opt) {
  std::optional<SetProjection> best;
  for (const auto& p : s.pieces()) {
    auto r = project_piece(p, x, n, opt);
    if (r && (!best || r->distance < best->distance)) best = r;
  }
  if (!best) throw Error("projection onto an empty set");
  return *best;
}

std::optional<Vector> piece_point(const ConvexPiece& p) {
  if (p.polyhedral()) {
    auto f = lp::polyhedron_feasible(p.rows, p.dim);
    if (!f.feasible) return std::nullopt;
    return f.witness;
  }
  // Nearest point to the first ball center.
  const Vector c = p.balls.front().map.size()
                       ? Vector(p.balls.front().map.transpose() * p.balls.front().center)
                       : p.balls.front().center;
  auto r = project_piece(p, c, *euclidean(p.dim));
  if (!r) return std::nullopt;
  return r->point;
}

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::frechet:
      return "frechet";
    case Flavor::clarke:
      return "clarke";
    case Flavor::convex:
      return "convex";
  }
  return "";
}

namespace {

// Outward normals of the constraints active at x (x assumed in the set).
std::vector<Vector> active_normals(const SetExpr& s, const Vector& x, double tol) {
  std::vector<Vector> gens;
  if (s.kind() == SetExpr::Kind::polyhedron) {
    for (const auto& r : s.rows()) {
      if (row_active(r, x, tol) && r.a.norm() > 0) gens.push_back(r.a);
    }
  } else {
    const auto& b = s.ball_constraint();
    if (!b.closed) return gens;
    const Vector off = x - b.center;
    if (b.norm->eval(off) < b.radius - tol) return gens;
    if (auto facets = b.norm->facets()) {
      for (const auto& a : *facets) {
        if (a.dot(off) >= b.radius - tol) gens.push_back(a);
      }
    } else {
      gens.push_back(b.norm->support(off));
    }
  }
  return gens;
}

Cone block_product(const std::vector<Cone>& cones) {
  int total = 0;
  for (const auto& c : cones) total += c.dim;
  std::vector<Vector> gens;
  int off = 0;
  for (const auto& c : cones) {
    for (const auto& g : c.generators) {
      Vector e = Vector::Zero(total);
      e.segment(off, c.dim) = g;
      gens.push_back(e);
    }
    off += c.dim;
  }
  return Cone(total, std::move(gens));
}

Cone normal_rec(const SetExpr& s, const Vector& x, Flavor flavor, double tol) {
  switch (s.kind()) {
    case SetExpr::Kind::polyhedron:
    case SetExpr::Kind::ball:
      return prune(Cone(s.dim(), active_normals(s, x, tol)));
    case SetExpr::Kind::translate:
      return normal_rec(*s.inner(), x - s.shift(), flavor, tol);
    case SetExpr::Kind::set_union: {
      std::vector<const SetExpr*> active;
      for (const auto& m : s.members()) {
        if (contains(*m, x, tol)) active.push_back(m.get());
      }
      if (flavor == Flavor::clarke && (active.size() > 1 || !active.front()->convex())) {
        throw Error("Clarke normal cone of a nonconvex union is not supported", "N^C");
      }
      Cone c = normal_rec(*active.front(), x, flavor, tol);
      for (std::size_t i = 1; i < active.size(); ++i) c = cone_intersect(c, normal_rec(*active[i], x, flavor, tol));
      return c;
    }
    case SetExpr::Kind::product: {
      std::vector<Cone> parts;
      int off = 0;
      for (const auto& m : s.members()) {
        parts.push_back(normal_rec(*m, x.segment(off, m->dim()), flavor, tol));
        off += m->dim();
      }
      return block_product(parts);
    }
  }
  return Cone(s.dim());
}

Cone tangent_rec(const SetExpr& s, const Vector& x, double tol) {
  switch (s.kind()) {
    case SetExpr::Kind::polyhedron:
    case SetExpr::Kind::ball:
      return cone_from_halfspaces(active_normals(s, x, tol), s.dim());
    case SetExpr::Kind::translate:
      return tangent_rec(*s.inner(), x - s.shift(), tol);
    case SetExpr::Kind::set_union:
      return tangent_rec(*s.members().front(), x, tol);
    case SetExpr::Kind::product: {
      std::vector<Cone> parts;
      int off = 0;
      for (const auto& m : s.members()) {
        parts.push_back(tangent_rec(*m, x.segment(off, m->dim()), tol));
        off += m->dim();
      }
      return block_product(parts);
    }
  }
  return Cone(s.dim());
}

}  // namespace

ConeAtPoint normal_cone(const SetExpr& s, const Vector& x, Flavor flavor, double tol) {
  require_dim(x.size(), s.dim(), "normal cone point");
  if (!contains(s, x, tol)) throw Error("normal cone requested at a point outside the set", "N(x)");
  if (flavor == Flavor::convex && !s.convex()) throw Error("convex normal cone of a nonconvex set", "N(x)");
  return {x, normal_rec(s, x, flavor, tol), flavor, tol, {}};
}

ConeAtPoint tangent_cone(const SetExpr& s, const Vector& x, double tol) {
  require_dim(x.size(), s.dim(), "tangent cone point");
  if (!s.convex()) throw Error("tangent cone is supported for convex sets only", "T^C");
  if (!contains(s, x, tol)) throw Error("tangent cone requested at a point outside the set", "T^C");
  return {x, tangent_rec(s, x, tol), Flavor::convex, tol, {}};
}

ConeAtPoint product_cone(const std::vector<ConeAtPoint>& cones, const KappaReport* c3, const KappaReport* c4) {
  if (cones.empty()) throw Error("product of an empty cone list");
  ConeAtPoint out;
  out.flavor = cones.front().flavor;
  out.activity_tol = cones.front().activity_tol;
  std::vector<Vector> pts;
  std::vector<Cone> parts;
  for (const auto& c : cones) {
    if (c.flavor != out.flavor) throw Error("product cone members must share a flavor");
    pts.push_back(c.point);
    parts.push_back(c.cone);
    out.warnings.insert(out.warnings.end(), c.warnings.begin(), c.warnings.end());
  }
  out.point = concat(pts);
  out.cone = block_product(parts);
  if (!c3 || !c3->certified) out.warnings.push_back("C3 not certified for the product norm in force");
  if (!c4 || !c4->certified) out.warnings.push_back("C4 not certified for the product norm in force");
  return out;
}

}  // namespace gsep
