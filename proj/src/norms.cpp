#include "gsep/norms.hpp"

#include "gsep/cone.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace gsep {
namespace {

nlohmann::json p_to_json(double p) {
  if (p == kInf) return "inf";
  return p;
}

double p_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    throw Error("norm exponent: expected a number or \"inf\"", "schema");
  }
  const double p = j.get<double>();
  if (!(p >= 1.0)) throw Error("norm exponent must lie in [1, inf]", "schema");
  return p;
}

// u with ‖u‖_* = 1 and <u, x> = ‖x‖ for the weighted lp norm (p, w).
Vector lp_support(const Vector& x, double p, const Vector& w) {
  const int d = static_cast<int>(x.size());
  Vector u = Vector::Zero(d);
  if (x.isZero(0.0)) {
    // Any unit dual vector; take the first coordinate.
    u(0) = w(0);
    return u;
  }
  if (p == kInf) {
    int k = 0;
    for (int i = 1; i < d; ++i) {
      if (w(i) * std::abs(x(i)) > w(k) * std::abs(x(k))) k = i;
    }
    u(k) = w(k) * (x(k) > 0 ? 1.0 : -1.0);
    return u;
  }
  if (p == 1.0) {
    for (int i = 0; i < d; ++i) {
      if (x(i) != 0.0) u(i) = w(i) * (x(i) > 0 ? 1.0 : -1.0);
    }
    return u;
  }
  double n = 0.0;
  for (int i = 0; i < d; ++i) n += std::pow(w(i) * std::abs(x(i)), p);
  n = std::pow(n, 1.0 / p);
  for (int i = 0; i < d; ++i) {
    const double a = std::abs(x(i)) / n;
    u(i) = std::pow(w(i), p) * std::pow(a, p - 1.0) * (x(i) > 0 ? 1.0 : (x(i) < 0 ? -1.0 : 0.0));
  }
  return u;
}

double lp_eval(const Vector& x, double p, const Vector& w) {
  const Vector s = (w.array() * x.array().abs()).matrix();
  if (p == kInf) return s.size() ? s.maxCoeff() : 0.0;
  if (p == 1.0) return s.sum();
  if (p == 2.0) return s.norm();
  const double m = s.size() ? s.maxCoeff() : 0.0;
  if (m == 0.0) return 0.0;
  return m * std::pow((s / m).array().pow(p).sum(), 1.0 / p);
}

}  // namespace

double conjugate_exponent(double p) {
  if (p == 1.0) return kInf;
  if (p == kInf) return 1.0;
  return p / (p - 1.0);
}

// LpNorm --------------------------------------------------------------------

LpNorm::LpNorm(int dim, double p, Vector weights) : dim_(dim), p_(p), w_(std::move(weights)) {
  if (dim < 1) throw Error("lp norm dimension must be positive", "schema");
  if (!(p >= 1.0)) throw Error("lp norm exponent must lie in [1, inf]", "schema");
  if (w_.size() == 0) w_ = Vector::Ones(dim);
  require_dim(w_.size(), dim, "lp norm weights");
  if ((w_.array() <= 0.0).any() || !w_.allFinite()) throw Error("lp norm weights must be positive", "schema");
}

double LpNorm::eval(const Vector& x) const {
  require_dim(x.size(), dim_, "lp norm argument");
  return lp_eval(x, p_, w_);
}

double LpNorm::dual(const Vector& y) const {
  require_dim(y.size(), dim_, "lp dual argument");
  return lp_eval(y, conjugate_exponent(p_), w_.cwiseInverse());
}

Vector LpNorm::support(const Vector& x) const { return lp_support(x, p_, w_); }

Vector LpNorm::dual_support(const Vector& y) const {
  return lp_support(y, conjugate_exponent(p_), w_.cwiseInverse());
}

std::optional<std::vector<Vector>> LpNorm::facets() const {
  std::vector<Vector> out;
  if (p_ == kInf) {
    for (int i = 0; i < dim_; ++i) {
      out.push_back(w_(i) * Vector::Unit(dim_, i));
      out.push_back(-w_(i) * Vector::Unit(dim_, i));
    }
    return out;
  }
  if (p_ == 1.0 && dim_ <= 9) {
    for (int mask = 0; mask < (1 << dim_); ++mask) {
      Vector a(dim_);
      for (int i = 0; i < dim_; ++i) a(i) = (mask >> i & 1) ? -w_(i) : w_(i);
      out.push_back(a);
    }
    return out;
  }
  return std::nullopt;
}

nlohmann::json LpNorm::to_json() const {
  if (p_ == 2.0 && unit_weights()) return {{"kind", "euclidean"}};
  nlohmann::json j = {{"kind", unit_weights() ? "lp" : "weighted_lp"}, {"p", p_to_json(p_)}};
  if (!unit_weights()) j["weights"] = std::vector<double>(w_.data(), w_.data() + w_.size());
  return j;
}

// PolyhedralNorm ------------------------------------------------------------

PolyhedralNorm::PolyhedralNorm(std::vector<Vector> generators) : gens_(std::move(generators)) {
  if (gens_.empty()) throw Error("polyhedral norm needs generators", "schema");
  dim_ = static_cast<int>(gens_.front().size());
  for (const auto& g : gens_) {
    require_dim(g.size(), dim_, "polyhedral norm generator");
    if (!g.allFinite() || g.isZero(0.0)) throw Error("polyhedral norm generators must be finite and nonzero", "schema");
  }
  // Symmetric: -v must be a generator (or inside the hull) for every v.
  for (const auto& g : gens_) {
    const bool mirrored = std::any_of(gens_.begin(), gens_.end(),
                                      [&](const Vector& h) { return (g + h).norm() <= 1e-12 * (1 + g.norm()); });
    if (!mirrored) throw Error("polyhedral norm generators must be symmetric", "schema");
  }
  Matrix G(dim_, gens_.size());
  for (std::size_t j = 0; j < gens_.size(); ++j) G.col(j) = gens_[j];
  if (Eigen::FullPivLU<Matrix>(G).rank() < dim_) throw Error("polyhedral norm generators must span", "schema");

  std::vector<lp::Row> rows;
  for (const auto& g : gens_) rows.push_back({g, 1.0, lp::RowType::le});
  dual_vertices_ = polytope_vertices(rows, dim_);
}

double PolyhedralNorm::eval(const Vector& x) const {
  require_dim(x.size(), dim_, "polyhedral norm argument");
  double m = 0.0;
  for (const auto& a : dual_vertices_) m = std::max(m, a.dot(x));
  return m;
}

double PolyhedralNorm::dual(const Vector& y) const {
  require_dim(y.size(), dim_, "polyhedral dual argument");
  double m = 0.0;
  for (const auto& g : gens_) m = std::max(m, g.dot(y));
  return m;
}

Vector PolyhedralNorm::support(const Vector& x) const {
  std::size_t k = 0;
  for (std::size_t i = 1; i < dual_vertices_.size(); ++i) {
    if (dual_vertices_[i].dot(x) > dual_vertices_[k].dot(x)) k = i;
  }
  return dual_vertices_[k];
}

Vector PolyhedralNorm::dual_support(const Vector& y) const {
  std::size_t k = 0;
  for (std::size_t i = 1; i < gens_.size(); ++i) {
    if (gens_[i].dot(y) > gens_[k].dot(y)) k = i;
  }
  return gens_[k];
}

nlohmann::json PolyhedralNorm::to_json() const {
  nlohmann::json g = nlohmann::json::array();
  for (const auto& v : gens_) g.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  return {{"kind", "polyhedral"}, {"generators", g}};
}

// ScaledNorm ----------------------------------------------------------------

ScaledNorm::ScaledNorm(double gamma, NormPtr inner) : gamma_(gamma), inner_(std::move(inner)) {
  if (!(gamma_ > 0.0) || !std::isfinite(gamma_)) throw Error("norm scale must be positive", "schema");
}

std::optional<std::vector<Vector>> ScaledNorm::facets() const {
  auto f = inner_->facets();
  if (!f) return f;
  for (auto& a : *f) a *= gamma_;
  return f;
}

nlohmann::json ScaledNorm::to_json() const {
  return {{"kind", "scaled"}, {"gamma", gamma_}, {"of", inner_->to_json()}};
}

// Composition ---------------------------------------------------------------

Composition::Composition(NormPtr outer, std::vector<NormPtr> children, bool monotone_certified,
                         nlohmann::json spec)
    : outer_(std::move(outer)), children_(std::move(children)), certified_(monotone_certified),
      spec_(std::move(spec)) {
  require_dim(outer_->dim(), static_cast<Eigen::Index>(children_.size()), "composition arity");
  for (const auto& c : children_) {
    offsets_.push_back(dim_);
    dim_ += c->dim();
    blocks_ += c->blocks();
  }
}

Vector Composition::child_values(const Vector& x) const {
  require_dim(x.size(), dim_, "composition argument");
  Vector r(children_.size());
  for (std::size_t i = 0; i < children_.size(); ++i) {
    r(i) = children_[i]->eval(x.segment(offsets_[i], children_[i]->dim()));
  }
  return r;
}

double Composition::eval(const Vector& x) const { return outer_->eval(child_values(x)); }

void Composition::require_certified(const char* what) const {
  if (!certified_) {
    throw Error(std::string(what) + " requires a monotone outer norm; this composition is uncertified",
                "monotone");
  }
}

double Composition::dual(const Vector& y) const {
  require_certified("dual norm");
  require_dim(y.size(), dim_, "composition dual argument");
  Vector s(children_.size());
  for (std::size_t i = 0; i < children_.size(); ++i) {
    s(i) = children_[i]->dual(y.segment(offsets_[i], children_[i]->dim()));
  }
  return outer_->dual(s);
}

Vector Composition::support(const Vector& x) const {
  require_certified("support vector");
  const Vector lambda = outer_->support(child_values(x)).cwiseAbs();
  Vector u(dim_);
  for (std::size_t i = 0; i < children_.size(); ++i) {
    const int d = children_[i]->dim();
    u.segment(offsets_[i], d) = lambda(i) * children_[i]->support(x.segment(offsets_[i], d));
  }
  return u;
}

Vector Composition::dual_support(const Vector& y) const {
  require_certified("dual support vector");
  Vector s(children_.size());
  for (std::size_t i = 0; i < children_.size(); ++i) {
    s(i) = children_[i]->dual(y.segment(offsets_[i], children_[i]->dim()));
  }
  const Vector mu = outer_->dual_support(s).cwiseAbs();
  Vector v(dim_);
  for (std::size_t i = 0; i < children_.size(); ++i) {
    const int d = children_[i]->dim();
    v.segment(offsets_[i], d) = mu(i) * children_[i]->dual_support(y.segment(offsets_[i], d));
  }
  return v;
}

bool Composition::polyhedral() const {
  if (!outer_->polyhedral()) return false;
  return std::all_of(children_.begin(), children_.end(), [](const NormPtr& c) { return c->polyhedral(); });
}

std::optional<std::vector<Vector>> Composition::facets() const {
  if (!certified_ || !polyhedral()) return std::nullopt;
  auto outer_f = outer_->facets();
  if (!outer_f) return std::nullopt;
  std::vector<std::vector<Vector>> child_f;
  for (const auto& c : children_) {
    auto f = c->facets();
    if (!f) return std::nullopt;
    child_f.push_back(std::move(*f));
  }
  constexpr std::size_t kCap = 512;
  std::vector<Vector> out;
  std::vector<Vector> seen_lambda;
  for (const auto& a : *outer_f) {
    const Vector lambda = a.cwiseAbs();
    if (std::any_of(seen_lambda.begin(), seen_lambda.end(), [&](const Vector& l) { return l == lambda; })) continue;
    seen_lambda.push_back(lambda);
    // Odometer over child facets on the support of lambda.
    std::vector<std::size_t> idx(children_.size(), 0);
    for (;;) {
      Vector f = Vector::Zero(dim_);
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (lambda(i) != 0.0) f.segment(offsets_[i], children_[i]->dim()) = lambda(i) * child_f[i][idx[i]];
      }
      out.push_back(f);
      if (out.size() > kCap) return std::nullopt;
      std::size_t i = 0;
      for (; i < children_.size(); ++i) {
        if (lambda(i) == 0.0) continue;
        if (++idx[i] < child_f[i].size()) break;
        idx[i] = 0;
      }
      if (i == children_.size()) break;
    }
  }
  return out;
}

// Factories -----------------------------------------------------------------

NormPtr euclidean(int d) { return std::make_shared<LpNorm>(d, 2.0); }

NormPtr lp_norm(int d, double p, Vector weights) { return std::make_shared<LpNorm>(d, p, std::move(weights)); }

NormPtr polyhedral_norm(std::vector<Vector> generators) {
  return std::make_shared<PolyhedralNorm>(std::move(generators));
}

NormPtr max_of_blocks(const NormPtr& base, int n) {
  if (n < 1) throw Error("product norm needs at least one block", "schema");
  std::vector<NormPtr> ch(n, base);
  return std::make_shared<Composition>(lp_norm(n, kInf), std::move(ch), true,
                                       nlohmann::json{{"kind", "max_of_blocks"}});
}

NormPtr p_composition(double p, Vector weights, const NormPtr& base, int n) {
  if (n < 1) throw Error("product norm needs at least one block", "schema");
  auto outer = std::make_shared<LpNorm>(n, p, std::move(weights));
  nlohmann::json spec = {{"kind", "p_composition"}, {"p", p_to_json(p)}};
  if (!outer->unit_weights()) {
    spec["weights"] = std::vector<double>(outer->weights().data(), outer->weights().data() + n);
  }
  std::vector<NormPtr> ch(n, base);
  return std::make_shared<Composition>(outer, std::move(ch), true, std::move(spec));
}

NormPtr gamma_norm(const NormPtr& inner, double gamma, const NormPtr& base) {
  if (gamma == 1.0) {
    if (auto c = std::dynamic_pointer_cast<const Composition>(inner);
        c && c->to_json() == nlohmann::json{{"kind", "max_of_blocks"}} && c->children().front() == base) {
      return max_of_blocks(base, c->blocks() + 1);
    }
  }
  nlohmann::json spec = {{"kind", "gamma"}, {"gamma", gamma}, {"inner", inner->to_json()}};
  std::vector<NormPtr> ch = {inner, std::make_shared<ScaledNorm>(gamma, base)};
  return std::make_shared<Composition>(lp_norm(2, kInf), std::move(ch), true, std::move(spec));
}

namespace {

Vector random_vector(std::mt19937_64& rng, int d, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = u(rng);
  return v;
}

// Small integer lattice {-2..2}^d, enumerated in a fixed order.
std::vector<Vector> lattice(int d, int radius) {
  std::vector<Vector> out;
  const int side = 2 * radius + 1;
  long total = 1;
  for (int i = 0; i < d; ++i) total *= side;
  if (total > 4096) return out;
  for (long k = 0; k < total; ++k) {
    Vector v(d);
    long r = k;
    for (int i = 0; i < d; ++i) {
      v(i) = static_cast<double>(r % side - radius);
      r /= side;
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

MonotoneCheck check_monotone(const Norm& vn, const SamplingBudget& budget) {
  MonotoneCheck out;
  out.budget = budget;
  const int d = vn.dim();
  auto test = [&](const Vector& a, const Vector& b) {
    ++out.used;
    const double va = vn.eval(a), vb = vn.eval(b);
    if (va > vb * (1 + 1e-12) + 1e-12) {
      out.ok = false;
      out.witness = MonotoneWitness{a, b, va, vb};
      return true;
    }
    return false;
  };
  // Lattice pairs first (|a_i| <= |b_i|), then seeded random pairs.
  const auto pts = lattice(d, 2);
  for (const auto& a : pts) {
    for (const auto& b : pts) {
      if ((a.cwiseAbs().array() <= b.cwiseAbs().array()).all() && test(a, b)) return out;
    }
  }
  std::mt19937_64 rng(budget.seed);
  std::uniform_real_distribution<double> t(0.0, 1.0);
  for (int s = 0; s < budget.samples; ++s) {
    const Vector b = random_vector(rng, d, 1.0);
    Vector a(d);
    for (int i = 0; i < d; ++i) a(i) = (t(rng) < 0.5 ? -1.0 : 1.0) * t(rng) * std::abs(b(i));
    if (test(a, b)) return out;
  }
  return out;
}

TriangleCheck check_triangle(const Norm& n, const SamplingBudget& budget) {
  TriangleCheck out;
  out.budget = budget;
  const int d = n.dim();
  auto test = [&](const Vector& x, const Vector& y) {
    ++out.used;
    const double vx = n.eval(x), vy = n.eval(y), vs = n.eval(x + y);
    if (vs > (vx + vy) * (1 + 1e-12) + 1e-12) {
      out.ok = false;
      out.witness = TriangleWitness{x, y, vx, vy, vs};
      return true;
    }
    return false;
  };
  const auto pts = lattice(d, 1);
  if (pts.size() <= 81) {
    for (const auto& x : pts) {
      for (const auto& y : pts) {
        if (test(x, y)) return out;
      }
    }
  }
  std::mt19937_64 rng(budget.seed);
  for (int s = 0; s < budget.samples; ++s) {
    const Vector x = random_vector(rng, d, 1.0);
    const Vector y = random_vector(rng, d, 1.0);
    if (test(x, y)) return out;
  }
  return out;
}

NormPtr compose_monotone(const MonotoneVectorNorm& vn, const NormPtr& base, int n, const SamplingBudget& budget) {
  require_dim(vn.norm->dim(), n, "monotone vector norm arity");
  const MonotoneCheck mc = check_monotone(*vn.norm, budget);
  if (!mc.ok) {
    throw NonMonotone("vector norm is not monotone on the nonnegative orthant", *mc.witness);
  }
  if (!vn.monotone_certified) {
    throw NonMonotone("vector norm is not certified monotone", MonotoneWitness{});
  }
  std::vector<NormPtr> ch(n, base);
  auto c = std::make_shared<Composition>(
      vn.norm, std::move(ch), true,
      nlohmann::json{{"kind", "monotone_composition"}, {"vec_norm", vn.norm->to_json()}, {"monotone_certified", true}});
  const TriangleCheck tc = check_triangle(*c, {std::min(budget.samples, 10000), budget.seed});
  if (!tc.ok) throw NonMonotone("composition violates the triangle inequality", MonotoneWitness{});
  return c;
}

NormPtr compose_forced(const NormPtr& vn, const NormPtr& base, int n) {
  require_dim(vn->dim(), n, "vector norm arity");
  std::vector<NormPtr> ch(n, base);
  return std::make_shared<Composition>(
      vn, std::move(ch), false,
      nlohmann::json{{"kind", "monotone_composition"}, {"vec_norm", vn->to_json()}, {"monotone_certified", false}});
}

// Serialization -------------------------------------------------------------

NormPtr base_norm_from_json(const nlohmann::json& j, int d) {
  if (!j.is_object() || !j.contains("kind")) throw Error("norm: expected an object with \"kind\"", "schema");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "euclidean") return euclidean(d);
  if (kind == "lp") return lp_norm(d, p_from_json(j.at("p")));
  if (kind == "weighted_lp") {
    const auto w = j.at("weights").get<std::vector<double>>();
    return lp_norm(d, p_from_json(j.at("p")), Eigen::Map<const Vector>(w.data(), static_cast<Eigen::Index>(w.size())));
  }
  if (kind == "polyhedral") {
    std::vector<Vector> gens;
    for (const auto& g : j.at("generators")) {
      const auto v = g.get<std::vector<double>>();
      gens.emplace_back(Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())));
    }
    auto n = polyhedral_norm(std::move(gens));
    require_dim(n->dim(), d, "polyhedral norm");
    return n;
  }
  if (kind == "scaled") return std::make_shared<ScaledNorm>(j.at("gamma").get<double>(), base_norm_from_json(j.at("of"), d));
  throw Error("unknown norm kind \"" + kind + "\"", "schema");
}

NormPtr product_norm_from_json(const nlohmann::json& j, const NormPtr& base, int n) {
  if (!j.is_object() || !j.contains("kind")) throw Error("product norm: expected an object with \"kind\"", "schema");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "max_of_blocks") return max_of_blocks(base, n);
  if (kind == "p_composition") {
    Vector w;
    if (j.contains("weights")) {
      const auto v = j.at("weights").get<std::vector<double>>();
      w = Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
    }
    return p_composition(p_from_json(j.at("p")), w, base, n);
  }
  if (kind == "gamma") {
    if (n < 2) throw Error("gamma norm needs at least two blocks", "schema");
    return gamma_norm(product_norm_from_json(j.at("inner"), base, n - 1), j.at("gamma").get<double>(), base);
  }
  if (kind == "monotone_composition") {
    MonotoneVectorNorm vn{base_norm_from_json(j.at("vec_norm"), n), j.value("monotone_certified", false)};
    if (!vn.monotone_certified) return compose_forced(vn.norm, base, n);
    return compose_monotone(vn, base, n);
  }
  throw Error("unknown product norm kind \"" + kind + "\"", "schema");
}

}  // namespace gsep
