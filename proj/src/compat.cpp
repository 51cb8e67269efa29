#include "gsep/compat.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace gsep {
namespace {

Vector repeat(const Vector& u, int n) {
  Vector out(u.size() * n);
  for (int i = 0; i < n; ++i) out.segment(i * u.size(), u.size()) = u;
  return out;
}

bool genuine(const Norm& n) {
  if (auto c = dynamic_cast<const Composition*>(&n)) {
    if (!c->certified()) return false;
    return genuine(*c->outer()) &&
           std::all_of(c->children().begin(), c->children().end(), [](const NormPtr& ch) { return genuine(*ch); });
  }
  if (auto s = dynamic_cast<const ScaledNorm*>(&n)) return genuine(*s->inner());
  return true;
}

bool same_norm(const Norm& a, const Norm& b) { return a.dim() == b.dim() && a.to_json() == b.to_json(); }

struct Shape {
  int d = 0;       // block dimension
  int blocks = 0;  // blocks in the sampled tuple
};

Shape tuple_shape(Condition c, const NormFamily& f) {
  const int d = f.base->dim();
  switch (c) {
    case Condition::C1:
    case Condition::C2:
      return {d, f.plus->dim() / d};
    case Condition::C5:
      return {d, 1};
    default:
      return {d, f.product->dim() / d};
  }
}

void check_family(Condition c, const NormFamily& f) {
  if (!f.base) throw Error("compatibility check needs a base norm", to_string(c));
  const int d = f.base->dim();
  if (c == Condition::C1 || c == Condition::C2) {
    if (!f.inner || !f.plus) throw Error(to_string(c) + " needs the norms on X^{n-1} and X^n", to_string(c));
    if (f.plus->dim() != f.inner->dim() + d) throw DimensionError("plus norm must act on one more block than inner", to_string(c));
    if (f.plus->dim() / d < 2) throw Error(to_string(c) + " requires n > 1", to_string(c));
  } else {
    if (!f.product) throw Error(to_string(c) + " needs a product norm", to_string(c));
    if (f.product->dim() % d != 0) throw DimensionError("product norm dimension is not a multiple of d", to_string(c));
  }
}

// Structured probes: single blocks, equal blocks, alternating blocks, for
// coordinate directions and a few seeded random directions.
std::vector<Vector> structured_tuples(const Shape& s, std::mt19937_64& rng) {
  std::vector<Vector> dirs;
  for (int k = 0; k < s.d; ++k) dirs.push_back(Vector::Unit(s.d, k));
  std::normal_distribution<double> g(0.0, 1.0);
  for (int r = 0; r < 3; ++r) {
    Vector v(s.d);
    for (int k = 0; k < s.d; ++k) v(k) = g(rng);
    dirs.push_back(v);
  }
  std::vector<Vector> out;
  for (const auto& v : dirs) {
    out.push_back(repeat(v, s.blocks));
    for (int i = 0; i < s.blocks; ++i) {
      Vector t = Vector::Zero(s.d * s.blocks);
      t.segment(i * s.d, s.d) = v;
      out.push_back(t);
      Vector a = repeat(v, s.blocks);
      a.segment(i * s.d, s.d) = -v;
      out.push_back(a);
    }
  }
  return out;
}

}  // namespace

std::string to_string(Condition c) {
  static const char* names[] = {"C1", "C2", "C3", "C4", "C5", "C6"};
  return names[static_cast<int>(c)];
}

double kappa_ratio(Condition c, const NormFamily& f, const Vector& u) {
  const int d = f.base->dim();
  switch (c) {
    case Condition::C1: {
      const int n = static_cast<int>(u.size()) / d;
      const Vector head = u.head((n - 1) * d), last = u.tail(d);
      return std::max(f.inner->eval(head), f.inner->eval(repeat(last, n - 1))) / f.plus->eval(u);
    }
    case Condition::C2: {
      const int n = static_cast<int>(u.size()) / d;
      return std::max(f.inner->eval(u.head((n - 1) * d)), f.base->eval(u.tail(d))) / f.plus->eval(u);
    }
    case Condition::C3:
    case Condition::C4: {
      double m = 0.0;
      for (int i = 0; i * d < u.size(); ++i) m = std::max(m, f.base->eval(u.segment(i * d, d)));
      const double p = f.product->eval(u);
      return c == Condition::C3 ? m / p : p / m;
    }
    case Condition::C5:
      return f.product->eval(repeat(u, f.product->dim() / d)) / f.base->eval(u);
    case Condition::C6: {
      double s = 0.0;
      for (int i = 0; i * d < u.size(); ++i) s += f.base->dual(u.segment(i * d, d));
      return s / f.product->dual(u);
    }
  }
  return 0.0;
}

std::optional<std::array<double, 4>> analytic_product_constants(const Norm& product, const NormPtr& base) {
  auto c = dynamic_cast<const Composition*>(&product);
  if (!c || !c->certified()) return std::nullopt;
  const std::string kind = c->to_json().value("kind", "");
  if (kind == "max_of_blocks" || kind == "p_composition") {
    auto outer = dynamic_cast<const LpNorm*>(c->outer().get());
    if (!outer) return std::nullopt;
    for (const auto& ch : c->children()) {
      if (!same_norm(*ch, *base)) return std::nullopt;
    }
    const Vector& w = outer->weights();
    const double wp = outer->eval(Vector::Ones(w.size()));
    return std::array<double, 4>{1.0 / w.minCoeff(), wp, wp, wp};
  }
  if (kind == "gamma") {
    auto scaled = dynamic_cast<const ScaledNorm*>(c->children()[1].get());
    if (!scaled || !same_norm(*scaled->inner(), *base)) return std::nullopt;
    auto inner = analytic_product_constants(*c->children()[0], base);
    if (!inner) return std::nullopt;
    const double g = scaled->gamma();
    return std::array<double, 4>{std::max((*inner)[0], 1.0 / g), std::max((*inner)[1], g),
                                 std::max((*inner)[2], g), std::max((*inner)[3], g)};
  }
  return std::nullopt;
}

namespace {

std::optional<double> analytic_constant(Condition c, const NormFamily& f) {
  if (c == Condition::C1 || c == Condition::C2) {
    auto plus = dynamic_cast<const Composition*>(f.plus.get());
    if (!plus || !plus->certified()) return std::nullopt;
    const std::string kind = plus->to_json().value("kind", "");
    const int d = f.base->dim();
    const int n = f.plus->dim() / d;
    if (kind == "gamma") {
      auto scaled = dynamic_cast<const ScaledNorm*>(plus->children()[1].get());
      if (!scaled || !same_norm(*plus->children()[0], *f.inner) || !same_norm(*scaled->inner(), *f.base)) {
        return std::nullopt;
      }
      const double g = scaled->gamma();
      if (c == Condition::C2) return std::max(1.0, 1.0 / g);
      auto inner = analytic_product_constants(*f.inner, f.base);
      if (!inner) return std::nullopt;
      return std::max(1.0, (*inner)[2] / g);
    }
    // Same-exponent unit-weight p-compositions on X^{n-1} and X^n.
    auto outer_plus = dynamic_cast<const LpNorm*>(plus->outer().get());
    auto inner_c = dynamic_cast<const Composition*>(f.inner.get());
    if ((kind == "max_of_blocks" || kind == "p_composition") && outer_plus && inner_c && outer_plus->unit_weights()) {
      auto outer_inner = dynamic_cast<const LpNorm*>(inner_c->outer().get());
      const std::string ik = inner_c->to_json().value("kind", "");
      if (!outer_inner || !outer_inner->unit_weights() || outer_inner->p() != outer_plus->p()) return std::nullopt;
      if (ik != "max_of_blocks" && ik != "p_composition") return std::nullopt;
      for (const auto& ch : plus->children()) {
        if (!same_norm(*ch, *f.base)) return std::nullopt;
      }
      for (const auto& ch : inner_c->children()) {
        if (!same_norm(*ch, *f.base)) return std::nullopt;
      }
      if (c == Condition::C2) return 1.0;
      const double p = outer_plus->p();
      return p == kInf ? 1.0 : std::max(1.0, std::pow(n - 1.0, 1.0 / p));
    }
    return std::nullopt;
  }
  auto consts = analytic_product_constants(*f.product, f.base);
  if (!consts) return std::nullopt;
  return (*consts)[static_cast<int>(c) - 2];
}

}  // namespace

KappaReport estimate_kappa(Condition c, const NormFamily& f, const SamplingBudget& budget) {
  check_family(c, f);
  KappaReport rep;
  rep.condition = c;
  rep.seed = budget.seed;
  rep.certified = genuine(*f.base) && (!f.inner || genuine(*f.inner)) && (!f.plus || genuine(*f.plus)) &&
                  (!f.product || genuine(*f.product));
  if (!rep.certified) {
    rep.kappa_hat = kInf;
    return rep;
  }
  const Shape s = tuple_shape(c, f);
  std::mt19937_64 rng(budget.seed);
  std::normal_distribution<double> g(0.0, 1.0);

  struct Cand {
    double r;
    Vector u;
  };
  std::vector<Cand> cands;
  auto consider = [&](const Vector& u) {
    ++rep.samples;
    if (u.isZero(0.0)) return;
    const double r = kappa_ratio(c, f, u);
    if (std::isfinite(r)) cands.push_back({r, u});
  };
  for (const auto& u : structured_tuples(s, rng)) consider(u);
  for (int k = 0; k < budget.samples; ++k) {
    Vector u(s.d * s.blocks);
    for (int i = 0; i < u.size(); ++i) u(i) = g(rng);
    consider(u);
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.r > b.r; });
  if (cands.size() > 5) cands.resize(5);

  // Ratio ascent: accept random perturbations that increase the ratio,
  // halving the step when none does.
  const int dim = s.d * s.blocks;
  int evals = budget.samples;
  for (auto& cand : cands) {
    double step = 0.5 * cand.u.norm();
    const double floor = 1e-10 * cand.u.norm();
    while (step > floor && evals > 0) {
      bool improved = false;
      for (int t = 0; t < 4 * dim && evals > 0; ++t) {
        Vector dir(dim);
        for (int i = 0; i < dim; ++i) dir(i) = g(rng);
        dir *= step / dir.norm();
        for (double sgn : {1.0, -1.0}) {
          const Vector v = cand.u + sgn * dir;
          --evals;
          ++rep.samples;
          if (v.isZero(0.0)) continue;
          const double r = kappa_ratio(c, f, v);
          if (r > cand.r) {
            cand = {r, v};
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
  }
  const auto best = std::max_element(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.r < b.r; });
  rep.kappa_hat = best->r;
  rep.witness = split(best->u, s.d);
  rep.analytic = analytic_constant(c, f);
  return rep;
}

std::vector<RelationRow> verify_relations(const NormFamily& f, const SamplingBudget& budget) {
  NormFamily inner_f{f.base, nullptr, nullptr, f.inner};
  NormFamily plus_f{f.base, nullptr, nullptr, f.plus};
  const KappaReport r1 = estimate_kappa(Condition::C1, f, budget);
  const KappaReport r2 = estimate_kappa(Condition::C2, f, budget);
  const KappaReport r3i = estimate_kappa(Condition::C3, inner_f, budget);
  const KappaReport r5i = estimate_kappa(Condition::C5, inner_f, budget);
  const KappaReport r4p = estimate_kappa(Condition::C4, plus_f, budget);
  const KappaReport r5p = estimate_kappa(Condition::C5, plus_f, budget);
  const KappaReport r6p = estimate_kappa(Condition::C6, plus_f, budget);
  auto row = [](std::string name, double bound, double observed) {
    return RelationRow{std::move(name), bound, observed, observed <= bound * (1 + 1e-9) + 1e-12};
  };
  return {
      row("C2&C5=>C1", r2.kappa() * std::max(1.0, r5i.kappa()), r1.kappa_hat),
      row("C1&C3=>C2", r1.kappa() * std::max(1.0, r3i.kappa()), r2.kappa_hat),
      row("C4=>C5", r4p.kappa(), r5p.kappa_hat),
      row("C4=>C6", r4p.kappa(), r6p.kappa_hat),
  };
}

}  // namespace gsep
