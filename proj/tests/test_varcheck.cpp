#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gsep/varcheck.hpp"

#include <random>

using namespace gsep;
using lp::Row;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(v.size());
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

SetPtr half(std::initializer_list<double> a, double b) { return SetExpr::polyhedron({{vec(a), b}}, 2); }

SetPtr line(std::initializer_list<double> a) {
  return SetExpr::polyhedron({{vec(a), 0.0}, {-vec(a), 0.0}}, 2);
}

// Sum over blocks in the primal product norm, so the dual takes the maximum.
Collection collection(std::vector<SetPtr> sets, NormPtr base = euclidean(2)) {
  const int n = static_cast<int>(sets.size());
  return {std::move(sets), Vector::Zero(2), base, p_composition(1.0, Vector::Ones(n), base, n)};
}

Collection opposite_x1() { return collection({half({1, 0}, 0), half({-1, 0}, 0)}); }
Collection crossing_axes(NormPtr base = euclidean(2)) { return collection({line({0, 1}), line({1, 0})}, base); }

// Independent emptiness oracle: the sets moved by -(x_i + a_i) have no common
// point in the box of half-width r, which contains every base ball of radius
// r used here. Plain LP feasibility over the rows of every set.
bool box_oracle_empty(const std::vector<SetPtr>& sets, const std::vector<Vector>& x, const std::vector<Vector>& a,
                      double r) {
  std::vector<Row> rows;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (const auto& row : sets[i]->rows()) rows.push_back({row.a, row.b - row.a.dot(x[i] + a[i])});
  }
  for (int j = 0; j < 2; ++j) {
    Vector e = Vector::Zero(2);
    e(j) = 1.0;
    rows.push_back({e, r});
    rows.push_back({-e, r});
  }
  return !lp::polyhedron_feasible(rows, 2).feasible;
}

// Smallest |sum x_i*| over sampled normal tuples with unit dual norm, where each
// x_i* is drawn from the normals of the rows of set i that can be active.
double sampled_min_sum(const Collection& c, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  double best = 1e300;
  for (int s = 0; s < samples; ++s) {
    Vector y(4);
    for (int i = 0; i < 2; ++i) {
      Vector g = Vector::Zero(2);
      for (const auto& row : c.sets[i]->rows()) g += std::abs(N(rng)) * row.a;
      y.segment(2 * i, 2) = g * (s % 3 == 0 && i == 1 ? 0.0 : 1.0);
    }
    const double h = c.norm->dual(y);
    if (h < 1e-12) continue;
    y /= h;
    best = std::min(best, c.base->dual(y.segment(0, 2) + y.segment(2, 2)));
  }
  return best;
}

}  // namespace

TEST_CASE("direction schedule has unit tuples and is reproducible") {
  const auto c = opposite_x1();
  SearchBudget b;
  const auto d1 = direction_schedule(c, b);
  const auto d2 = direction_schedule(c, b);
  REQUIRE(d1.size() == d2.size());
  CHECK(d1.size() >= 256u);
  for (std::size_t k = 0; k < d1.size(); ++k) {
    CHECK(c.norm->eval(d1[k]) == doctest::Approx(1.0));
    CHECK(d1[k] == d2[k]);
  }
  const auto grid = rho_grid(0.1, 12);
  CHECK(grid.size() == 12u);
  CHECK(grid.front() < 0.1);
  for (std::size_t k = 1; k < grid.size(); ++k) CHECK(grid[k] < grid[k - 1]);
}

TEST_CASE("x_bar outside the intersection is rejected") {
  auto c = opposite_x1();
  c.x_bar = vec({1, 0});
  try {
    check_stationary(c);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.label() == "x_bar_outside");
  }
}

TEST_CASE("extremality examples") {
  const auto touching = collection({half({0, 1}, 0), half({0, -1}, 0)});
  const auto r = check_extremal(touching, 1.0);
  CHECK(r.all_found());
  for (const auto& row : r.rows) {
    REQUIRE(!row.a.empty());
    CHECK(touching.norm->eval(concat(row.a)) < row.eps);
    CHECK(box_oracle_empty(touching.sets, {Vector::Zero(2), Vector::Zero(2)}, row.a, 1.0));
  }

  // A strip: no shift below 0.1 separates the sets near 0.
  const auto strip = collection({half({0, 1}, 0), half({0, -1}, 1)});
  const auto s = check_extremal(strip, 1.0);
  CHECK_FALSE(s.all_found());
  for (const auto& row : s.rows) {
    if (row.eps <= 0.1) CHECK(row.a.empty());
  }

  // The same half-plane twice: identical shifts keep a common point.
  const auto twice = collection({half({0, 1}, 0), half({0, 1}, 0)});
  const auto t = check_extremal(twice, 1.0);
  CHECK_FALSE(t.all_found());
  CHECK(t.rows.back().a.empty());
}

TEST_CASE("stationarity examples and the implication from extremality") {
  const auto touching = collection({half({0, 1}, 0), half({0, -1}, 0)});
  const auto st = check_stationary(touching);
  CHECK(st.all_found());
  for (const auto& row : st.rows) {
    CHECK(row.rho < row.eps);
    CHECK(touching.norm->eval(concat(row.a)) < row.eps * row.rho);
    CHECK(box_oracle_empty(touching.sets, {Vector::Zero(2), Vector::Zero(2)}, row.a, row.rho));
  }
  const auto overlap = collection({half({1, 0}, 1), half({-1, 0}, 1)});
  CHECK_FALSE(check_stationary(overlap).all_found());
  CHECK_FALSE(check_stationary(collection({half({0, 1}, 0), half({0, -1}, 1)})).all_found());
}

TEST_CASE("approximate alpha-stationarity of opposite half-planes") {
  const auto c = opposite_x1();
  for (double alpha : {0.1, 0.01}) {
    const auto scan = check_alpha_stationary(c, alpha, 0.1);
    REQUIRE(scan.witness);
    const auto& w = *scan.witness;
    CHECK(w.rho > 0.0);
    CHECK(w.rho < 0.1);
    CHECK(w.a_norm < alpha * w.rho);
    CHECK(verify_witness(w, c).ok());
    CHECK(box_oracle_empty(c.sets, w.x, w.a, w.rho));
    // Monotone in alpha: the same data witnesses every larger alpha.
    StationarityWitness larger = w;
    larger.alpha = 2.0 * alpha;
    CHECK(verify_witness(larger, c).ok());
  }
}

TEST_CASE("crossing axes: no witness below the transversality constant") {
  const auto c = crossing_axes();
  const auto scan = check_alpha_stationary(c, 0.5, 0.1);
  CHECK_FALSE(scan.witness);
  CHECK(scan.stats.tested > 256 * 12);
  const auto t = check_alpha_transversal(c, 0.5, 0.1);
  CHECK(t.confirmed);

  // Perturbations much larger than the radius separate even transversal sets.
  const auto big = check_alpha_stationary(c, 10.0, 0.1);
  REQUIRE(big.witness);
  CHECK(box_oracle_empty(c.sets, big.witness->x, big.witness->a, big.witness->rho));
}

TEST_CASE("transversality constants") {
  for (const auto& base : {euclidean(2), lp_norm(2, kInf)}) {
    const auto c = crossing_axes(base);
    const auto t = transversality_constant(c, 0.1);
    CHECK(t.alpha_hat == doctest::Approx(1.0).epsilon(1e-6));
    REQUIRE(t.x_star.size() == 2u);
    const Vector xs = concat(t.x_star);
    CHECK(c.norm->dual(xs) == doctest::Approx(1.0));
    CHECK(base->dual(t.x_star[0] + t.x_star[1]) == doctest::Approx(t.alpha_hat).epsilon(1e-7));
    CHECK(sampled_min_sum(c, 20000, 5) >= 1.0 - 1e-6);
  }
  CHECK(transversality_constant(crossing_axes(lp_norm(2, kInf)), 0.1).exact);

  const auto opposite = transversality_constant(opposite_x1(), 0.1);
  CHECK(opposite.alpha_hat == doctest::Approx(0.0).scale(1.0));

  // x_bar interior to the second set: only the first component carries mass.
  auto box = SetExpr::polyhedron({{vec({1, 0}), 5}, {vec({-1, 0}), 5}, {vec({0, 1}), 5}, {vec({0, -1}), 5}}, 2);
  const auto lone = transversality_constant(collection({half({0, 1}, 0), box}), 0.1);
  CHECK(lone.alpha_hat == doctest::Approx(1.0));

  CHECK_THROWS_AS(transversality_constant(collection({SetExpr::ball(Vector::Zero(2), 1.0, euclidean(2)),
                                                      half({0, 1}, 1)}),
                                          0.1),
                  Error);
}

TEST_CASE("primal and dual answers agree") {
  const auto axes = crossing_axes();
  const double alpha_hat = transversality_constant(axes, 0.1).alpha_hat;
  CHECK(alpha_hat > 0.5);
  CHECK(check_alpha_transversal(axes, 0.5, 0.1).confirmed);

  const auto opp = opposite_x1();
  const auto t = check_alpha_transversal(opp, 0.3, 0.1);
  REQUIRE(t.counterexample);
  CHECK(transversality_constant(opp, 0.1).alpha_hat <= 0.3 + 1e-6);
}

TEST_CASE("dual certificate for opposite half-planes") {
  const auto c = opposite_x1();
  const auto cert = dual_stationarity_certificate(c, 0.1, 0.2, 0.1, 0.5);
  CHECK(verify_dual_certificate(cert, c).ok());
  CHECK(cert.sum_norm < 0.2);
  CHECK(cert.sum_norm < cert.sum_bound);
  CHECK(cert.sum_bound < 0.2);
  CHECK(cert.unit == doctest::Approx(1.0));
  CHECK(cert.alignment > 0.5 * cert.m);
  CHECK(cert.rho < cert.xi * cert.xi);
  // Hand check: the only normals are multiples of (1,0) and (-1,0).
  CHECK(std::abs(cert.x_star[0](1)) <= 1e-9);
  CHECK(std::abs(cert.x_star[1](1)) <= 1e-9);
  CHECK(cert.x_star[0](0) >= -1e-9);
  CHECK(cert.x_star[1](0) <= 1e-9);
  CHECK(verify_witness(cert.witness, c).ok());

  auto bad = cert;
  bad.x_star[0] *= 2.0;
  CHECK(verify_dual_certificate(bad, c).first_failure() == "sum_below_beta");
  bad = cert;
  bad.x_star[0] = vec({0, 1});
  CHECK_FALSE(verify_dual_certificate(bad, c).ok());

  const auto s = simplified(cert);
  CHECK(s.x == cert.x);
  CHECK(s.x_star == cert.x_star);
}

TEST_CASE("no dual certificate for crossing axes") {
  try {
    dual_stationarity_certificate(crossing_axes(), 0.1, 0.2, 0.1, 0.5);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.label() == "witness_unavailable");
  }
}

TEST_CASE("dual to primal") {
  const auto c = opposite_x1();
  SimplifiedCertificate cert{{Vector::Zero(2), Vector::Zero(2)}, {vec({1, 0}), vec({-1, 0})}};
  const auto w = dual_to_primal(c, 0.01, 0.1, 0.1, cert);
  CHECK(verify_witness(w, c).ok());
  CHECK(box_oracle_empty(c.sets, w.x, w.a, w.rho));
  // The attaining direction pushes the sets apart along the normals.
  CHECK(w.a[0](0) >= 0.0);
  CHECK(w.a[1](0) <= 0.0);
  CHECK(w.a[0](0) - w.a[1](0) > 0.0);

  // Round trip: witness, dual certificate, new witness.
  const auto full = dual_stationarity_certificate(c, 0.1, 0.2, 0.1, 0.5);
  const auto back = dual_to_primal(c, 0.05, 0.1, 0.1, simplified(full));
  CHECK(verify_witness(back, c).ok());
  CHECK(box_oracle_empty(c.sets, back.x, back.a, back.rho));

  try {
    dual_to_primal(c, 0.1, 0.1, 0.1, cert);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.label() == "order");
  }
  // Unit normal pairs of crossing axes have sums of norm 1.
  SimplifiedCertificate axes{{Vector::Zero(2), Vector::Zero(2)}, {vec({0, 1}), vec({0, 0})}};
  try {
    dual_to_primal(crossing_axes(), 0.5, 0.9, 0.1, axes);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.label() == "certificate");
  }
}

TEST_CASE("convex equivalence suite") {
  const auto yes = convex_equivalence_suite(opposite_x1());
  CHECK(yes.agree());
  CHECK(yes.value());
  CHECK(yes.rows.size() == 4u);

  const auto no = convex_equivalence_suite(collection({half({1, 0}, 1), half({-1, 0}, 1)}));
  CHECK(no.agree());
  CHECK_FALSE(no.value());

  // Convex cones touching only at the origin.
  auto up = SetExpr::polyhedron({{vec({1, -1}), 0}, {vec({-1, -1}), 0}}, 2);
  auto down = SetExpr::polyhedron({{vec({1, 1}), 0}, {vec({-1, 1}), 0}}, 2);
  const auto cones = convex_equivalence_suite(collection({up, down}));
  CHECK(cones.agree());
  CHECK(cones.value());

  auto nonconvex = SetExpr::set_union({half({1, 0}, 0), half({0, 1}, 0)});
  CHECK_THROWS_AS(convex_equivalence_suite(collection({nonconvex, half({-1, 0}, 0)})), Error);
}

TEST_CASE("extended extremal principle suite") {
  const auto yes = extended_ep_suite(opposite_x1());
  CHECK(yes.agree());
  CHECK(yes.value());
  const auto no = extended_ep_suite(crossing_axes());
  CHECK(no.agree());
  CHECK_FALSE(no.value());
}
