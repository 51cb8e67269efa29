#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gsep/lp.hpp"

#include <functional>
#include <random>

using namespace gsep;
using lp::Row;
using lp::RowType;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(v.size());
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Best objective over all vertices of {a_i·x <= b_i} in R^2 or R^3, found by
// solving every square subsystem.
double vertex_oracle(const std::vector<Row>& rows, const Vector& c, int d) {
  double best = -1e300;
  const int m = static_cast<int>(rows.size());
  std::vector<int> idx(d);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == d) {
      Matrix A(d, d);
      Vector b(d);
      for (int i = 0; i < d; ++i) {
        A.row(i) = rows[idx[i]].a.transpose();
        b(i) = rows[idx[i]].b;
      }
      if (std::abs(A.determinant()) < 1e-12) return;
      const Vector x = A.partialPivLu().solve(b);
      for (const auto& r : rows) {
        if (r.a.dot(x) > r.b + 1e-9) return;
      }
      best = std::max(best, c.dot(x));
      return;
    }
    for (int i = start; i < m; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST_CASE("single bounded variable") {
  lp::LinearProgram p;
  p.dim = 1;
  p.objective = vec({1});
  p.sense = lp::Sense::maximize;
  p.rows = {{vec({1}), 3.0}, {vec({-1}), 0.0}};
  const auto r = lp::solve_lp(p);
  REQUIRE(r.status == lp::Status::optimal);
  CHECK(r.x(0) == doctest::Approx(3.0));
  CHECK(r.value == doctest::Approx(3.0));
  CHECK(r.duality_gap <= 1e-7);
}

TEST_CASE("contradictory bounds are infeasible") {
  lp::LinearProgram p;
  p.dim = 1;
  p.objective = vec({0});
  p.rows = {{vec({1}), 0.0}, {vec({-1}), -1.0}};
  CHECK(lp::solve_lp(p).status == lp::Status::infeasible);
}

TEST_CASE("clipped square matches vertex oracle") {
  lp::LinearProgram p;
  p.dim = 2;
  p.objective = vec({1, 1});
  p.sense = lp::Sense::maximize;
  p.rows = {{vec({1, 0}), 1.0}, {vec({0, 1}), 1.0}, {vec({1, 1}), 1.5}};
  p.box = 100.0;
  const auto r = lp::solve_lp(p);
  REQUIRE(r.status == lp::Status::optimal);
  CHECK(r.value == doctest::Approx(1.5));
  std::vector<Row> all = p.rows;
  for (int j = 0; j < 2; ++j) {
    all.push_back({Vector::Unit(2, j), 100.0});
    all.push_back({-Vector::Unit(2, j), 100.0});
  }
  CHECK(vertex_oracle(all, p.objective, 2) == doctest::Approx(1.5));
}

TEST_CASE("unbounded direction is reported") {
  lp::LinearProgram p;
  p.dim = 2;
  p.objective = vec({1, 0});
  p.sense = lp::Sense::maximize;
  p.rows = {{vec({0, 1}), 1.0}};
  CHECK(lp::solve_lp(p).status == lp::Status::unbounded);
}

TEST_CASE("equality rows and free variables") {
  lp::LinearProgram p;
  p.dim = 2;
  p.objective = vec({1, 2});
  p.rows = {{vec({1, 1}), -3.0, RowType::eq}, {vec({-1, 0}), 10.0}, {vec({0, -1}), 10.0}};
  const auto r = lp::solve_lp(p);
  REQUIRE(r.status == lp::Status::optimal);
  // x2 as small as possible: x2 = -10, x1 = 7.
  CHECK(r.x(0) == doctest::Approx(7.0));
  CHECK(r.x(1) == doctest::Approx(-10.0));
  CHECK(r.value == doctest::Approx(-13.0));
}

TEST_CASE("random bounded LPs agree with the vertex oracle and close the duality gap") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 2;
    const int m = 4 + trial % 6;
    lp::LinearProgram p;
    p.dim = d;
    p.objective = Vector(d);
    for (int j = 0; j < d; ++j) p.objective(j) = g(rng);
    p.sense = trial % 2 ? lp::Sense::maximize : lp::Sense::minimize;
    for (int i = 0; i < m; ++i) {
      Vector a(d);
      for (int j = 0; j < d; ++j) a(j) = g(rng);
      p.rows.push_back({a, std::abs(g(rng)) + 0.1});
    }
    for (int j = 0; j < d; ++j) {
      p.rows.push_back({Vector::Unit(d, j), 5.0});
      p.rows.push_back({-Vector::Unit(d, j), 5.0});
    }
    const auto r = lp::solve_lp(p);
    REQUIRE(r.status == lp::Status::optimal);
    const Vector c = p.sense == lp::Sense::maximize ? p.objective : Vector(-p.objective);
    const double oracle = vertex_oracle(p.rows, c, d);
    const double got = p.sense == lp::Sense::maximize ? r.value : -r.value;
    CHECK(got == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(r.duality_gap <= 1e-7);
    CHECK(r.primal_residual <= 1e-9);
    CHECK(r.dual_residual <= 1e-9);
    // Dual multipliers certify optimality: c_min = -sum dual_i a_i.
    Vector grad = p.sense == lp::Sense::minimize ? p.objective : Vector(-p.objective);
    for (std::size_t i = 0; i < p.rows.size(); ++i) grad += r.dual(i) * p.rows[i].a;
    CHECK(grad.norm() <= 1e-7);
  }
}

TEST_CASE("polyhedron feasibility returns witness or Farkas ray") {
  SUBCASE("empty half-line pair") {
    const auto f = lp::polyhedron_feasible({{vec({1}), 0.0}, {vec({-1}), -1.0}}, 1);
    CHECK_FALSE(f.feasible);
    REQUIRE(f.farkas_ray.size() == 2);
    CHECK(f.farkas_ray.minCoeff() >= -1e-12);
    CHECK(std::abs(f.farkas_ray(0) - f.farkas_ray(1)) <= 1e-9);
  }
  SUBCASE("unit interval") {
    const auto f = lp::polyhedron_feasible({{vec({1}), 1.0}, {vec({-1}), 0.0}}, 1);
    CHECK(f.feasible);
    CHECK(f.witness(0) >= -1e-12);
    CHECK(f.witness(0) <= 1 + 1e-12);
  }
  SUBCASE("random separated polytopes") {
    // Two triangles in R^3 slabs: {x3 <= 0, ...} and {x3 >= 0.1, ...}.
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Row> rows;
      for (int i = 0; i < 4; ++i) {
        Vector a(3);
        a << g(rng), g(rng), 0.0;
        rows.push_back({a, 1.0});
      }
      rows.push_back({vec({0, 0, 1}), 0.0});
      rows.push_back({vec({0, 0, -1}), -0.1});
      const auto f = lp::polyhedron_feasible(rows, 3);
      CHECK_FALSE(f.feasible);
      REQUIRE(f.farkas_ray.size() == static_cast<Eigen::Index>(rows.size()));
      Vector comb = Vector::Zero(3);
      double rhs = 0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        comb += f.farkas_ray(i) * rows[i].a;
        rhs += f.farkas_ray(i) * rows[i].b;
      }
      CHECK(comb.norm() <= 1e-9);
      CHECK(rhs < 0);
      // Grid scan finds no common point either.
      bool any = false;
      for (double x = -3; x <= 3 && !any; x += 0.25) {
        for (double y = -3; y <= 3 && !any; y += 0.25) {
          for (double z = -0.5; z <= 0.5 && !any; z += 0.02) {
            bool in = true;
            for (const auto& r : rows) in = in && r.a.dot(vec({x, y, z})) <= r.b + 1e-12;
            any = in;
          }
        }
      }
      CHECK_FALSE(any);
    }
  }
}
