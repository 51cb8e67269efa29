#pragma once

#include "gsep/lp.hpp"
#include "gsep/norm.hpp"

#include <random>

namespace gsep {

/// Finitely generated convex cone {sum t_i g_i : t_i >= 0}.
/// The zero cone has no generators.
struct Cone {
  int dim = 0;
  std::vector<Vector> generators;

  Cone() = default;
  explicit Cone(int d, std::vector<Vector> gens = {});

  bool is_zero() const { return generators.empty(); }
  Matrix matrix() const;
  /// Random member: nonnegative combination with exponential weights.
  Vector sample(std::mt19937_64& rng) const;
};

/// Nonnegative least squares  min ‖A x - b‖₂  s.t. x >= 0  (Lawson-Hanson).
Vector nnls(const Matrix& A, const Vector& b, int max_iter = 0);

/// Euclidean distance from v to the cone, with the nearest member.
struct Projection {
  double distance = 0.0;
  Vector point;
};
Projection project_onto_cone(const Cone& c, const Vector& v);

bool cone_contains(const Cone& c, const Vector& v, double tol = 1e-8);
/// Every generator of a lies in b.
bool cone_subset(const Cone& a, const Cone& b, double tol = 1e-8);
bool cone_equal(const Cone& a, const Cone& b, double tol = 1e-8);

/// Largest ambient dimension accepted by the double-description routines.
inline constexpr int kMaxDDDim = 8;

/// Generators of {x : a_i·x <= 0}. Lineality directions appear as ±pairs.
Cone cone_from_halfspaces(const std::vector<Vector>& normals, int dim);
/// Normals a_i with c = {x : a_i·x <= 0}; the polar cone's generators.
std::vector<Vector> cone_halfspaces(const Cone& c);
Cone polar(const Cone& c);
Cone cone_intersect(const Cone& a, const Cone& b);
/// Drops generators that are nonnegative combinations of the others.
Cone prune(const Cone& c, double tol = 1e-9);

/// inf_{y in c} N(v - y) and a witness y. `lower` is a certified lower bound;
/// `value` is attained by the witness (equal for Euclidean and polyhedral N
/// up to solver tolerance).
struct ConeDistance {
  double value = 0.0;
  double lower = 0.0;
  Vector witness;
};
ConeDistance cone_distance(const Vector& v, const Cone& c, const Norm& n);

/// Vertices of the bounded polyhedron {x : a_i·x <= b_i} by enumerating all
/// dim-subsets of rows. Deduplicated, lexicographically sorted.
std::vector<Vector> polytope_vertices(const std::vector<lp::Row>& rows, int dim, double tol = 1e-9);

}  // namespace gsep
