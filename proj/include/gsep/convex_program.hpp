#pragma once

#include "gsep/lp.hpp"
#include "gsep/norm.hpp"

namespace gsep {

/// weight * N(map * z + offset)
struct NormTerm {
  NormPtr norm;
  Matrix map;
  Vector offset;
  double weight = 1.0;
};

/// N(map * z + offset) <= radius
struct NormBound {
  NormPtr norm;
  Matrix map;
  Vector offset;
  double radius = 0.0;
};

/// minimize  linear·z + sum_j terms_j(z)
/// subject to rows (linear), bounds (norm balls).
///
/// Solved by an outer cutting-plane method over LPs: every norm is replaced by
/// the supporting hyperplanes collected so far, which gives a certified lower
/// bound next to the value at the best feasible iterate. Polyhedral norms are
/// represented exactly after finitely many cuts.
struct ConvexProgram {
  int dim = 0;
  Vector linear;
  std::vector<lp::Row> rows;
  std::vector<NormTerm> terms;
  std::vector<NormBound> bounds;

  explicit ConvexProgram(int d = 0) : dim(d), linear(Vector::Zero(d)) {}

  double objective(const Vector& z) const;
  double max_violation(const Vector& z) const;
};

enum class ConvexStatus { optimal, infeasible, unbounded, iteration_limit };

struct ConvexResult {
  ConvexStatus status = ConvexStatus::infeasible;
  Vector z;
  double value = 0.0;
  double lower_bound = 0.0;
  double violation = 0.0;
  int iterations = 0;
  /// Set when one of the early-exit thresholds fired.
  bool stopped_early = false;

  bool ok() const { return status == ConvexStatus::optimal; }
  double gap() const { return value - lower_bound; }
};

struct ConvexOptions {
  double abs_tol = 1e-11;
  double rel_tol = 1e-11;
  double feas_tol = 1e-10;
  int max_iterations = 600;
  /// Bounding box on every variable; optima on its boundary count as unbounded.
  double box = 1e6;
  /// Early exits for threshold questions ("is the minimum above r?").
  std::optional<double> stop_if_lower_above;
  std::optional<double> stop_if_upper_below;
  lp::Options lp;
};

ConvexResult minimize(const ConvexProgram& prog, const ConvexOptions& opt = {});

}  // namespace gsep
