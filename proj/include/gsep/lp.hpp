#pragma once

#include "gsep/types.hpp"

#include <optional>

namespace gsep::lp {

enum class Sense { minimize, maximize };
enum class RowType { le, eq };

/// One constraint row: a·x <= b, or a·x == b.
struct Row {
  Vector a;
  double b = 0.0;
  RowType type = RowType::le;
};

/// Linear program over free variables x in R^dim.
struct LinearProgram {
  int dim = 0;
  Vector objective;
  std::vector<Row> rows;
  Sense sense = Sense::minimize;
  /// Optional bounding box |x_i| <= box.
  std::optional<double> box;
};

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  Vector x;
  double value = 0.0;
  /// Row multipliers (>= 0 for `le` rows, free for `eq` rows), oriented so that
  /// the objective gradient of the minimization form equals -sum dual_i a_i.
  Vector dual;
  /// |primal value - dual value| at the returned basis.
  double duality_gap = 0.0;
  /// Largest primal row violation.
  double primal_residual = 0.0;
  /// Largest violation of dual feasibility (stationarity and sign).
  double dual_residual = 0.0;
  int pivots = 0;
};

class CyclingError : public Error {
 public:
  using Error::Error;
};

struct Options {
  double eps = 1e-9;
  int max_pivots = 50000;
  /// Consecutive degenerate pivots after which Bland's rule takes over.
  int bland_after = 30;
};

Result solve_lp(const LinearProgram& lp, const Options& opt = {});

/// Feasibility of {x : a_i·x <= b_i}. Either a witness, or a Farkas ray
/// y >= 0 with sum y_i a_i = 0 and sum y_i b_i < 0.
struct Feasibility {
  bool feasible = false;
  Vector witness;
  Vector farkas_ray;
};

Feasibility polyhedron_feasible(const std::vector<Row>& rows, int dim, const Options& opt = {});

}  // namespace gsep::lp
