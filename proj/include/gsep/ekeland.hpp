#pragma once

#include "gsep/sets.hpp"

namespace gsep {

/// f(z) = constant + linear·z + sum_j weight_j N_j(map_j z + offset_j).
struct Objective {
  int dim = 0;
  double constant = 0.0;
  Vector linear;
  std::vector<NormTerm> terms;

  explicit Objective(int d = 0) : dim(d), linear(Vector::Zero(d)) {}
  double operator()(const Vector& z) const;
};

/// Objective restricted to a closed set given as a finite union of convex
/// pieces, with the metric d(u, v) = metric(u - v).
struct EkelandProblem {
  Objective f;
  std::vector<ConvexPiece> domain;
  NormPtr metric;
  /// Block size for reporting the point as a tuple; 0 means one block.
  int block_dim = 0;
};

struct EkelandVerification {
  double distance = 0.0;        // d(x, x0)
  double decrease = 0.0;        // f(x) - f(x0)
  double worst_violation = 0.0; // max_u f(x) - f(u) - (eps/lambda) d(u, x), certified
  /// Same quantity anchored at f(x0); informational.
  double anchored_violation = 0.0;
  bool strict_distance = false; // d(x, x0) <= lambda - 1e-12
};

struct EkelandResult {
  Vector x;
  std::vector<Vector> tuple;
  int iterations = 0;
  double final_decrement = 0.0;
  double lambda = 0.0;
  double infimum_lower = 0.0;   // certified lower bound on inf f
  double path_length = 0.0;
  EkelandVerification verification;
  bool holds(double tol) const;
};

struct EkelandOptions {
  double tol = 1e-9;
  int max_iterations = 10000;
  ConvexOptions program;
};

/// Certified lower bound on inf f over the domain and a point attaining the
/// best value found; throws when f is unbounded below or the domain is empty.
std::pair<double, Vector> infimum(const EkelandProblem& p, const ConvexOptions& opt = {});

/// x_{k+1} = argmin_u f(u) + (eps/lambda) d(u, x_k) over the domain until the
/// current point is itself an argmin. Errors are labelled "premise", "oracle"
/// or "iteration_cap".
EkelandResult ekeland_descent(const EkelandProblem& p, const Vector& x0, double eps, double lambda,
                              const EkelandOptions& opt = {});

/// f1(u) = N(u_1 - u_n, ..., u_{n-1} - u_n) on the product of the sets.
EkelandProblem difference_problem(const std::vector<SetPtr>& sets, const NormPtr& norm, const NormPtr& norm_plus);

/// True when no point lies in every set (decided piecewise by LP).
bool intersection_empty(const std::vector<SetPtr>& sets);

struct GapDescentResult {
  EkelandResult ekeland;
  std::vector<Vector> point;
  double f1 = 0.0;
  double f1_omega = 0.0;
  bool within_delta = false;   // |x - omega|_+ < delta
  bool descent = false;        // f1(x) + (eps'/delta)|x - omega|_+ <= f1(omega)
  bool perturbation = false;   // f1(u) - f1(x) + (eps'/delta)|u - x|_+ >= 0 on the product
  bool positive = false;       // f1(x) > 0
};

/// Ekeland point of f1 started at omega with eps' and lambda = delta.
/// Requires the sets to have empty intersection.
GapDescentResult gap_descent_point(const std::vector<SetPtr>& sets, const std::vector<Vector>& omega, double eps_prime,
                          double delta, const NormPtr& norm, const NormPtr& norm_plus,
                          const EkelandOptions& opt = {});

}  // namespace gsep
