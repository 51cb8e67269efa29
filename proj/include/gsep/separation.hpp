#pragma once

#include "gsep/ekeland.hpp"

namespace gsep {

/// Sets in X = R^d with a point omega of their product, a norm `inner` on
/// X^{n-1}, a norm `plus` on X^n and the parameters eps, delta (and tau for the
/// Fréchet variant). `base` is the norm on X; it is needed for per-block
/// reporting and for the constant of the tau variant.
struct SeparationInstance {
  std::string name;
  std::vector<SetPtr> sets;
  std::vector<Vector> omega;
  NormPtr base;
  NormPtr inner;
  NormPtr plus;
  double eps = 0.0;
  double delta = 0.0;
  std::optional<double> tau;

  int n() const { return static_cast<int>(sets.size()); }
  int d() const { return sets.empty() ? 0 : sets.front()->dim(); }
  /// Throws DimensionError on inconsistent sizes.
  void validate() const;
};

struct Premise {
  double f1_omega = 0.0;
  double infimum = 0.0;  // certified lower bound
  double gap = 0.0;
  bool omega_in_sets = false;
  bool holds = false;
};

/// gap = f1(omega) - inf f1 over the product of the sets, holds = gap < eps.
Premise check_premise(const SeparationInstance& inst, const ConvexOptions& opt = {});

/// eps' in (gap, eps) used for the Ekeland step.
double select_eps_prime(double gap, double eps);

struct SeparationCertificate {
  std::vector<Vector> x;
  std::vector<Vector> x_star;
  Flavor flavor = Flavor::clarke;
  double eps_prime = 0.0;
  double gap = 0.0;
  double m = 0.0;          // inner(x_n - x_1, ..., x_n - x_{n-1})
  double alignment = 0.0;  // sum_{i<n} <x_i*, x_n - x_i>
  double r_sum = 0.0;
  double r_unit = 0.0;
  double r_cone = 0.0;
  /// Dual plus-norm of the remainder in the sum rule; at most eps'/delta.
  double decomposition_residual = 0.0;
  std::optional<double> tau;
  std::optional<double> xi;
  std::optional<double> kappa;
  /// -1 when the Ekeland step ran on the whole product, else the index of the
  /// product piece it was restricted to.
  int branch = -1;
};

struct Check {
  std::string label;
  double value = 0.0;
  double bound = 0.0;
  std::string relation;  // "<=", "<" or ">"
  bool holds = false;
};

inline Check at_most(std::string label, double value, double bound) {
  return {std::move(label), value, bound, "<=", value <= bound};
}
inline Check below(std::string label, double value, double bound, double margin) {
  return {std::move(label), value, bound, "<", value < bound - margin};
}
inline Check above(std::string label, double value, double bound, double margin) {
  return {std::move(label), value, bound, ">", value > bound + margin};
}

struct VerificationReport {
  std::vector<Check> checks;
  bool ok() const;
  /// Label of the first failed check, empty when all hold.
  std::string first_failure() const;
};

/// Independent check of every conclusion, recomputing the normal cone and
/// distances from the instance.
VerificationReport verify_certificate(const SeparationCertificate& cert, const SeparationInstance& inst,
                                      const Tolerances& tol = {});

struct SeparateOptions {
  EkelandOptions ekeland;
  ConvexOptions decomposition;
  Tolerances tol;
  /// Budget for the C1 estimate of the tau variant when no analytic constant
  /// is known.
  SamplingBudget kappa_budget{2000, 1};
};

/// Thrown when no verified certificate was found; carries the best residual.
class SeparationError : public Error {
 public:
  SeparationError(const std::string& what, std::string label, double best_residual)
      : Error(what, std::move(label)), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

/// Ekeland point, exact sum-rule decomposition and verification. Only
/// verified certificates are returned.
SeparationCertificate separate(const SeparationInstance& inst, const SeparateOptions& opt = {});

struct LocalCertificate {
  /// Certificate of the enlarged instance with the ball appended.
  SeparationCertificate generic;
  SeparationInstance enlarged;
  std::vector<Vector> x;
  std::vector<Vector> x_star;
  Vector x0;
  std::vector<Vector> shifts;  // zero unless built by separate_shifted
  double rho = 0.0;            // radius actually used
  int retries = 0;
  double mixed = 0.0;          // delta d(x*, N) + rho |sum x_i*|_*
  double unit = 0.0;           // |x*| in the dual of the norm on X^n
  double alignment = 0.0;      // sum <x_i*, x0 + s_i - x_i>
  double m = 0.0;              // norm of (x0 + s_i - x_i)_i
};

struct LocalProblem {
  std::vector<SetPtr> sets;
  Vector x_bar;
  double rho = 0.0;
  double eps = 0.0;
  double delta = 0.0;
  std::optional<double> tau;
  NormPtr base;
  NormPtr norm;  // on X^n
  /// Defaults to nearest points of x_bar in each set.
  std::vector<Vector> omega;
};

/// Appends the closed ball around x_bar, uses max{norm, (delta/rho) base} on
/// X^{n+1} and separates. Retries with a shrunk radius when x0 lands on the
/// sphere. Errors are labelled "local_emptiness", "ball_misses_set" or
/// "premise".
LocalCertificate separate_local(const LocalProblem& prob, const SeparateOptions& opt = {});

/// separate_local applied to the sets translated by -shifts at x_bar = 0;
/// points are reported in the original coordinates.
LocalCertificate separate_shifted(LocalProblem prob, const std::vector<Vector>& shifts,
                                  const SeparateOptions& opt = {});

VerificationReport verify_local(const LocalCertificate& cert, const LocalProblem& prob, const Tolerances& tol = {});

enum class Profile { unified, eta_delta, p_weighted, ep };
std::string to_string(Profile p);
Profile profile_from_string(const std::string& s);

struct ProfileSpec {
  Profile profile = Profile::unified;
  double eta = 0.0;  // eta_delta
  double p = 2.0;    // p_weighted
};

/// Instance with the norms the profile prescribes installed.
SeparationInstance install_profile(SeparationInstance inst, const ProfileSpec& spec);

struct SpecializationReport {
  Profile profile = Profile::unified;
  VerificationReport generic;
  VerificationReport specialized;
  bool ok() const { return generic.ok() && specialized.ok(); }
};

/// Re-expresses a certificate in the conclusion form of the profile. For the
/// ep profile the last set must be the closed ball of the construction.
SpecializationReport specialize(const SeparationInstance& inst, const SeparationCertificate& cert,
                                const ProfileSpec& spec, const Tolerances& tol = {});

}  // namespace gsep
