#pragma once

#include "gsep/separation.hpp"

namespace gsep {

/// Sets with a common point x_bar, the base norm on X and the norm on X^n.
struct Collection {
  std::vector<SetPtr> sets;
  Vector x_bar;
  NormPtr base;
  NormPtr norm;

  int n() const { return static_cast<int>(sets.size()); }
  int d() const { return static_cast<int>(x_bar.size()); }
  /// Throws DimensionError on inconsistent sizes and Error("x_bar_outside")
  /// when x_bar is not a common point.
  void validate(double tol = 1e-9) const;
};

/// Bounds every "none found" answer: the definitions quantify over
/// uncountable families, the scans only over these.
struct SearchBudget {
  int random_directions = 256;
  int rho_points = 12;
  /// Extra base points x_i near x_bar besides x_bar itself.
  int point_samples = 2;
  std::vector<double> eps_schedule{1.0, 0.1, 0.01, 0.001};
  std::uint64_t seed = 1;
};

/// Perturbation directions in X^n with unit norm: coordinate rays, normal
/// cone generators at x_bar (alone and against the other blocks) and seeded
/// random tuples, in this order.
std::vector<Vector> direction_schedule(const Collection& c, const SearchBudget& b);

/// rho_points log-spaced radii in (0, eps), largest first.
std::vector<double> rho_grid(double eps, int points);

/// Whether the intersection of the translated sets (Omega_i - shifts_i) with
/// the closed base-norm ball B[center, radius] is empty. "Empty" requires the
/// certified distance to exceed radius + margin, so an empty closed ball also
/// answers the open-ball question.
struct Emptiness {
  bool empty = false;
  /// A common point within the ball when not empty.
  std::optional<Vector> point;
  /// Smallest certified distance from center over the piece combinations.
  double distance_lower = 0.0;
};
Emptiness shifted_emptiness(const std::vector<SetPtr>& sets, const std::vector<Vector>& shifts, const Vector& center,
                            double radius, const Norm& base, double margin = 1e-9);

/// rho, points x_i in Omega_i and perturbations a_i.
struct StationarityWitness {
  double alpha = 0.0;
  double eps = 0.0;
  double rho = 0.0;
  std::vector<Vector> x;
  std::vector<Vector> a;
  double x_dist = 0.0;  // norm of (x_i - x_bar)
  double a_norm = 0.0;  // norm of (a_i)
};

/// Re-verifies every condition of the witness independently (membership,
/// both norm bounds, LP emptiness of the intersection with rho B).
VerificationReport verify_witness(const StationarityWitness& w, const Collection& c, const Tolerances& tol = {});

struct ScanStats {
  long tested = 0;
  int directions = 0;
  int radii = 0;
  int points = 0;
};

struct ShiftWitness {
  double eps = 0.0;
  double rho = 0.0;
  std::vector<Vector> a;
};

/// One row per eps of the schedule; `a` is empty when none was found.
struct ScheduleResult {
  std::vector<ShiftWitness> rows;
  ScanStats stats;
  bool all_found() const;
};

/// Shifts with norm below eps emptying the intersection within B_rho(x_bar).
ScheduleResult check_extremal(const Collection& c, double rho, const SearchBudget& b = {});

/// rho in (0, eps) on the log grid and shifts with norm below eps * rho.
ScheduleResult check_stationary(const Collection& c, const SearchBudget& b = {});

struct AlphaScan {
  std::optional<StationarityWitness> witness;
  ScanStats stats;
};

/// First witness over the rho grid in (0, eps), base points near x_bar and the
/// direction schedule with norm below alpha * rho.
AlphaScan check_alpha_stationary(const Collection& c, double alpha, double eps, const SearchBudget& b = {});

/// Adversarial scan of the transversality definition; `counterexample` is set
/// when some configuration empties the intersection.
struct TransversalScan {
  bool confirmed = false;
  std::optional<StationarityWitness> counterexample;
  ScanStats stats;
};
TransversalScan check_alpha_transversal(const Collection& c, double alpha, double eps, const SearchBudget& b = {});

struct TransversalityReport {
  /// Infinity when no unit normal tuple exists near x_bar.
  double alpha_hat = 0.0;
  /// Attaining normal tuple with unit dual norm, and the points where each
  /// component is normal.
  std::vector<Vector> x_star;
  std::vector<Vector> points;
  double eps = 0.0;
  int face_tuples = 0;
  /// False when a non-polyhedral product norm forced the local search.
  bool exact = true;
};

/// Minimum of the dual base norm of sum x_i* over unit normal tuples at points
/// of faces meeting B_eps(x_bar). Polyhedral sets only.
TransversalityReport transversality_constant(const Collection& c, double eps);

struct DualStationarityCertificate {
  std::vector<Vector> x;
  std::vector<Vector> x_prime;
  std::vector<Vector> a;
  Vector x0;
  std::vector<Vector> x_star;
  Flavor flavor = Flavor::frechet;
  double alpha = 0.0;
  double beta = 0.0;
  double eps = 0.0;
  double tau = 0.0;
  double xi = 0.0;
  double kappa = 0.0;  // C6 constant used to choose xi
  double rho = 0.0;
  double eps_prime = 0.0;
  double delta = 0.0;
  double sum_norm = 0.0;   // dual base norm of sum x_i*
  double sum_bound = 0.0;  // (alpha + kappa xi) / (1 - xi)
  double unit = 0.0;       // dual norm of x* on X^n
  double cone_residual = 0.0;
  double alignment = 0.0;  // sum <x_i*, x0 + a_i + x'_i - x_i>
  double m = 0.0;
  StationarityWitness witness;
};

struct DualOptions {
  SeparateOptions separate;
  SearchBudget budget;
  SamplingBudget kappa_budget{4000, 1};
};

/// The Ekeland-based chain producing x, x', a, x0 and a unit normal tuple x*
/// with small sum. Errors: "C6" (constant unavailable), "witness_unavailable".
DualStationarityCertificate dual_stationarity_certificate(const Collection& c, double alpha, double beta, double eps,
                                                          double tau, const DualOptions& opt = {});

/// Checks of the near-point bounds, the small sum, the unit norm, cone
/// membership and the tau alignment.
VerificationReport verify_dual_certificate(const DualStationarityCertificate& cert, const Collection& c,
                                           const Tolerances& tol = {});

/// The simplified form: points and the unit normal tuple only.
struct SimplifiedCertificate {
  std::vector<Vector> x;
  std::vector<Vector> x_star;
};
inline SimplifiedCertificate simplified(const DualStationarityCertificate& cert) { return {cert.x, cert.x_star}; }

/// Primal witness from a normal tuple with sum below beta < alpha. Errors:
/// "order" (alpha <= beta), "certificate" (input fails its conditions),
/// "nonempty" (still meeting after the radius halvings).
StationarityWitness dual_to_primal(const Collection& c, double beta, double alpha, double eps,
                                   const SimplifiedCertificate& cert, const SamplingBudget& kappa_budget = {4000, 1});

struct SuiteRow {
  std::string assertion;
  bool holds = false;
  std::string note;
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
  bool agree() const;
  bool value() const { return !rows.empty() && rows.front().holds; }
};

/// Local extremality, stationarity, approximate stationarity and the global
/// perturbation property for convex sets; `agree` when all four match.
SuiteReport convex_equivalence_suite(const Collection& c, const SearchBudget& b = {});

/// Approximate stationarity, the full dual conditions and the simplified dual
/// conditions (the latter from the transversality constant). Error "C4" when
/// the constant is not certified.
SuiteReport extended_ep_suite(const Collection& c, const SearchBudget& b = {});

}  // namespace gsep
