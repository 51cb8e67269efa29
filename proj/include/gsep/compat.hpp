#pragma once

#include "gsep/norms.hpp"

#include <array>
#include <string>

namespace gsep {

enum class Condition { C1, C2, C3, C4, C5, C6 };

std::string to_string(Condition c);

/// Norms a compatibility condition speaks about. C3-C6 use `product` (on X^n)
/// and `base`; C1 and C2 use `inner` (on X^{n-1}), `plus` (on X^n) and `base`.
struct NormFamily {
  NormPtr base;
  NormPtr inner;
  NormPtr plus;
  NormPtr product;
};

struct KappaReport {
  Condition condition = Condition::C1;
  /// Ratio attained at `witness`; a certified lower bound on the best constant.
  double kappa_hat = 0.0;
  std::vector<Vector> witness;
  /// Closed-form constant when the norm family is recognized.
  std::optional<double> analytic;
  int samples = 0;
  std::uint64_t seed = 0;
  /// The constant exists (the norms are genuine norms); every finite-dimensional
  /// pair of norms is compatible, the question is only the value of kappa.
  bool certified = false;

  /// Constant used downstream: analytic when known, else the sampled bound.
  double kappa() const { return analytic.value_or(kappa_hat); }
};

/// Value of the condition's ratio at a tuple (flattened blocks).
double kappa_ratio(Condition c, const NormFamily& f, const Vector& tuple);

KappaReport estimate_kappa(Condition c, const NormFamily& f, const SamplingBudget& budget = {});

/// Closed forms for C3..C6 of p-compositions (weighted) and gamma norms built
/// over them; indexes 0..3 hold C3..C6.
std::optional<std::array<double, 4>> analytic_product_constants(const Norm& product, const NormPtr& base);

struct RelationRow {
  std::string relation;
  double bound = 0.0;     // composed from premise constants
  double observed = 0.0;  // measured constant of the conclusion
  bool holds = false;
};

/// C2 & C5 => C1, C1 & C3 => C2 (C3, C5 of the inner norm), C4 => C5, C4 => C6
/// (for the plus norm on X^n).
std::vector<RelationRow> verify_relations(const NormFamily& f, const SamplingBudget& budget = {});

}  // namespace gsep
