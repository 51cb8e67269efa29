#pragma once

#include "gsep/norm.hpp"

#include <cstdint>
#include <limits>

namespace gsep {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Hölder conjugate exponent, with 1 <-> inf hard-coded.
double conjugate_exponent(double p);

/// Weighted lp norm  (sum (w_i |x_i|)^p)^(1/p), p in [1, inf].
/// The dual is the weighted lq norm with weights 1/w_i.
class LpNorm final : public Norm {
 public:
  LpNorm(int dim, double p, Vector weights = {});

  int dim() const override { return dim_; }
  double eval(const Vector& x) const override;
  double dual(const Vector& y) const override;
  Vector support(const Vector& x) const override;
  Vector dual_support(const Vector& y) const override;
  bool polyhedral() const override { return p_ == 1.0 || p_ == kInf; }
  bool euclidean() const override { return p_ == 2.0 && unit_weights(); }
  std::optional<std::vector<Vector>> facets() const override;
  nlohmann::json to_json() const override;

  double p() const { return p_; }
  const Vector& weights() const { return w_; }
  bool unit_weights() const { return (w_.array() == 1.0).all(); }

 private:
  int dim_;
  double p_;
  Vector w_;
};

/// Gauge of conv(generators); generators must be symmetric and spanning.
class PolyhedralNorm final : public Norm {
 public:
  explicit PolyhedralNorm(std::vector<Vector> generators);

  int dim() const override { return dim_; }
  double eval(const Vector& x) const override;
  double dual(const Vector& y) const override;
  Vector support(const Vector& x) const override;
  Vector dual_support(const Vector& y) const override;
  bool polyhedral() const override { return true; }
  std::optional<std::vector<Vector>> facets() const override { return dual_vertices_; }
  nlohmann::json to_json() const override;

  const std::vector<Vector>& generators() const { return gens_; }

 private:
  int dim_;
  std::vector<Vector> gens_;
  std::vector<Vector> dual_vertices_;
};

/// gamma * N.
class ScaledNorm final : public Norm {
 public:
  ScaledNorm(double gamma, NormPtr inner);

  int dim() const override { return inner_->dim(); }
  int blocks() const override { return inner_->blocks(); }
  double eval(const Vector& x) const override { return gamma_ * inner_->eval(x); }
  double dual(const Vector& y) const override { return inner_->dual(y) / gamma_; }
  Vector support(const Vector& x) const override { return gamma_ * inner_->support(x); }
  Vector dual_support(const Vector& y) const override { return inner_->dual_support(y) / gamma_; }
  bool polyhedral() const override { return inner_->polyhedral(); }
  std::optional<std::vector<Vector>> facets() const override;
  nlohmann::json to_json() const override;

  double gamma() const { return gamma_; }
  const NormPtr& inner() const { return inner_; }

 private:
  double gamma_;
  NormPtr inner_;
};

/// (x_1, ..., x_k) -> outer(child_1(x_1), ..., child_k(x_k)).
///
/// A norm whenever `outer` is monotone on the nonnegative orthant; then the
/// dual is outer*(child_1*(y_1), ...). Uncertified compositions evaluate but
/// refuse dual-side queries.
class Composition final : public Norm {
 public:
  Composition(NormPtr outer, std::vector<NormPtr> children, bool monotone_certified,
              nlohmann::json spec);

  int dim() const override { return dim_; }
  int blocks() const override { return blocks_; }
  double eval(const Vector& x) const override;
  double dual(const Vector& y) const override;
  Vector support(const Vector& x) const override;
  Vector dual_support(const Vector& y) const override;
  bool polyhedral() const override;
  std::optional<std::vector<Vector>> facets() const override;
  nlohmann::json to_json() const override { return spec_; }

  const NormPtr& outer() const { return outer_; }
  const std::vector<NormPtr>& children() const { return children_; }
  bool certified() const { return certified_; }
  Vector child_values(const Vector& x) const;

 private:
  void require_certified(const char* what) const;

  NormPtr outer_;
  std::vector<NormPtr> children_;
  std::vector<int> offsets_;
  bool certified_;
  nlohmann::json spec_;
  int dim_ = 0;
  int blocks_ = 0;
};

// Factories.
NormPtr euclidean(int d);
NormPtr lp_norm(int d, double p, Vector weights = {});
NormPtr polyhedral_norm(std::vector<Vector> generators);

/// max_i ‖x_i‖ over n blocks.
NormPtr max_of_blocks(const NormPtr& base, int n);
/// (sum (w_i ‖x_i‖)^p)^(1/p) over n blocks.
NormPtr p_composition(double p, Vector weights, const NormPtr& base, int n);
/// max{inner(x_1..x_{n-1}), gamma ‖x_n‖}. With gamma == 1 and a max-of-blocks
/// inner over the same base this is max_of_blocks(base, n) itself.
NormPtr gamma_norm(const NormPtr& inner, double gamma, const NormPtr& base);

/// A norm on R^n used as the outer norm of a composition.
struct MonotoneVectorNorm {
  NormPtr norm;
  bool monotone_certified = false;
};

struct SamplingBudget {
  int samples = 10000;
  std::uint64_t seed = 1;
};

/// Pair with |alpha_i| <= |beta_i| componentwise but ‖alpha‖ > ‖beta‖.
struct MonotoneWitness {
  Vector alpha, beta;
  double alpha_value = 0.0, beta_value = 0.0;
};

struct MonotoneCheck {
  bool ok = true;
  std::optional<MonotoneWitness> witness;
  SamplingBudget budget;
  int used = 0;
};

MonotoneCheck check_monotone(const Norm& vn, const SamplingBudget& budget = {});

/// Pair with ‖x + y‖ > ‖x‖ + ‖y‖.
struct TriangleWitness {
  Vector x, y;
  double x_value = 0.0, y_value = 0.0, sum_value = 0.0;
};

struct TriangleCheck {
  bool ok = true;
  std::optional<TriangleWitness> witness;
  SamplingBudget budget;
  int used = 0;
};

TriangleCheck check_triangle(const Norm& n, const SamplingBudget& budget = {});

class NonMonotone : public Error {
 public:
  NonMonotone(const std::string& what, MonotoneWitness w) : Error(what, "monotone"), witness(std::move(w)) {}
  MonotoneWitness witness;
};

/// (u_1..u_n) -> vn(‖u_1‖, ..., ‖u_n‖). Throws NonMonotone when the vector norm
/// is not certified or a sampled monotonicity witness exists.
NormPtr compose_monotone(const MonotoneVectorNorm& vn, const NormPtr& base, int n,
                         const SamplingBudget& budget = {});
/// Same composition without any certification; used to exhibit failures.
NormPtr compose_forced(const NormPtr& vn, const NormPtr& base, int n);

// Serialization in the instance-file schema.
NormPtr base_norm_from_json(const nlohmann::json& j, int d);
NormPtr product_norm_from_json(const nlohmann::json& j, const NormPtr& base, int n);

}  // namespace gsep
