#pragma once

#include "gsep/types.hpp"

#include <nlohmann/json.hpp>

#include <memory>
#include <optional>

namespace gsep {

/// An evaluable norm on R^dim together with its dual norm.
///
/// Product-space norms act on flat vectors made of `blocks()` consecutive
/// blocks of size `block_dim()`.
class Norm {
 public:
  virtual ~Norm() = default;

  virtual int dim() const = 0;
  virtual int blocks() const { return 1; }
  int block_dim() const { return dim() / blocks(); }

  virtual double eval(const Vector& x) const = 0;
  virtual double dual(const Vector& y) const = 0;

  /// A vector u with dual(u) == 1 and <u, x> == eval(x).
  virtual Vector support(const Vector& x) const = 0;
  /// A vector v with eval(v) == 1 and <y, v> == dual(y).
  virtual Vector dual_support(const Vector& y) const = 0;

  /// True when the unit ball is a polytope.
  virtual bool polyhedral() const = 0;
  /// True for the plain (unweighted) Euclidean norm.
  virtual bool euclidean() const { return false; }
  /// For polyhedral norms: vectors a_k with eval(x) == max_k <a_k, x>.
  virtual std::optional<std::vector<Vector>> facets() const { return std::nullopt; }

  virtual nlohmann::json to_json() const = 0;
};

using NormPtr = std::shared_ptr<const Norm>;

/// The dual norm viewed as a primal norm.
class DualNorm final : public Norm {
 public:
  explicit DualNorm(NormPtr primal) : p_(std::move(primal)) {}
  int dim() const override { return p_->dim(); }
  int blocks() const override { return p_->blocks(); }
  double eval(const Vector& x) const override { return p_->dual(x); }
  double dual(const Vector& y) const override { return p_->eval(y); }
  Vector support(const Vector& x) const override { return p_->dual_support(x); }
  Vector dual_support(const Vector& y) const override { return p_->support(y); }
  bool polyhedral() const override { return p_->polyhedral(); }
  bool euclidean() const override { return p_->euclidean(); }
  nlohmann::json to_json() const override { return {{"kind", "dual"}, {"of", p_->to_json()}}; }
  const NormPtr& primal() const { return p_; }

 private:
  NormPtr p_;
};

inline NormPtr dual_of(const NormPtr& n) { return std::make_shared<DualNorm>(n); }

}  // namespace gsep
