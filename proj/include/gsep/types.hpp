#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace gsep {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Fixed numerical tolerances. Every tolerance used by a check is one of
/// these (possibly scaled by the instance's tol_scale).
struct Tolerances {
  double feasibility = 1e-9;   // LP primal feasibility
  double cone_membership = 1e-8;
  double report = 1e-7;        // equality conditions in reports
  double activity = 1e-8;      // active constraint rows
  double strict_margin = 1e-9; // strict inequalities

  Tolerances scaled(double s) const {
    return {feasibility * s, cone_membership * s, report * s, activity * s, strict_margin * s};
  }
};

/// Base error; `label` names the failing condition (e.g. "premise", "C6").
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, std::string label = {})
      : std::runtime_error(what), label_(std::move(label)) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

inline void require_dim(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(got) +
                         " does not match " + std::to_string(want));
  }
}

inline bool all_finite(const Vector& v) { return v.allFinite(); }

/// Block i of a flat product-space vector with block size d.
inline auto block(Vector& v, int i, int d) { return v.segment(i * d, d); }
inline auto block(const Vector& v, int i, int d) { return v.segment(i * d, d); }

/// Concatenate vectors into one flat product-space vector.
inline Vector concat(const std::vector<Vector>& parts) {
  Eigen::Index total = 0;
  for (const auto& p : parts) total += p.size();
  Vector out(total);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    out.segment(at, p.size()) = p;
    at += p.size();
  }
  return out;
}

inline std::vector<Vector> split(const Vector& v, int d) {
  std::vector<Vector> out;
  for (Eigen::Index i = 0; i + d <= v.size(); i += d) out.emplace_back(v.segment(i, d));
  return out;
}

}  // namespace gsep
