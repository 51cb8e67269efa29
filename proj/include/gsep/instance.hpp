#pragma once

#include "gsep/sets.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>

namespace gsep {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolkitVersion = "0.1.0";

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);
/// FNV-1a of the compact dump; object keys are sorted, so equal documents
/// give equal digests.
std::string json_digest(const nlohmann::json& j);

nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const std::vector<Vector>& vs);

struct Parameters {
  std::optional<double> eps, delta, rho, tau, alpha, beta, eta, p;
};

/// Outer norm on R^blocks checked by norms-check, with optional probe pairs.
struct NormProbe {
  int blocks = 0;
  nlohmann::json vector_norm;
  std::vector<std::pair<Vector, Vector>> monotone_pairs;  // |a| <= |b| componentwise
  std::vector<std::pair<Vector, Vector>> triangle_pairs;
};

/// One problem instance of any command. Norm specs are kept as loaded so the
/// instance serializes back to the same document.
struct Instance {
  std::string name;
  int dimension = 0;
  std::vector<SetPtr> sets;
  std::optional<Vector> x_bar;
  std::vector<Vector> omega;
  std::vector<Vector> shifts;
  nlohmann::json base_spec, inner_spec, plus_spec, product_spec;
  NormPtr base, inner, plus, product;
  Parameters params;
  std::string profile;
  std::optional<NormProbe> probe;

  int n() const { return static_cast<int>(sets.size()); }
  nlohmann::json to_json() const;
  std::string digest() const { return json_digest(to_json()); }
};

/// Errors are labelled "schema" (with the offending location) or "invariant".
Instance parse_instance(const nlohmann::json& j);
Instance load_instance(const std::string& path);

}  // namespace gsep
