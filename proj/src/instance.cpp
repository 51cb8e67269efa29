#include "gsep/instance.hpp"

#include "gsep/norms.hpp"
#include "gsep/separation.hpp"

#include <cstdio>
#include <fstream>
#include <set>

namespace gsep {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string json_digest(const nlohmann::json& j) { return hex64(fnv1a64(j.dump())); }

nlohmann::json to_json(const Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

nlohmann::json to_json(const std::vector<Vector>& vs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error("schema: " + what + " at " + where, "schema");
}

Vector vector_at(const nlohmann::json& j, const std::string& where, int dim) {
  if (!j.is_array()) schema_error(where, "expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) schema_error(where + "/" + std::to_string(i), "expected a number");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  if (dim >= 0 && v.size() != dim) {
    schema_error(where, "expected " + std::to_string(dim) + " entries, got " + std::to_string(v.size()));
  }
  return v;
}

std::vector<Vector> tuple_at(const nlohmann::json& j, const std::string& where, int count, int dim) {
  if (!j.is_array()) schema_error(where, "expected an array of vectors");
  if (count >= 0 && static_cast<int>(j.size()) != count) {
    schema_error(where, "expected " + std::to_string(count) + " vectors, got " + std::to_string(j.size()));
  }
  std::vector<Vector> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vector_at(j[i], where + "/" + std::to_string(i), dim));
  return out;
}

void only_keys(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) schema_error(where + "/" + k, "unknown field");
  }
}

// Runs f and re-labels library and json errors with the location.
template <class F>
auto at(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DimensionError& e) {
    schema_error(where, e.what());
  } catch (const nlohmann::json::exception& e) {
    schema_error(where, e.what());
  } catch (const Error& e) {
    if (e.label() == "schema") schema_error(where, e.what());
    throw;
  }
}

nlohmann::json pairs_json(const std::vector<std::pair<Vector, Vector>>& ps) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [a, b] : ps) out.push_back({to_json(a), to_json(b)});
  return out;
}

std::vector<std::pair<Vector, Vector>> pairs_at(const nlohmann::json& j, const std::string& where, int dim) {
  std::vector<std::pair<Vector, Vector>> out;
  if (!j.is_array()) schema_error(where, "expected an array of pairs");
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto t = tuple_at(j[i], where + "/" + std::to_string(i), 2, dim);
    out.emplace_back(t[0], t[1]);
  }
  return out;
}

}  // namespace

nlohmann::json Instance::to_json() const {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["name"] = name;
  j["dimension"] = dimension;
  nlohmann::json s = nlohmann::json::array();
  for (const auto& set : sets) s.push_back(set->to_json());
  j["sets"] = s;
  nlohmann::json points = nlohmann::json::object();
  if (x_bar) points["x_bar"] = gsep::to_json(*x_bar);
  if (!omega.empty()) points["omega"] = gsep::to_json(omega);
  if (!shifts.empty()) points["shifts"] = gsep::to_json(shifts);
  j["points"] = points;
  nlohmann::json norms = nlohmann::json::object();
  if (!base_spec.is_null()) norms["base"] = base_spec;
  if (!inner_spec.is_null()) norms["inner"] = inner_spec;
  if (!plus_spec.is_null()) norms["plus"] = plus_spec;
  if (!product_spec.is_null()) norms["product"] = product_spec;
  j["norms"] = norms;
  nlohmann::json p = nlohmann::json::object();
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) p[key] = *v;
  };
  put("eps", params.eps);
  put("delta", params.delta);
  put("rho", params.rho);
  put("tau", params.tau);
  put("alpha", params.alpha);
  put("beta", params.beta);
  put("eta", params.eta);
  put("p", params.p);
  j["parameters"] = p;
  if (!profile.empty()) j["profile"] = profile;
  if (probe) {
    j["norm_probe"] = {{"blocks", probe->blocks},
                       {"vector_norm", probe->vector_norm},
                       {"monotone_pairs", pairs_json(probe->monotone_pairs)},
                       {"triangle_pairs", pairs_json(probe->triangle_pairs)}};
  }
  return j;
}

Instance parse_instance(const nlohmann::json& j) {
  only_keys(j, {"schema", "name", "dimension", "sets", "points", "norms", "parameters", "profile", "norm_probe"}, "/");
  if (!j.contains("schema") || !j["schema"].is_number_integer() || j["schema"].get<int>() != kSchemaVersion) {
    schema_error("/schema", "expected schema 1");
  }
  Instance inst;
  inst.name = at("/name", [&] { return j.value("name", std::string{}); });
  if (!j.contains("dimension") || !j["dimension"].is_number_integer()) schema_error("/dimension", "expected an integer");
  inst.dimension = j["dimension"].get<int>();
  const int d = inst.dimension;
  if (d < 1) schema_error("/dimension", "must be positive");

  if (j.contains("sets")) {
    if (!j["sets"].is_array()) schema_error("/sets", "expected an array");
    for (std::size_t i = 0; i < j["sets"].size(); ++i) {
      const std::string where = "/sets/" + std::to_string(i);
      inst.sets.push_back(at(where, [&] { return SetExpr::from_json(j["sets"][i], d); }));
    }
  }
  const int n = inst.n();

  if (j.contains("points")) {
    const auto& p = j["points"];
    only_keys(p, {"x_bar", "omega", "shifts"}, "/points");
    if (p.contains("x_bar")) inst.x_bar = vector_at(p["x_bar"], "/points/x_bar", d);
    if (p.contains("omega")) inst.omega = tuple_at(p["omega"], "/points/omega", n, d);
    if (p.contains("shifts")) inst.shifts = tuple_at(p["shifts"], "/points/shifts", n, d);
  }

  if (j.contains("norms")) {
    const auto& ns = j["norms"];
    only_keys(ns, {"base", "inner", "plus", "product"}, "/norms");
    if (ns.contains("base")) {
      inst.base_spec = ns["base"];
      inst.base = at("/norms/base", [&] { return base_norm_from_json(ns["base"], d); });
    }
    auto product = [&](const char* key, nlohmann::json& spec, NormPtr& out, int blocks) {
      if (!ns.contains(key)) return;
      const std::string where = std::string("/norms/") + key;
      if (!inst.base) schema_error(where, "product norms need a base norm");
      if (blocks < 1) schema_error(where, "needs sets");
      spec = ns[key];
      out = at(where, [&] { return product_norm_from_json(ns[key], inst.base, blocks); });
    };
    product("inner", inst.inner_spec, inst.inner, n - 1);
    product("plus", inst.plus_spec, inst.plus, n);
    product("product", inst.product_spec, inst.product, n);
  }

  if (j.contains("parameters")) {
    const auto& p = j["parameters"];
    only_keys(p, {"eps", "delta", "rho", "tau", "alpha", "beta", "eta", "p"}, "/parameters");
    auto get = [&](const char* key, std::optional<double>& out) {
      if (!p.contains(key)) return;
      if (!p[key].is_number()) schema_error(std::string("/parameters/") + key, "expected a number");
      out = p[key].get<double>();
      if (!(*out > 0.0)) throw Error(std::string("parameter ") + key + " must be positive", "invariant");
    };
    auto& q = inst.params;
    get("eps", q.eps);
    get("delta", q.delta);
    get("rho", q.rho);
    get("tau", q.tau);
    get("alpha", q.alpha);
    get("beta", q.beta);
    get("eta", q.eta);
    get("p", q.p);
    if (q.tau && !(*q.tau < 1.0)) throw Error("parameter tau must lie in (0, 1)", "invariant");
  }
  if (j.contains("profile")) {
    inst.profile = at("/profile", [&] { return j["profile"].get<std::string>(); });
    at("/profile", [&] { return profile_from_string(inst.profile); });
  }
  if (j.contains("norm_probe")) {
    const auto& p = j["norm_probe"];
    only_keys(p, {"blocks", "vector_norm", "monotone_pairs", "triangle_pairs"}, "/norm_probe");
    NormProbe probe;
    probe.blocks = at("/norm_probe/blocks", [&] { return p.at("blocks").get<int>(); });
    if (probe.blocks < 1) schema_error("/norm_probe/blocks", "must be positive");
    probe.vector_norm = p.at("vector_norm");
    at("/norm_probe/vector_norm", [&] { return base_norm_from_json(probe.vector_norm, probe.blocks); });
    if (p.contains("monotone_pairs")) probe.monotone_pairs = pairs_at(p["monotone_pairs"], "/norm_probe/monotone_pairs", probe.blocks);
    if (p.contains("triangle_pairs")) probe.triangle_pairs = pairs_at(p["triangle_pairs"], "/norm_probe/triangle_pairs", probe.blocks * d);
    inst.probe = std::move(probe);
  }

  // Invariants of the referenced types.
  for (std::size_t i = 0; i < inst.omega.size(); ++i) {
    if (!contains(*inst.sets[i], inst.omega[i], 1e-9)) {
      throw Error("omega_" + std::to_string(i) + " is outside set " + std::to_string(i), "invariant");
    }
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path, "io");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("schema: " + std::string(e.what()) + " in " + path, "schema");
  }
  return parse_instance(j);
}

}  // namespace gsep
