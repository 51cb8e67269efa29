#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gsep/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace gsep;
namespace fs = std::filesystem;

namespace {

const fs::path corpus{GSEP_CORPUS_DIR};

std::vector<fs::path> corpus_files() {
  std::vector<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(corpus)) {
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gsep_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

int cli(const std::string& args) {
  const std::string cmd = std::string(GSEP_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string error_label(const nlohmann::json& j, std::string* message = nullptr) {
  try {
    parse_instance(j);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.label();
  }
  return {};
}

const ResidualRow* row(const Report& r, const std::string& label) {
  for (const auto& x : r.residuals) {
    if (x.label == label) return &x;
  }
  return nullptr;
}

nlohmann::json half_lines() { return read_json(corpus / "separate" / "half_lines.json"); }

}  // namespace

TEST_CASE("corpus layout") {
  auto count = [](const std::string& dir) {
    return std::distance(fs::directory_iterator(corpus / dir), fs::directory_iterator{});
  };
  CHECK(count("separate") >= 25);
  CHECK(count("equivalence-suite") >= 10);
  for (const auto& c : commands()) CHECK(fs::is_directory(corpus / c));
}

TEST_CASE("serialized instances reload with the same digest") {
  for (const auto& p : corpus_files()) {
    CAPTURE(p.string());
    const Instance a = load_instance(p.string());
    const fs::path copy = scratch("copy.json");
    write_file(copy, a.to_json().dump(2));
    const Instance b = load_instance(copy.string());
    CHECK(a.digest() == b.digest());
    CHECK(a.to_json() == b.to_json());
  }
}

TEST_CASE("schema errors carry their location") {
  std::string msg;
  auto j = half_lines();
  j["norms"]["base"] = {{"kind", "taxicab"}};
  CHECK(error_label(j, &msg) == "schema");
  CHECK(msg.find("/norms/base") != std::string::npos);
  CHECK(msg.find("taxicab") != std::string::npos);

  j = half_lines();
  j["sets"][1]["kind"] = "simplex";
  CHECK(error_label(j, &msg) == "schema");
  CHECK(msg.find("/sets/1") != std::string::npos);

  j = half_lines();
  j["colour"] = "red";
  CHECK(error_label(j, &msg) == "schema");
  CHECK(msg.find("/colour") != std::string::npos);

  j = half_lines();
  j["schema"] = 2;
  CHECK(error_label(j) == "schema");

  j = half_lines();
  j["points"]["omega"][0] = {0.0, 1.0};
  CHECK(error_label(j, &msg) == "schema");
  CHECK(msg.find("/points/omega/0") != std::string::npos);
}

TEST_CASE("invariant failures name the set") {
  std::string msg;
  auto j = half_lines();
  j["points"]["omega"][1] = {0.5};
  CHECK(error_label(j, &msg) == "invariant");
  CHECK(msg.find("set 1") != std::string::npos);

  j = half_lines();
  j["parameters"]["tau"] = 1.0;
  CHECK(error_label(j) == "invariant");
  j = half_lines();
  j["parameters"]["delta"] = -0.1;
  CHECK(error_label(j) == "invariant");
}

TEST_CASE("separate reports a verified certificate") {
  const auto r = run("separate", parse_instance(half_lines()));
  CHECK(r.outcome == Outcome::verified);
  CHECK(exit_code(r.outcome) == 0);
  REQUIRE(!r.residuals.empty());
  for (const auto& x : r.residuals) {
    CAPTURE(x.label);
    CHECK(x.holds);
  }
  // Half-lines (-inf, 0] and [1, inf): the multipliers are (1, -1) up to sign.
  const auto xs = r.result.at("certificate").at("x_star");
  CHECK(std::abs(xs[0][0].get<double>()) == doctest::Approx(1.0));
  CHECK(xs[0][0].get<double>() + xs[1][0].get<double>() == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("norms-check reproduces the skew norm counterexamples") {
  const auto r = run("norms-check", load_instance((corpus / "norms-check" / "skew_vector_norm.json").string()));
  CHECK(r.outcome == Outcome::absent);
  CHECK(exit_code(r.outcome) == 1);
  const auto* mono = row(r, "monotone_pair_0");
  REQUIRE(mono);
  CHECK(mono->value == doctest::Approx(3.0));
  CHECK(mono->bound == doctest::Approx(2.0));
  CHECK_FALSE(mono->holds);
  const auto* tri = row(r, "triangle_pair_0");
  REQUIRE(tri);
  CHECK(tri->value == doctest::Approx(4.0));
  CHECK(tri->bound == doctest::Approx(2.0));
  CHECK_FALSE(tri->holds);
}

TEST_CASE("transversality of crossing axes against a sampled oracle") {
  const auto r = run("transversality", load_instance((corpus / "transversality" / "crossing_axes.json").string()));
  CHECK(r.outcome == Outcome::verified);
  // Normals (0, s) and (t, 0) with max(|s|, |t|) = 1; the sum has norm hypot(s, t).
  double oracle = 1e9;
  for (int k = 0; k <= 2000; ++k) {
    const double s = -1.0 + k / 1000.0;
    oracle = std::min(oracle, std::hypot(s, 1.0));
  }
  CHECK(r.result.at("alpha_hat").get<double>() == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("none-found stationarity exits 1 with a budget note") {
  const auto r = run("stationarity", load_instance((corpus / "stationarity" / "crossing_axes_alpha.json").string()));
  CHECK(r.outcome == Outcome::absent);
  CHECK(r.message.find("budget") != std::string::npos);
  CHECK(r.budget.at("random_directions") == 256);
}

TEST_CASE("module errors become error reports") {
  auto j = half_lines();
  j["points"]["omega"] = {{-1.0}, {2.0}};  // gap 3 - 1 above eps 1.5
  const auto r = run("separate", parse_instance(j));
  CHECK(r.outcome == Outcome::error);
  CHECK(r.label == "premise");
  j = half_lines();
  j["norms"].erase("plus");
  CHECK(run("separate", parse_instance(j)).label == "schema");
}

TEST_CASE("reports are byte-stable and self-digesting") {
  const auto inst = parse_instance(half_lines());
  const auto a = run("separate", inst);
  const auto b = run("separate", inst);
  CHECK(emit(a, Format::json) == emit(b, Format::json));
  CHECK(emit(a, Format::table) == emit(b, Format::table));
  auto doc = a.to_json();
  const std::string digest = doc.at("digest");
  doc.erase("digest");
  CHECK(json_digest(doc) == digest);
  CHECK(emit(a, Format::table).find("unit_norm") != std::string::npos);
}

TEST_CASE("command line exit codes") {
  const std::string sep = (corpus / "separate" / "half_lines.json").string();
  CHECK(cli("separate " + sep) == 0);
  CHECK(cli("separate " + sep + " --format table --seed 7 --budget 64 --tol-scale 2") == 0);
  CHECK(cli("stationarity " + (corpus / "stationarity" / "crossing_axes_alpha.json").string() + " --budget 32") == 1);
  const fs::path bad = scratch("bad.json");
  auto j = half_lines();
  j["norms"]["base"] = {{"kind", "taxicab"}};
  write_file(bad, j.dump());
  CHECK(cli("separate " + bad.string()) == 2);
  CHECK(cli("frobnicate " + sep) == 2);
  CHECK(cli("separate " + sep + " --format csv") == 2);
  CHECK(cli("specialize --suite " + (corpus / "specialize").string() + " --format csv") == 0);
}
