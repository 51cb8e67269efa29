#include "gsep/report.hpp"

#include "gsep/norms.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <iomanip>
#include <sstream>

namespace gsep {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::verified:
      return "verified";
    case Outcome::absent:
      return "absent";
    case Outcome::error:
      return "error";
  }
  return "";
}

int exit_code(Outcome o) { return o == Outcome::verified ? 0 : (o == Outcome::absent ? 1 : 2); }

Format format_from_string(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "table") return Format::table;
  throw Error("unknown format \"" + s + "\"", "usage");
}

SearchBudget RunOptions::search() const {
  SearchBudget b;
  b.random_directions = budget;
  b.seed = seed;
  return b;
}

SamplingBudget RunOptions::sampling() const { return {40 * budget, seed}; }

const std::vector<std::string>& commands() {
  static const std::vector<std::string> all{"norms-check",  "separate",     "separate-local", "separate-shifted",
                                            "specialize",   "stationarity", "transversality", "equivalence-suite"};
  return all;
}

namespace {

nlohmann::json num(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

nlohmann::json rows_json(const std::vector<ResidualRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"label", r.label},
                   {"value", num(r.value)},
                   {"bound", num(r.bound)},
                   {"relation", r.relation},
                   {"tolerance", r.tolerance},
                   {"holds", r.holds}});
  }
  return out;
}

}  // namespace

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["instance"] = {{"name", instance_name}, {"digest", instance_digest}};
  j["outcome"] = gsep::to_string(outcome);
  j["exit_code"] = exit_code(outcome);
  j["label"] = label;
  j["message"] = message;
  j["result"] = result;
  j["residuals"] = rows_json(residuals);
  j["budget"] = budget;
  j["toolkit_version"] = kToolkitVersion;
  j["digest"] = json_digest(j);
  return j;
}

namespace {

std::string fixed(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

}  // namespace

std::string emit(const Report& r, Format f) {
  if (f == Format::json) return r.to_json().dump(2) + "\n";
  std::ostringstream os;
  os << "command:  " << r.command << "\n";
  os << "instance: " << r.instance_name << " (" << r.instance_digest << ")\n";
  os << "outcome:  " << to_string(r.outcome) << " (exit " << exit_code(r.outcome) << ")";
  if (!r.label.empty()) os << " [" << r.label << "]";
  os << "\n";
  if (!r.message.empty()) os << "message:  " << r.message << "\n";
  if (!r.residuals.empty()) {
    std::size_t w = 5;
    for (const auto& row : r.residuals) w = std::max(w, row.label.size());
    os << std::left << std::setw(static_cast<int>(w) + 2) << "check" << std::setw(18) << "value" << std::setw(4) << ""
       << std::setw(18) << "bound" << std::setw(10) << "tol"
       << "holds\n";
    for (const auto& row : r.residuals) {
      os << std::left << std::setw(static_cast<int>(w) + 2) << row.label << std::setw(18) << fixed(row.value)
         << std::setw(4) << row.relation << std::setw(18) << fixed(row.bound) << std::setw(10) << fixed(row.tolerance)
         << (row.holds ? "yes" : "NO") << "\n";
    }
  }
  os << "digest:   " << r.to_json().at("digest").get<std::string>() << "\n";
  return os.str();
}

namespace {

// Builders ---------------------------------------------------------------------

std::vector<ResidualRow> rows_from(const VerificationReport& rep, const Tolerances& tol, const std::string& prefix = {}) {
  std::vector<ResidualRow> out;
  for (const auto& c : rep.checks) {
    const double t = c.relation == "<=" ? 0.0 : tol.strict_margin;
    out.push_back({prefix + c.label, c.value, c.bound, c.relation, t, c.holds});
  }
  return out;
}

bool all_hold(const std::vector<ResidualRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const ResidualRow& r) { return r.holds; });
}

std::string first_failure(const std::vector<ResidualRow>& rows) {
  for (const auto& r : rows) {
    if (!r.holds) return r.label;
  }
  return {};
}

nlohmann::json opt_num(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

nlohmann::json cert_json(const SeparationCertificate& c) {
  return {{"x", to_json(c.x)},
          {"x_star", to_json(c.x_star)},
          {"flavor", to_string(c.flavor)},
          {"eps_prime", c.eps_prime},
          {"gap", c.gap},
          {"m", c.m},
          {"alignment", c.alignment},
          {"r_sum", c.r_sum},
          {"r_unit", c.r_unit},
          {"r_cone", c.r_cone},
          {"decomposition_residual", c.decomposition_residual},
          {"tau", opt_num(c.tau)},
          {"xi", opt_num(c.xi)},
          {"kappa", opt_num(c.kappa)},
          {"branch", c.branch}};
}

nlohmann::json local_json(const LocalCertificate& c) {
  return {{"x", to_json(c.x)},       {"x_star", to_json(c.x_star)}, {"x0", to_json(c.x0)},
          {"shifts", to_json(c.shifts)}, {"rho", c.rho},              {"retries", c.retries},
          {"mixed", c.mixed},         {"unit", c.unit},              {"alignment", c.alignment},
          {"m", c.m},                 {"flavor", to_string(c.generic.flavor)}};
}

nlohmann::json witness_json(const StationarityWitness& w) {
  return {{"alpha", w.alpha}, {"eps", w.eps},       {"rho", w.rho},          {"x", to_json(w.x)},
          {"a", to_json(w.a)}, {"x_dist", w.x_dist}, {"a_norm", w.a_norm}};
}

nlohmann::json dual_json(const DualStationarityCertificate& c) {
  return {{"x", to_json(c.x)},
          {"x_prime", to_json(c.x_prime)},
          {"a", to_json(c.a)},
          {"x0", to_json(c.x0)},
          {"x_star", to_json(c.x_star)},
          {"flavor", to_string(c.flavor)},
          {"alpha", c.alpha},
          {"beta", c.beta},
          {"eps", c.eps},
          {"tau", c.tau},
          {"xi", c.xi},
          {"kappa", c.kappa},
          {"rho", c.rho},
          {"eps_prime", c.eps_prime},
          {"delta", c.delta},
          {"sum_norm", c.sum_norm},
          {"sum_bound", c.sum_bound},
          {"unit", c.unit},
          {"alignment", c.alignment},
          {"m", c.m}};
}

nlohmann::json stats_json(const ScanStats& s) {
  return {{"tested", s.tested}, {"directions", s.directions}, {"radii", s.radii}, {"points", s.points}};
}

nlohmann::json schedule_json(const ScheduleResult& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& w : r.rows) {
    rows.push_back({{"eps", w.eps}, {"rho", w.rho}, {"found", !w.a.empty()}, {"a", to_json(w.a)}});
  }
  return {{"rows", rows}, {"stats", stats_json(r.stats)}};
}

nlohmann::json suite_json(const SuiteReport& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : s.rows) rows.push_back({{"assertion", r.assertion}, {"holds", r.holds}, {"note", r.note}});
  return {{"rows", rows}, {"agree", s.agree()}};
}

nlohmann::json kappa_json(const KappaReport& k) {
  return {{"condition", to_string(k.condition)}, {"kappa_hat", k.kappa_hat},  {"analytic", opt_num(k.analytic)},
          {"samples", k.samples},                {"seed", k.seed},            {"certified", k.certified},
          {"witness", to_json(k.witness)}};
}

template <class T>
const T& need(const std::optional<T>& v, const char* what) {
  if (!v) throw Error(std::string("instance lacks ") + what, "schema");
  return *v;
}

const NormPtr& need(const NormPtr& v, const char* what) {
  if (!v) throw Error(std::string("instance lacks the ") + what + " norm", "schema");
  return v;
}

// Profiles install their own product norms, so specialize skips the check.
SeparationInstance separation_instance(const Instance& inst, bool need_norms = true) {
  SeparationInstance si;
  si.name = inst.name;
  si.sets = inst.sets;
  if (inst.omega.empty()) throw Error("instance lacks omega", "schema");
  si.omega = inst.omega;
  si.base = need(inst.base, "base");
  si.inner = need_norms ? need(inst.inner, "inner") : inst.inner;
  si.plus = need_norms ? need(inst.plus, "plus") : inst.plus;
  si.eps = need(inst.params.eps, "eps");
  si.delta = need(inst.params.delta, "delta");
  si.tau = inst.params.tau;
  return si;
}

LocalProblem local_problem(const Instance& inst) {
  LocalProblem p;
  p.sets = inst.sets;
  p.x_bar = need(inst.x_bar, "x_bar");
  p.rho = need(inst.params.rho, "rho");
  p.eps = need(inst.params.eps, "eps");
  p.delta = need(inst.params.delta, "delta");
  p.tau = inst.params.tau;
  p.base = need(inst.base, "base");
  p.norm = need(inst.product, "product");
  p.omega = inst.omega;
  return p;
}

Collection collection(const Instance& inst) {
  return {inst.sets, need(inst.x_bar, "x_bar"), need(inst.base, "base"), need(inst.product, "product")};
}

nlohmann::json budget_json(const RunOptions& opt) {
  const SearchBudget b = opt.search();
  return {{"seed", opt.seed},
          {"random_directions", b.random_directions},
          {"rho_points", b.rho_points},
          {"point_samples", b.point_samples},
          {"eps_schedule", b.eps_schedule},
          {"kappa_samples", opt.sampling().samples},
          {"tol_scale", opt.tol_scale}};
}

// Commands ---------------------------------------------------------------------

void norms_check(const Instance& inst, const RunOptions& opt, Report& r) {
  const Tolerances tol = opt.tolerances();
  bool counterexample = false;
  if (inst.probe) {
    const auto& p = *inst.probe;
    const NormPtr vn = base_norm_from_json(p.vector_norm, p.blocks);
    const auto mc = check_monotone(*vn, opt.sampling());
    nlohmann::json mono = {{"ok", mc.ok}, {"used", mc.used}};
    if (mc.witness) {
      mono["witness"] = {{"alpha", to_json(mc.witness->alpha)},
                         {"beta", to_json(mc.witness->beta)},
                         {"alpha_value", mc.witness->alpha_value},
                         {"beta_value", mc.witness->beta_value}};
    }
    r.result["monotone"] = mono;
    r.residuals.push_back({"monotone_sampled", mc.witness ? mc.witness->alpha_value : 0.0,
                           mc.witness ? mc.witness->beta_value : 0.0, "<=", 0.0, mc.ok});
    for (std::size_t k = 0; k < p.monotone_pairs.size(); ++k) {
      const auto& [a, b] = p.monotone_pairs[k];
      const double va = vn->eval(a), vb = vn->eval(b);
      r.residuals.push_back({"monotone_pair_" + std::to_string(k), va, vb, "<=", tol.report, va <= vb + tol.report});
    }
    counterexample = !mc.ok;
    if (inst.base) {
      const NormPtr forced = compose_forced(vn, inst.base, p.blocks);
      const auto tc = check_triangle(*forced, opt.sampling());
      nlohmann::json tri = {{"ok", tc.ok}, {"used", tc.used}};
      if (tc.witness) {
        tri["witness"] = {{"x", to_json(tc.witness->x)},
                          {"y", to_json(tc.witness->y)},
                          {"sum_value", tc.witness->sum_value},
                          {"x_value", tc.witness->x_value},
                          {"y_value", tc.witness->y_value}};
      }
      r.result["triangle"] = tri;
      r.residuals.push_back({"triangle_sampled", tc.witness ? tc.witness->sum_value : 0.0,
                             tc.witness ? tc.witness->x_value + tc.witness->y_value : 0.0, "<=", 0.0, tc.ok});
      for (std::size_t k = 0; k < p.triangle_pairs.size(); ++k) {
        const auto& [x, y] = p.triangle_pairs[k];
        const double s = forced->eval(x + y), b = forced->eval(x) + forced->eval(y);
        r.residuals.push_back({"triangle_pair_" + std::to_string(k), s, b, "<=", tol.report, s <= b + tol.report});
      }
      counterexample = counterexample || !tc.ok;
    }
  }

  const NormPtr product = inst.product ? inst.product : inst.plus;
  if (product) {
    NormFamily fam{inst.base, inst.inner, inst.plus, product};
    nlohmann::json ks = nlohmann::json::array();
    std::vector<Condition> conds{Condition::C3, Condition::C4, Condition::C5, Condition::C6};
    if (inst.inner && inst.plus) conds.insert(conds.begin(), {Condition::C1, Condition::C2});
    for (Condition c : conds) {
      const KappaReport k = estimate_kappa(c, fam, opt.sampling());
      ks.push_back(kappa_json(k));
      const std::string name = to_string(c);
      if (k.analytic) {
        r.residuals.push_back({name + "_sampled_below_closed_form", k.kappa_hat, *k.analytic, "<=", tol.report,
                               k.kappa_hat <= *k.analytic + tol.report});
      }
      r.residuals.push_back({name + "_certified", k.certified ? 1.0 : 0.0, 1.0, "<=", 0.0, k.certified});
    }
    r.result["kappa"] = ks;
    if (inst.inner && inst.plus) {
      nlohmann::json rel = nlohmann::json::array();
      for (const auto& row : verify_relations(fam, opt.sampling())) {
        rel.push_back({{"relation", row.relation}, {"bound", row.bound}, {"observed", row.observed}, {"holds", row.holds}});
        r.residuals.push_back({"relation " + row.relation, row.observed, row.bound, "<=", tol.report, row.holds});
      }
      r.result["relations"] = rel;
    }
  }
  if (!inst.probe && !product) throw Error("norms-check needs a norm probe or a product norm", "schema");
  if (counterexample) {
    r.outcome = Outcome::absent;
    r.label = "monotone";
    r.message = "counterexample found";
  } else {
    r.outcome = all_hold(r.residuals) ? Outcome::verified : Outcome::error;
    r.label = first_failure(r.residuals);
  }
}

void separate_cmd(const Instance& inst, const RunOptions& opt, Report& r) {
  const SeparationInstance si = separation_instance(inst);
  SeparateOptions so;
  so.tol = opt.tolerances();
  so.kappa_budget = opt.sampling();
  const auto cert = separate(si, so);
  r.result["certificate"] = cert_json(cert);
  r.residuals = rows_from(verify_certificate(cert, si, so.tol), so.tol);
  r.outcome = all_hold(r.residuals) ? Outcome::verified : Outcome::error;
  r.label = first_failure(r.residuals);
}

void local_cmd(const Instance& inst, const RunOptions& opt, Report& r, bool shifted) {
  const LocalProblem p = local_problem(inst);
  SeparateOptions so;
  so.tol = opt.tolerances();
  so.kappa_budget = opt.sampling();
  LocalCertificate cert;
  if (shifted) {
    if (inst.shifts.empty()) throw Error("instance lacks shifts", "schema");
    cert = separate_shifted(p, inst.shifts, so);
  } else {
    cert = separate_local(p, so);
  }
  r.result["certificate"] = local_json(cert);
  r.residuals = rows_from(verify_local(cert, p, so.tol), so.tol);
  r.outcome = all_hold(r.residuals) ? Outcome::verified : Outcome::error;
  r.label = first_failure(r.residuals);
}

void specialize_cmd(const Instance& inst, const RunOptions& opt, Report& r) {
  ProfileSpec spec;
  spec.profile = inst.profile.empty() ? Profile::unified : profile_from_string(inst.profile);
  if (inst.params.eta) spec.eta = *inst.params.eta;
  if (inst.params.p) spec.p = *inst.params.p;
  SeparationInstance si = separation_instance(inst, false);
  si = install_profile(si, spec);
  SeparateOptions so;
  so.tol = opt.tolerances();
  so.kappa_budget = opt.sampling();
  const auto cert = separate(si, so);
  const auto rep = specialize(si, cert, spec, so.tol);
  r.result["profile"] = to_string(spec.profile);
  r.result["certificate"] = cert_json(cert);
  r.residuals = rows_from(rep.generic, so.tol);
  for (auto& row : rows_from(rep.specialized, so.tol, to_string(spec.profile) + ".")) r.residuals.push_back(row);
  r.outcome = all_hold(r.residuals) ? Outcome::verified : Outcome::error;
  r.label = first_failure(r.residuals);
}

void stationarity_cmd(const Instance& inst, const RunOptions& opt, Report& r) {
  const Collection c = collection(inst);
  const Tolerances tol = opt.tolerances();
  const SearchBudget b = opt.search();
  if (inst.params.alpha) {
    const double alpha = *inst.params.alpha;
    const double eps = inst.params.eps.value_or(0.1);
    const auto scan = check_alpha_stationary(c, alpha, eps, b);
    r.result["scan"] = stats_json(scan.stats);
    if (!scan.witness) {
      r.outcome = Outcome::absent;
      r.label = "no_witness";
      r.message = "no witness for alpha " + fixed(alpha) + " within the search budget (" +
                  std::to_string(scan.stats.tested) + " configurations)";
      return;
    }
    r.result["witness"] = witness_json(*scan.witness);
    r.residuals = rows_from(verify_witness(*scan.witness, c, tol), tol, "witness.");
    if (inst.params.beta && *inst.params.beta > alpha) {
      DualOptions d;
      d.budget = b;
      d.kappa_budget = opt.sampling();
      const auto cert =
          dual_stationarity_certificate(c, alpha, *inst.params.beta, eps, inst.params.tau.value_or(0.5), d);
      r.result["dual_certificate"] = dual_json(cert);
      for (auto& row : rows_from(verify_dual_certificate(cert, c, tol), tol, "dual.")) r.residuals.push_back(row);
    }
  } else {
    const auto st = check_stationary(c, b);
    const auto ex = check_extremal(c, inst.params.rho.value_or(1.0), b);
    r.result["stationary"] = schedule_json(st);
    r.result["extremal"] = schedule_json(ex);
    r.residuals.push_back({"stationary_all_eps", st.all_found() ? 1.0 : 0.0, 1.0, "<=", 0.0, st.all_found()});
    r.residuals.push_back({"extremal_all_eps", ex.all_found() ? 1.0 : 0.0, 1.0, "<=", 0.0, ex.all_found()});
    if (!st.all_found()) {
      r.outcome = Outcome::absent;
      r.label = "not_stationary";
      r.message = "none found within the search budget";
      return;
    }
  }
  r.outcome = all_hold(r.residuals) ? Outcome::verified : Outcome::error;
  r.label = first_failure(r.residuals);
}

void transversality_cmd(const Instance& inst, const RunOptions& opt, Report& r) {
  const Collection c = collection(inst);
  const Tolerances tol = opt.tolerances();
  const double eps = inst.params.eps.value_or(0.1);
  const auto t = transversality_constant(c, eps);
  r.result["alpha_hat"] = num(t.alpha_hat);
  r.result["x_star"] = to_json(t.x_star);
  r.result["points"] = to_json(t.points);
  r.result["eps"] = t.eps;
  r.result["face_tuples"] = t.face_tuples;
  r.result["exact"] = t.exact;
  if (!t.x_star.empty()) {
    Vector s = Vector::Zero(inst.dimension);
    for (const auto& x : t.x_star) s += x;
    const double reproduced = c.base->dual(s);
    r.residuals.push_back({"alpha_hat_reproduced", std::abs(reproduced - t.alpha_hat), tol.report, "<=", 0.0,
                           std::abs(reproduced - t.alpha_hat) <= tol.report});
    const double unit = c.norm->dual(concat(t.x_star));
    r.residuals.push_back({"unit_norm", std::abs(unit - 1.0), tol.report, "<=", 0.0, std::abs(unit - 1.0) <= tol.report});
  }
  if (inst.params.alpha) {
    const auto scan = check_alpha_transversal(c, *inst.params.alpha, eps, opt.search());
    r.result["scan"] = stats_json(scan.stats);
    if (scan.counterexample) r.result["counterexample"] = witness_json(*scan.counterexample);
    r.residuals.push_back({"primal_scan_confirms", scan.confirmed ? 1.0 : 0.0, 1.0, "<=", 0.0,
                           scan.confirmed == (*inst.params.alpha < t.alpha_hat)});
  }
  if (!(t.alpha_hat > tol.report)) {
    r.outcome = Outcome::absent;
    r.label = "not_transversal";
    r.message = "unit normal tuples with vanishing sum exist near x_bar";
    return;
  }
  r.outcome = all_hold(r.residuals) ? Outcome::verified : Outcome::error;
  r.label = first_failure(r.residuals);
}

void equivalence_cmd(const Instance& inst, const RunOptions& opt, Report& r) {
  const Collection c = collection(inst);
  const SearchBudget b = opt.search();
  bool convex = true;
  for (const auto& s : c.sets) convex = convex && s->convex();
  bool agree = true;
  if (convex) {
    const auto s = convex_equivalence_suite(c, b);
    r.result["convex"] = suite_json(s);
    r.result["value"] = s.value();
    r.residuals.push_back({"convex_agree", s.agree() ? 1.0 : 0.0, 1.0, "<=", 0.0, s.agree()});
    agree = s.agree();
  }
  try {
    const auto s = extended_ep_suite(c, b);
    r.result["extended"] = suite_json(s);
    if (!convex) r.result["value"] = s.value();
    r.residuals.push_back({"extended_agree", s.agree() ? 1.0 : 0.0, 1.0, "<=", 0.0, s.agree()});
    agree = agree && s.agree();
  } catch (const Error& e) {
    if (e.label() != "C4" || !convex) throw;
    r.result["extended"] = {{"skipped", e.what()}};
  }
  r.outcome = agree ? Outcome::verified : Outcome::absent;
  r.label = first_failure(r.residuals);
}

}  // namespace

Report run(const std::string& command, const Instance& inst, const RunOptions& opt) {
  Report r;
  r.command = command;
  r.instance_name = inst.name;
  r.instance_digest = inst.digest();
  r.budget = budget_json(opt);
  try {
    if (command == "norms-check") {
      norms_check(inst, opt, r);
    } else if (command == "separate") {
      separate_cmd(inst, opt, r);
    } else if (command == "separate-local") {
      local_cmd(inst, opt, r, false);
    } else if (command == "separate-shifted") {
      local_cmd(inst, opt, r, true);
    } else if (command == "specialize") {
      specialize_cmd(inst, opt, r);
    } else if (command == "stationarity") {
      stationarity_cmd(inst, opt, r);
    } else if (command == "transversality") {
      transversality_cmd(inst, opt, r);
    } else if (command == "equivalence-suite") {
      equivalence_cmd(inst, opt, r);
    } else {
      throw Error("unknown command \"" + command + "\"", "usage");
    }
  } catch (const SeparationError& e) {
    r.outcome = Outcome::error;
    r.label = e.label();
    r.message = std::string(e.what()) + " (best residual " + fixed(e.best_residual()) + ")";
  } catch (const Error& e) {
    r.outcome = Outcome::error;
    r.label = e.label();
    r.message = e.what();
  }
  return r;
}

Outcome SuiteRun::outcome() const {
  Outcome worst = Outcome::verified;
  for (const auto& r : reports) {
    if (exit_code(r.outcome) > exit_code(worst)) worst = r.outcome;
  }
  return worst;
}

nlohmann::json SuiteRun::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k < files.size(); ++k) {
    const auto& r = reports[k];
    nlohmann::json checks = nlohmann::json::object();
    for (const auto& row : r.residuals) checks[row.label] = row.holds;
    rows.push_back({{"file", files[k]},
                    {"instance", r.instance_name},
                    {"outcome", gsep::to_string(r.outcome)},
                    {"label", r.label},
                    {"checks", checks},
                    {"report_digest", r.to_json().at("digest")}});
  }
  nlohmann::json j = {{"rows", rows}, {"outcome", gsep::to_string(outcome())}, {"toolkit_version", kToolkitVersion}};
  j["digest"] = json_digest(j);
  return j;
}

std::string SuiteRun::csv() const {
  std::ostringstream os;
  os << "file,instance,outcome,label,failed_checks\n";
  for (std::size_t k = 0; k < files.size(); ++k) {
    const auto& r = reports[k];
    std::string failed;
    for (const auto& row : r.residuals) {
      if (!row.holds) failed += (failed.empty() ? "" : ";") + row.label;
    }
    os << files[k] << "," << r.instance_name << "," << to_string(r.outcome) << "," << r.label << "," << failed << "\n";
  }
  return os.str();
}

std::string SuiteRun::table() const {
  std::ostringstream os;
  std::size_t w = 4;
  for (const auto& f : files) w = std::max(w, f.size());
  for (std::size_t k = 0; k < files.size(); ++k) {
    os << std::left << std::setw(static_cast<int>(w) + 2) << files[k] << std::setw(10) << to_string(reports[k].outcome)
       << reports[k].label << "\n";
  }
  os << "overall: " << to_string(outcome()) << "\n";
  return os.str();
}

SuiteRun run_suite(const std::string& command, const std::string& dir, const RunOptions& opt) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir, "io");
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") paths.push_back(e.path());
  }
  std::sort(paths.begin(), paths.end());
  // One task per file; results are collected in file order.
  auto one = [&command, &opt](const fs::path& p) {
    try {
      return run(command, load_instance(p.string()), opt);
    } catch (const Error& e) {
      Report r;
      r.command = command;
      r.outcome = Outcome::error;
      r.label = e.label();
      r.message = e.what();
      return r;
    }
  };
  std::vector<std::future<Report>> tasks;
  for (const auto& p : paths) tasks.push_back(std::async(std::launch::async, one, p));
  SuiteRun out;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    out.files.push_back(paths[k].filename().string());
    out.reports.push_back(tasks[k].get());
  }
  return out;
}

}  // namespace gsep
