#include "gsep/convex_program.hpp"

#include <cmath>
#include <limits>

namespace gsep {
namespace {

Vector argument(const Matrix& map, const Vector& offset, const Vector& z) { return map * z + offset; }

void check_shapes(const ConvexProgram& prog) {
  require_dim(prog.linear.size(), prog.dim, "convex program objective");
  for (const auto& r : prog.rows) require_dim(r.a.size(), prog.dim, "convex program row");
  for (const auto& t : prog.terms) {
    require_dim(t.map.cols(), prog.dim, "norm term map");
    require_dim(t.map.rows(), t.norm->dim(), "norm term range");
    require_dim(t.offset.size(), t.norm->dim(), "norm term offset");
    if (t.weight < 0) throw Error("norm term weight must be nonnegative");
  }
  for (const auto& b : prog.bounds) {
    require_dim(b.map.cols(), prog.dim, "norm bound map");
    require_dim(b.map.rows(), b.norm->dim(), "norm bound range");
    require_dim(b.offset.size(), b.norm->dim(), "norm bound offset");
  }
}

// Initial outer description of a norm: all facets when polyhedral, else the
// coordinate cuts ±e_k / N*(e_k).
std::vector<Vector> seed_cuts(const Norm& n) {
  if (auto f = n.facets()) return *f;
  std::vector<Vector> cuts;
  for (int k = 0; k < n.dim(); ++k) {
    const Vector e = Vector::Unit(n.dim(), k);
    const double s = n.dual(e);
    cuts.push_back(e / s);
    cuts.push_back(-e / s);
  }
  return cuts;
}

}  // namespace

double ConvexProgram::objective(const Vector& z) const {
  double v = linear.dot(z);
  for (const auto& t : terms) v += t.weight * t.norm->eval(argument(t.map, t.offset, z));
  return v;
}

double ConvexProgram::max_violation(const Vector& z) const {
  double v = 0.0;
  for (const auto& r : rows) {
    const double s = r.a.dot(z) - r.b;
    v = std::max(v, r.type == lp::RowType::eq ? std::abs(s) : s);
  }
  for (const auto& b : bounds) v = std::max(v, b.norm->eval(argument(b.map, b.offset, z)) - b.radius);
  return v;
}

ConvexResult minimize(const ConvexProgram& prog, const ConvexOptions& opt) {
  check_shapes(prog);
  const int nz = prog.dim;
  const int nt = static_cast<int>(prog.terms.size());
  const int nv = nz + nt;

  // LP over (z, t): minimize linear·z + sum w_j t_j subject to the rows and
  // the cuts  u·(M z + o) <= t_j  and  u·(M z + o) <= r.
  lp::LinearProgram lp;
  lp.dim = nv;
  lp.objective = Vector::Zero(nv);
  lp.objective.head(nz) = prog.linear;
  for (int j = 0; j < nt; ++j) lp.objective(nz + j) = prog.terms[j].weight;
  lp.box = opt.box;
  for (const auto& r : prog.rows) {
    Vector a = Vector::Zero(nv);
    a.head(nz) = r.a;
    lp.rows.push_back({a, r.b, r.type});
  }
  auto term_cut = [&](int j, const Vector& u) {
    const auto& t = prog.terms[j];
    Vector a = Vector::Zero(nv);
    a.head(nz) = t.map.transpose() * u;
    a(nz + j) = -1.0;
    lp.rows.push_back({a, -u.dot(t.offset), lp::RowType::le});
  };
  auto bound_cut = [&](const NormBound& b, const Vector& u) {
    Vector a = Vector::Zero(nv);
    a.head(nz) = b.map.transpose() * u;
    lp.rows.push_back({a, b.radius - u.dot(b.offset), lp::RowType::le});
  };
  for (int j = 0; j < nt; ++j) {
    for (const auto& u : seed_cuts(*prog.terms[j].norm)) term_cut(j, u);
  }
  for (const auto& b : prog.bounds) {
    for (const auto& u : seed_cuts(*b.norm)) bound_cut(b, u);
  }

  ConvexResult best;
  best.value = std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();
  bool have_feasible = false;

  for (int it = 1; it <= opt.max_iterations; ++it) {
    const lp::Result r = lp::solve_lp(lp, opt.lp);
    best.iterations = it;
    if (r.status == lp::Status::infeasible) {
      // Outer approximation empty implies the program is empty.
      best.status = ConvexStatus::infeasible;
      return best;
    }
    if (r.status == lp::Status::unbounded) {
      best.status = ConvexStatus::unbounded;
      return best;
    }
    lower = std::max(lower, r.value);
    const Vector z = r.x.head(nz);

    const double viol = prog.max_violation(z);
    const double val = prog.objective(z);
    if (viol <= opt.feas_tol && (!have_feasible || val < best.value)) {
      have_feasible = true;
      best.z = z;
      best.value = val;
      best.violation = viol;
    }
    best.lower_bound = lower;

    if (opt.stop_if_lower_above && lower > *opt.stop_if_lower_above) {
      best.status = ConvexStatus::optimal;
      best.stopped_early = true;
      if (!have_feasible) {
        best.z = z;
        best.value = val;
        best.violation = viol;
      }
      return best;
    }
    if (opt.stop_if_upper_below && have_feasible && best.value < *opt.stop_if_upper_below) {
      best.status = ConvexStatus::optimal;
      best.stopped_early = true;
      return best;
    }

    const double tol = opt.abs_tol + opt.rel_tol * std::abs(lower);
    if (have_feasible && best.value - lower <= tol) {
      if (best.z.cwiseAbs().maxCoeff() > 0.5 * opt.box) {
        best.status = ConvexStatus::unbounded;
        return best;
      }
      best.status = ConvexStatus::optimal;
      return best;
    }

    int added = 0;
    for (int j = 0; j < nt; ++j) {
      const auto& t = prog.terms[j];
      const Vector arg = argument(t.map, t.offset, z);
      if (t.norm->eval(arg) - r.x(nz + j) > 0.25 * tol) {
        term_cut(j, t.norm->support(arg));
        ++added;
      }
    }
    for (const auto& b : prog.bounds) {
      const Vector arg = argument(b.map, b.offset, z);
      if (b.norm->eval(arg) - b.radius > 0.25 * opt.feas_tol) {
        bound_cut(b, b.norm->support(arg));
        ++added;
      }
    }
    if (added == 0) {
      // Every cut is tight to tolerance; the LP point is optimal for the program.
      if (!have_feasible || val < best.value) {
        best.z = z;
        best.value = val;
        best.violation = viol;
      }
      best.status = best.z.cwiseAbs().maxCoeff() > 0.5 * opt.box ? ConvexStatus::unbounded
                                                                 : ConvexStatus::optimal;
      return best;
    }
  }
  best.status = ConvexStatus::iteration_limit;
  return best;
}

}  // namespace gsep
