#include "gsep/lp.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace gsep::lp {
namespace {

// Dense tableau simplex for: maximize c·y subject to M y <= h, y >= 0.
// Phase one uses a single artificial column. Entering columns follow
// Dantzig's rule until a run of degenerate pivots, then Bland's rule.
class Tableau {
 public:
  Tableau(const Matrix& M, const Vector& h, const Vector& c, const Options& opt)
      : m_(static_cast<int>(h.size())),
        n_(static_cast<int>(c.size())),
        opt_(opt),
        N_(n_ + 1),
        B_(m_),
        D_(Matrix::Zero(m_ + 2, n_ + 2)) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) D_(i, j) = M(i, j);
      B_[i] = n_ + i;
      D_(i, n_) = -1.0;
      D_(i, n_ + 1) = h(i);
    }
    for (int j = 0; j < n_; ++j) {
      N_[j] = j;
      D_(m_, j) = -c(j);
    }
    N_[n_] = -1;
    D_(m_ + 1, n_) = 1.0;
  }

  Status solve() {
    if (m_ > 0) {
      int r = 0;
      for (int i = 1; i < m_; ++i) {
        if (D_(i, n_ + 1) < D_(r, n_ + 1)) r = i;
      }
      if (D_(r, n_ + 1) < -opt_.eps) {
        pivot(r, n_);
        if (!simplex(2) || D_(m_ + 1, n_ + 1) < -opt_.eps) return Status::infeasible;
        for (int i = 0; i < m_; ++i) {
          if (B_[i] == -1) {
            int s = 0;
            for (int j = 1; j <= n_; ++j) {
              if (std::make_pair(D_(i, j), N_[j]) < std::make_pair(D_(i, s), N_[s])) s = j;
            }
            pivot(i, s);
          }
        }
      }
    }
    return simplex(1) ? Status::optimal : Status::unbounded;
  }

  Vector primal() const {
    Vector y = Vector::Zero(n_);
    for (int i = 0; i < m_; ++i) {
      if (B_[i] >= 0 && B_[i] < n_) y(B_[i]) = D_(i, n_ + 1);
    }
    return y;
  }

  Vector dual() const {
    Vector mu = Vector::Zero(m_);
    for (int j = 0; j <= n_; ++j) {
      if (N_[j] >= n_) mu(N_[j] - n_) = D_(m_, j);
    }
    return mu;
  }

  int pivots() const { return pivots_; }

 private:
  void pivot(int r, int s) {
    if (++pivots_ > opt_.max_pivots) {
      throw CyclingError("simplex pivot limit exceeded (degenerate input beyond desk scale)");
    }
    const double inv = 1.0 / D_(r, s);
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || std::abs(D_(i, s)) <= 1e-300) continue;
      const double inv2 = D_(i, s) * inv;
      for (int j = 0; j < n_ + 2; ++j) D_(i, j) -= D_(r, j) * inv2;
      D_(i, s) = D_(r, s) * inv2;
    }
    for (int j = 0; j < n_ + 2; ++j) {
      if (j != s) D_(r, j) *= inv;
    }
    for (int i = 0; i < m_ + 2; ++i) {
      if (i != r) D_(i, s) *= -inv;
    }
    D_(r, s) = inv;
    std::swap(B_[r], N_[s]);
  }

  bool simplex(int phase) {
    const int x = m_ + phase - 1;
    int degenerate_run = 0;
    for (;;) {
      const bool bland = degenerate_run >= opt_.bland_after;
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (N_[j] == -phase) continue;
        if (bland) {
          if (D_(x, j) < -opt_.eps && (s == -1 || N_[j] < N_[s])) s = j;
        } else if (s == -1 || std::make_pair(D_(x, j), N_[j]) < std::make_pair(D_(x, s), N_[s])) {
          s = j;
        }
      }
      if (s == -1 || D_(x, s) >= -opt_.eps) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (D_(i, s) <= opt_.eps) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        const double ri = D_(i, n_ + 1) / D_(i, s);
        const double rr = D_(r, n_ + 1) / D_(r, s);
        if (ri < rr - 1e-15 || (ri <= rr + 1e-15 && B_[i] < B_[r])) r = i;
      }
      if (r == -1) return false;
      degenerate_run = D_(r, n_ + 1) <= opt_.eps ? degenerate_run + 1 : 0;
      pivot(r, s);
    }
  }

  int m_, n_;
  Options opt_;
  std::vector<int> N_, B_;
  Matrix D_;
  int pivots_ = 0;
};

}  // namespace

Result solve_lp(const LinearProgram& lp, const Options& opt) {
  const int d = lp.dim;
  require_dim(lp.objective.size(), d, "solve_lp objective");
  for (const auto& row : lp.rows) require_dim(row.a.size(), d, "solve_lp row");

  // Standard-form rows; `origin[k]` maps back to (row index, sign).
  std::vector<std::pair<int, double>> origin;
  int count = 0;
  for (const auto& row : lp.rows) count += row.type == RowType::eq ? 2 : 1;
  if (lp.box) count += 2 * d;
  Matrix M = Matrix::Zero(count, 2 * d);
  Vector h(count);
  int k = 0;
  auto add = [&](const Vector& a, double b, int src, double sign) {
    for (int j = 0; j < d; ++j) {
      M(k, 2 * j) = sign * a(j);
      M(k, 2 * j + 1) = -sign * a(j);
    }
    h(k) = sign * b;
    origin.emplace_back(src, sign);
    ++k;
  };
  for (int i = 0; i < static_cast<int>(lp.rows.size()); ++i) {
    const auto& row = lp.rows[i];
    add(row.a, row.b, i, 1.0);
    if (row.type == RowType::eq) add(row.a, row.b, i, -1.0);
  }
  if (lp.box) {
    for (int j = 0; j < d; ++j) {
      Vector e = Vector::Unit(d, j);
      add(e, *lp.box, -1, 1.0);
      add(-e, *lp.box, -1, 1.0);
    }
  }

  const double orient = lp.sense == Sense::maximize ? 1.0 : -1.0;
  Vector c(2 * d);
  for (int j = 0; j < d; ++j) {
    c(2 * j) = orient * lp.objective(j);
    c(2 * j + 1) = -orient * lp.objective(j);
  }

  Tableau tab(M, h, c, opt);
  Result res;
  res.status = tab.solve();
  res.pivots = tab.pivots();
  res.dual = Vector::Zero(static_cast<Eigen::Index>(lp.rows.size()));
  if (res.status != Status::optimal) return res;

  const Vector y = tab.primal();
  res.x.resize(d);
  for (int j = 0; j < d; ++j) res.x(j) = y(2 * j) - y(2 * j + 1);
  res.value = lp.objective.dot(res.x);

  const Vector mu = tab.dual();
  for (int r = 0; r < count; ++r) {
    if (origin[r].first >= 0) res.dual(origin[r].first) += origin[r].second * mu(r);
  }
  res.duality_gap = std::abs(c.dot(y) - h.dot(mu));
  const Vector reduced = M.transpose() * mu - c;
  res.dual_residual = std::max(0.0, -reduced.minCoeff());
  if (mu.size() > 0) res.dual_residual = std::max(res.dual_residual, -mu.minCoeff());
  const Vector slack = h - M * y;
  res.primal_residual = slack.size() > 0 ? std::max(0.0, -slack.minCoeff()) : 0.0;
  return res;
}

Feasibility polyhedron_feasible(const std::vector<Row>& rows, int dim, const Options& opt) {
  LinearProgram lp;
  lp.dim = dim;
  lp.objective = Vector::Zero(dim);
  lp.rows = rows;
  Feasibility out;
  const Result r = solve_lp(lp, opt);
  if (r.status != Status::infeasible) {
    out.feasible = true;
    out.witness = r.x;
    return out;
  }
  // Farkas alternative: y >= 0, A^T y = 0, b^T y = -1.
  const int m = static_cast<int>(rows.size());
  LinearProgram ray;
  ray.dim = m;
  ray.objective = Vector::Ones(m);
  for (int i = 0; i < m; ++i) ray.rows.push_back({-Vector::Unit(m, i), 0.0, RowType::le});
  for (int j = 0; j < dim; ++j) {
    Vector a(m);
    for (int i = 0; i < m; ++i) a(i) = rows[i].a(j);
    ray.rows.push_back({a, 0.0, RowType::eq});
  }
  Vector bvec(m);
  for (int i = 0; i < m; ++i) bvec(i) = rows[i].b;
  ray.rows.push_back({bvec, -1.0, RowType::eq});
  const Result rr = solve_lp(ray, opt);
  if (rr.status == Status::optimal) out.farkas_ray = rr.x;
  return out;
}

}  // namespace gsep::lp
