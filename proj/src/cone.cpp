#include "gsep/cone.hpp"

#include "gsep/convex_program.hpp"

#include <algorithm>
#include <cmath>

namespace gsep {

Cone::Cone(int d, std::vector<Vector> gens) : dim(d), generators(std::move(gens)) {
  for (const auto& g : generators) {
    require_dim(g.size(), d, "cone generator");
    if (!g.allFinite()) throw Error("cone generator must be finite");
  }
  std::erase_if(generators, [](const Vector& g) { return g.isZero(0.0); });
}

Matrix Cone::matrix() const {
  Matrix G(dim, generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j) G.col(j) = generators[j];
  return G;
}

Vector Cone::sample(std::mt19937_64& rng) const {
  Vector v = Vector::Zero(dim);
  std::exponential_distribution<double> e(1.0);
  std::bernoulli_distribution sparse(0.3);
  for (const auto& g : generators) {
    // Some weights are zeroed so samples also land on faces.
    const double t = sparse(rng) ? 0.0 : e(rng);
    v += t * g;
  }
  return v;
}

// Nonnegative least squares --------------------------------------------------

Vector nnls(const Matrix& A, const Vector& b, int max_iter) {
  const int n = static_cast<int>(A.cols());
  Vector x = Vector::Zero(n);
  if (n == 0) return x;
  if (max_iter <= 0) max_iter = 30 * n + 100;
  const double tol = 10 * std::numeric_limits<double>::epsilon() * std::max<double>(A.rows(), n) *
                     std::max(1.0, A.cwiseAbs().maxCoeff());
  std::vector<bool> passive(n, false);
  Vector w = A.transpose() * (b - A * x);

  auto solve_passive = [&]() {
    std::vector<int> idx;
    for (int j = 0; j < n; ++j) {
      if (passive[j]) idx.push_back(j);
    }
    Matrix Ap(A.rows(), idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) Ap.col(k) = A.col(idx[k]);
    const Vector sp = Ap.colPivHouseholderQr().solve(b);
    Vector s = Vector::Zero(n);
    for (std::size_t k = 0; k < idx.size(); ++k) s(idx[k]) = sp(k);
    return s;
  };

  for (int outer = 0; outer < max_iter; ++outer) {
    int j = -1;
    for (int k = 0; k < n; ++k) {
      if (!passive[k] && w(k) > tol && (j == -1 || w(k) > w(j))) j = k;
    }
    if (j == -1) break;
    passive[j] = true;
    Vector s = solve_passive();
    for (int inner = 0; inner < max_iter; ++inner) {
      bool ok = true;
      for (int k = 0; k < n; ++k) {
        if (passive[k] && s(k) <= 0) ok = false;
      }
      if (ok) break;
      double alpha = 1.0;
      for (int k = 0; k < n; ++k) {
        if (passive[k] && s(k) <= 0) alpha = std::min(alpha, x(k) / (x(k) - s(k)));
      }
      x += alpha * (s - x);
      for (int k = 0; k < n; ++k) {
        if (passive[k] && x(k) <= tol) {
          passive[k] = false;
          x(k) = 0.0;
        }
      }
      s = solve_passive();
    }
    x = s;
    w = A.transpose() * (b - A * x);
  }
  return x.cwiseMax(0.0);
}

Projection project_onto_cone(const Cone& c, const Vector& v) {
  require_dim(v.size(), c.dim, "cone projection argument");
  if (c.is_zero()) return {v.norm(), Vector::Zero(c.dim)};
  const Matrix G = c.matrix();
  const Vector y = G * nnls(G, v);
  return {(v - y).norm(), y};
}

bool cone_contains(const Cone& c, const Vector& v, double tol) {
  return project_onto_cone(c, v).distance <= tol;
}

bool cone_subset(const Cone& a, const Cone& b, double tol) {
  return std::all_of(a.generators.begin(), a.generators.end(),
                     [&](const Vector& g) { return cone_contains(b, g / g.norm(), tol); });
}

bool cone_equal(const Cone& a, const Cone& b, double tol) { return cone_subset(a, b, tol) && cone_subset(b, a, tol); }

// Double description ---------------------------------------------------------

namespace {

constexpr double kDDTol = 1e-10;

struct Ray {
  Vector r;
  std::vector<int> tight;  // sorted indices of processed constraints with a·r == 0
};

bool includes(const std::vector<int>& big, const std::vector<int>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

void orthonormalize(std::vector<Vector>& basis) {
  std::vector<Vector> out;
  for (auto v : basis) {
    for (const auto& q : out) v -= q.dot(v) * q;
    const double n = v.norm();
    if (n > 1e-9) out.push_back(v / n);
  }
  basis = std::move(out);
}

}  // namespace

Cone cone_from_halfspaces(const std::vector<Vector>& normals, int dim) {
  if (dim > kMaxDDDim) {
    throw DimensionError("double description limited to dimension " + std::to_string(kMaxDDDim), "dd");
  }
  std::vector<Vector> lineality;
  for (int i = 0; i < dim; ++i) lineality.push_back(Vector::Unit(dim, i));
  std::vector<Ray> rays;

  for (int k = 0; k < static_cast<int>(normals.size()); ++k) {
    require_dim(normals[k].size(), dim, "halfspace normal");
    const double an = normals[k].norm();
    if (an <= kDDTol) continue;
    const Vector a = normals[k] / an;

    int jl = -1;
    for (int j = 0; j < static_cast<int>(lineality.size()); ++j) {
      if (std::abs(a.dot(lineality[j])) > kDDTol &&
          (jl == -1 || std::abs(a.dot(lineality[j])) > std::abs(a.dot(lineality[jl])))) {
        jl = j;
      }
    }
    if (jl >= 0) {
      Vector l = lineality[jl];
      if (a.dot(l) > 0) l = -l;
      const double s = a.dot(l);
      lineality.erase(lineality.begin() + jl);
      for (auto& m : lineality) m -= (a.dot(m) / s) * l;
      orthonormalize(lineality);
      for (auto& ray : rays) {
        ray.r -= (a.dot(ray.r) / s) * l;
        ray.tight.push_back(k);
      }
      std::vector<int> prev(k);
      for (int i = 0; i < k; ++i) prev[i] = i;
      rays.push_back({l, prev});
      // Keep rays in the complement of the lineality space.
      for (auto& ray : rays) {
        for (const auto& q : lineality) ray.r -= q.dot(ray.r) * q;
        ray.r.normalize();
      }
      continue;
    }

    std::vector<Ray> pos, neg, next;
    for (auto& ray : rays) {
      const double v = a.dot(ray.r);
      if (v > kDDTol) {
        pos.push_back(ray);
      } else if (v < -kDDTol) {
        neg.push_back(ray);
        next.push_back(ray);
      } else {
        ray.tight.push_back(k);
        next.push_back(ray);
      }
    }
    for (const auto& p : pos) {
      for (const auto& n : neg) {
        std::vector<int> common;
        std::set_intersection(p.tight.begin(), p.tight.end(), n.tight.begin(), n.tight.end(),
                              std::back_inserter(common));
        bool adjacent = true;
        for (const auto& other : rays) {
          if (&other.r == &p.r || &other.r == &n.r) continue;
          if ((other.r - p.r).norm() <= 1e-12 || (other.r - n.r).norm() <= 1e-12) continue;
          if (includes(other.tight, common)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        Vector r = a.dot(p.r) * n.r - a.dot(n.r) * p.r;
        const double rn = r.norm();
        if (rn <= kDDTol) continue;
        common.push_back(k);
        next.push_back({r / rn, common});
      }
    }
    rays = std::move(next);
  }

  std::vector<Vector> gens;
  for (const auto& ray : rays) gens.push_back(ray.r);
  for (const auto& l : lineality) {
    gens.push_back(l);
    gens.push_back(-l);
  }
  return prune(Cone(dim, std::move(gens)));
}

std::vector<Vector> cone_halfspaces(const Cone& c) {
  return cone_from_halfspaces(c.generators, c.dim).generators;
}

Cone polar(const Cone& c) { return cone_from_halfspaces(c.generators, c.dim); }

Cone cone_intersect(const Cone& a, const Cone& b) {
  require_dim(a.dim, b.dim, "cone_intersect");
  if (a.dim > kMaxDDDim) {
    throw DimensionError("cone_intersect limited to dimension " + std::to_string(kMaxDDDim), "dd");
  }
  std::vector<Vector> h = cone_halfspaces(a);
  const auto hb = cone_halfspaces(b);
  h.insert(h.end(), hb.begin(), hb.end());
  return cone_from_halfspaces(h, a.dim);
}

Cone prune(const Cone& c, double tol) {
  std::vector<Vector> gens;
  for (const auto& g : c.generators) {
    const Vector u = g / g.norm();
    const bool dup = std::any_of(gens.begin(), gens.end(), [&](const Vector& h) { return (h - u).norm() <= tol; });
    if (!dup) gens.push_back(u);
  }
  for (std::size_t i = 0; i < gens.size();) {
    std::vector<Vector> others = gens;
    others.erase(others.begin() + static_cast<long>(i));
    if (!others.empty() && cone_contains(Cone(c.dim, others), gens[i], 1e3 * tol)) {
      gens = std::move(others);
    } else {
      ++i;
    }
  }
  return Cone(c.dim, std::move(gens));
}

// Distances ------------------------------------------------------------------

ConeDistance cone_distance(const Vector& v, const Cone& c, const Norm& n) {
  require_dim(v.size(), c.dim, "cone_distance argument");
  require_dim(n.dim(), c.dim, "cone_distance norm");
  ConeDistance out;
  if (c.is_zero()) {
    out.value = out.lower = n.eval(v);
    out.witness = Vector::Zero(c.dim);
    return out;
  }
  if (n.euclidean()) {
    const Projection p = project_onto_cone(c, v);
    out.value = out.lower = p.distance;
    out.witness = p.point;
    return out;
  }
  const Matrix G = c.matrix();
  const int k = static_cast<int>(G.cols());
  ConvexProgram prog(k);
  for (int j = 0; j < k; ++j) prog.rows.push_back({-Vector::Unit(k, j), 0.0, lp::RowType::le});
  // Scale generators to unit norm weight so the box bound is harmless.
  Matrix Gs = G;
  for (int j = 0; j < k; ++j) Gs.col(j) /= std::max(1e-300, n.eval(G.col(j)));
  auto shared = std::shared_ptr<const Norm>(&n, [](const Norm*) {});
  prog.terms.push_back({shared, -Gs, v, 1.0});
  const ConvexResult r = minimize(prog);
  if (r.status != ConvexStatus::optimal && r.status != ConvexStatus::iteration_limit) {
    throw Error("cone_distance: inner program failed");
  }
  if (r.z.size() == 0) throw Error("cone_distance: no feasible iterate");
  out.witness = Gs * r.z;
  out.value = n.eval(v - out.witness);
  out.lower = std::max(0.0, r.lower_bound);
  return out;
}

// Vertex enumeration ---------------------------------------------------------

std::vector<Vector> polytope_vertices(const std::vector<lp::Row>& rows, int dim, double tol) {
  const int m = static_cast<int>(rows.size());
  std::vector<Vector> out;
  if (m < dim) return out;
  std::vector<int> idx(dim);
  for (int i = 0; i < dim; ++i) idx[i] = i;
  for (;;) {
    Matrix A(dim, dim);
    Vector b(dim);
    for (int i = 0; i < dim; ++i) {
      A.row(i) = rows[idx[i]].a.transpose();
      b(i) = rows[idx[i]].b;
    }
    Eigen::FullPivLU<Matrix> lu(A);
    if (lu.rank() == dim) {
      const Vector x = lu.solve(b);
      bool feasible = x.allFinite();
      for (int r = 0; r < m && feasible; ++r) {
        if (rows[r].a.dot(x) > rows[r].b + tol * (1 + std::abs(rows[r].b))) feasible = false;
      }
      if (feasible && std::none_of(out.begin(), out.end(), [&](const Vector& y) { return (y - x).norm() <= 1e-9; })) {
        out.push_back(x);
      }
    }
    int i = dim - 1;
    while (i >= 0 && idx[i] == m - dim + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < dim; ++j) idx[j] = idx[j - 1] + 1;
  }
  for (auto& v : out) {
    for (int i = 0; i < dim; ++i) {
      if (std::abs(v(i)) < 1e-14) v(i) = 0.0;
    }
  }
  std::sort(out.begin(), out.end(), [](const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  });
  return out;
}

}  // namespace gsep
