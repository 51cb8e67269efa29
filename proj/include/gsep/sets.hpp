#pragma once

#include "gsep/compat.hpp"
#include "gsep/cone.hpp"
#include "gsep/convex_program.hpp"

namespace gsep {

/// N(map x - center) <= radius (closed) or < radius (open). An empty map
/// means the identity.
struct BallConstraint {
  NormPtr norm;
  Vector center;
  double radius = 0.0;
  bool closed = true;
  Matrix map;

  Vector local(const Vector& x) const { return map.size() ? Vector(map * x) : x; }
  double value(const Vector& x) const { return norm->eval(local(x) - center); }
};

/// Convex set given by linear rows and norm-ball constraints.
struct ConvexPiece {
  int dim = 0;
  std::vector<lp::Row> rows;
  std::vector<BallConstraint> balls;

  bool polyhedral() const { return balls.empty(); }
  bool contains(const Vector& x, double tol) const;
  ConvexPiece translated(const Vector& shift) const;
  /// Lift into coordinates [offset, offset + dim) of R^total.
  ConvexPiece embedded(int offset, int total) const;
};

/// All constraints of both pieces (same ambient dimension).
ConvexPiece intersect(const ConvexPiece& a, const ConvexPiece& b);

/// Closed set expression.
class SetExpr;
using SetPtr = std::shared_ptr<const SetExpr>;

class SetExpr {
 public:
  enum class Kind { polyhedron, ball, translate, set_union, product };

  static SetPtr polyhedron(std::vector<lp::Row> rows, int dim);
  static SetPtr ball(Vector center, double radius, NormPtr norm, bool closed = true);
  static SetPtr translate(SetPtr inner, Vector shift);
  static SetPtr set_union(std::vector<SetPtr> members);
  static SetPtr product(std::vector<SetPtr> members);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool convex() const;
  const std::vector<lp::Row>& rows() const { return rows_; }
  const BallConstraint& ball_constraint() const { return ball_; }
  const SetPtr& inner() const { return members_.front(); }
  const Vector& shift() const { return shift_; }
  const std::vector<SetPtr>& members() const { return members_; }

  /// The set as a finite union of convex pieces (products distribute over
  /// unions). Closed balls of polyhedral norms become rows.
  std::vector<ConvexPiece> pieces() const;

  nlohmann::json to_json() const;
  static SetPtr from_json(const nlohmann::json& j, int dim);

 private:
  Kind kind_ = Kind::polyhedron;
  int dim_ = 0;
  std::vector<lp::Row> rows_;
  BallConstraint ball_;
  Vector shift_;
  std::vector<SetPtr> members_;
};

bool contains(const SetExpr& s, const Vector& x, double tol = 1e-9);

struct SetProjection {
  Vector point;
  double distance = 0.0;
  /// Certified lower bound on the distance.
  double lower = 0.0;
};
/// Nearest point of the closure of s in the norm n (minimum over pieces).
SetProjection project(const SetExpr& s, const Vector& x, const Norm& n, const ConvexOptions& opt = {});

/// Nearest point of one convex piece; nullopt when the piece is empty.
std::optional<SetProjection> project_piece(const ConvexPiece& p, const Vector& x, const Norm& n,
                                           const ConvexOptions& opt = {});

/// A point of the piece, or nullopt when it is empty.
std::optional<Vector> piece_point(const ConvexPiece& p);

enum class Flavor { frechet, clarke, convex };
std::string to_string(Flavor f);

struct ConeAtPoint {
  Vector point;
  Cone cone;
  Flavor flavor = Flavor::frechet;
  double activity_tol = 1e-8;
  std::vector<std::string> warnings;
};

/// Normal cone; throws when x is outside s, and for the Clarke flavor on
/// nonconvex unions.
ConeAtPoint normal_cone(const SetExpr& s, const Vector& x, Flavor flavor = Flavor::frechet, double tol = 1e-8);
/// Tangent cone of a convex set.
ConeAtPoint tangent_cone(const SetExpr& s, const Vector& x, double tol = 1e-8);

/// Block-embedded product of cones. The compatibility reports (C3, C4 of the
/// product norm in force) are attached as warnings when missing or
/// uncertified.
ConeAtPoint product_cone(const std::vector<ConeAtPoint>& cones, const KappaReport* c3 = nullptr,
                         const KappaReport* c4 = nullptr);

}  // namespace gsep
