#pragma once

// Poincare ball model: conversion from the hyperboloid, generalized spheres,
// inversions, perpendicular construction, shrinking sequences and cone
// neighbourhoods of boundary points.

#include "hyperrefl/hyperboloid.hpp"

#include <vector>

namespace hyperrefl::poincare {

using hyperboloid::HPoint;
using hyperboloid::Hyperplane;
using hyperboloid::IdealPoint;

/// Point of the open unit ball (norm < 1) or of the unit sphere (norm 1).
using BallPoint = Vector;
using BoundaryPoint = Vector;

BallPoint to_ball(const HPoint& x);
HPoint from_ball(const BallPoint& p);
BoundaryPoint to_boundary(const IdealPoint& xi);
IdealPoint from_boundary(const BoundaryPoint& b);

/// Hyperbolic distance of two interior ball points.
double ball_distance(const BallPoint& p, const BallPoint& q);
/// Hyperbolic distance from the model center.
double distance_from_origin(const BallPoint& p);

/// Sphere {|x - center| = radius} or plane {normal . x = offset}.
struct GSphere {
  enum class Kind { Sphere, Plane };
  Kind kind = Kind::Sphere;
  Vector center;
  double radius = 0.0;
  Vector normal;
  double offset = 0.0;

  static GSphere sphere(Vector center, double radius);
  static GSphere plane(Vector unit_normal, double offset = 0.0);
  bool is_plane() const { return kind == Kind::Plane; }
  int dim() const { return static_cast<int>(is_plane() ? normal.size() : center.size()); }

  /// |center|^2 - 1 - radius^2 for spheres, |offset| for planes.
  double orthogonality_defect() const;
  /// Signed: |x - c| - r, or normal . x - offset.
  double signed_distance(const Vector& x) const;
};

GSphere hyperplane_to_gsphere(const Hyperplane& h);
Hyperplane gsphere_to_hyperplane(const GSphere& s);

/// Point of the one-point compactification.
struct ExtendedPoint {
  bool infinite = false;
  Vector p;

  static ExtendedPoint at_infinity() { return ExtendedPoint{true, Vector()}; }
  static ExtendedPoint finite(Vector v) { return ExtendedPoint{false, std::move(v)}; }
};

/// x -> r^2 (x - c)/|x - c|^2 + c; center <-> infinity. Planes act as mirrors.
ExtendedPoint invert(const GSphere& s, const ExtendedPoint& x);
/// Finite-only convenience; throws GeometryError if x is the center.
Vector invert(const GSphere& s, const Vector& x);

/// Image of the generalized sphere t under inversion in s.
GSphere invert_sphere(const GSphere& s, const GSphere& t);

/// The sphere orthogonal to the unit sphere meeting it in {x . v = h}.
GSphere orthosphere_through_boundary_circle(const Vector& v, double h);

/// Least-squares sphere/plane through the points; residual is the max
/// distance of a point from the fitted set.
struct SphereFit {
  GSphere sphere;
  double residual = 0.0;
};
SphereFit fit_gsphere(const std::vector<Vector>& points);

/// Common perpendicular of two ultra-parallel orthospheres, built
/// Euclidean-style from the segment between their centers.
struct EuclidPerpendicular {
  bool chord = false;
  BoundaryPoint ia;  // endpoint on the first sphere's side
  BoundaryPoint ib;
  Vector q;          // center of the circle (unused for chords)
  double rq = 0.0;
  Vector plane_u, plane_v;  // orthonormal basis of the plane containing the circle
  BallPoint foot_a;
  BallPoint foot_b;
  double identity_residual = 0.0;  // |r_a^2 + r_Q^2 - |M_a - Q|^2| (relative)
  double angle_residual_a = 0.0;   // cosine of the angle defect at each foot
  double angle_residual_b = 0.0;

  /// Points of the circle arc (or chord) from ia to ib.
  BallPoint sample(double t) const;
};

EuclidPerpendicular euclid_common_perpendicular(const GSphere& sa, const GSphere& sb);

struct ShrinkStep {
  GSphere sphere;
  double log_radius = 0.0;
  Vector x_hat;  // ultra: sphere point on the center line inside the ball
  Vector a_hat;  // ultra: antipode of x_hat; parallel: antipode of xi
};

struct ShrinkSequence {
  std::vector<ShrinkStep> steps;
  BoundaryPoint limit;  // xi (parallel) or the perpendicular endpoint gamma(inf)
  bool second_replaced = false;  // S2 was a plane and was inverted in S1
};

/// S_0 = S2, S_i = inversion of S1 in S_{i-1}; steps.size() == count.
ShrinkSequence shrink_parallel(const GSphere& s1, const GSphere& s2, int count);
ShrinkSequence shrink_ultraparallel(const GSphere& s1, const GSphere& s2, int count);

/// U(c, r, eps) for the ray from the model center towards `direction`.
struct ConeNbhd {
  BoundaryPoint direction;
  double r = 1.0;
  double eps = 1.0;

  ConeNbhd(BoundaryPoint dir, double r_, double eps_);
  /// Largest angle at the center between direction and a point of U.
  double max_angle() const;
};

bool nbhd_contains(const ConeNbhd& u, const BallPoint& x);
bool nbhd_contains_boundary(const ConeNbhd& u, const BoundaryPoint& x);

}  // namespace hyperrefl::poincare
