#pragma once

// Points, hyperplanes and geodesics on the upper sheet {<v|v> = -1, v_{n+1} > 0}.

#include "hyperrefl/lorentz.hpp"

#include <utility>

namespace hyperrefl::hyperboloid {

using lorentz::LorentzVector;

struct HPoint {
  LorentzVector v;

  /// Rescales a timelike vector onto the upper sheet; throws GeometryError otherwise.
  static HPoint normalized(const LorentzVector& timelike);
  bool valid(double tolerance = tol::point) const;
};

/// Oriented hyperplane given by its unit spacelike normal; H^+ = {<u|x> > 0}.
struct Hyperplane {
  LorentzVector normal;

  /// Rescales a spacelike vector to unit length.
  static Hyperplane normalized(const LorentzVector& spacelike);
  bool valid(double tolerance = tol::form) const;
  Hyperplane flipped() const { return Hyperplane{-normal}; }
};

/// Light-cone direction scaled so the last coordinate is 1.
struct IdealPoint {
  LorentzVector direction;

  static IdealPoint normalized(const LorentzVector& lightlike);
  bool valid(double tolerance = tol::point) const;
};

/// x(s) = point cosh s + tangent sinh s with <tangent|tangent> = 1 and
/// <point|tangent> = 0.
struct GeodesicLine {
  LorentzVector point;
  LorentzVector tangent;

  LorentzVector at(double s) const;
};

double distance(const HPoint& x, const HPoint& y);

LorentzVector reflect(const Hyperplane& h, const LorentzVector& x);
HPoint reflect(const Hyperplane& h, const HPoint& x);
Hyperplane reflect(const Hyperplane& h, const Hyperplane& other);

enum class PairKind { Intersecting, Parallel, UltraParallel };

struct PairRelation {
  PairKind kind;
  double angle = 0.0;       // Intersecting: arccos |<u1|u2>| in [0, pi/2]
  double form_value = 0.0;  // <u1|u2>
};

const char* to_string(PairKind kind);

PairRelation classify_pair(const Hyperplane& h1, const Hyperplane& h2);

IdealPoint common_ideal_point(const Hyperplane& h1, const Hyperplane& h2);

/// Geodesic in span{u1,u2}; `point` is the foot on h1's side of the midpoint
/// ordering so that the tangent points from h1 towards h2.
GeodesicLine common_perpendicular(const Hyperplane& h1, const Hyperplane& h2);

/// Parameters s with <x(s)|u> = 0 for the two hyperplanes, in that order.
std::pair<double, double> perpendicular_feet_params(const GeodesicLine& g, const Hyperplane& h1,
                                                   const Hyperplane& h2);

std::pair<HPoint, HPoint> perpendicular_feet(const Hyperplane& h1, const Hyperplane& h2);

/// d-bar: feet distance for ultra-parallel pairs, 0 otherwise.
double hyperplane_distance(const Hyperplane& h1, const Hyperplane& h2);

/// (point - tangent, point + tangent), i.e. the backward and forward ends.
std::pair<IdealPoint, IdealPoint> geodesic_endpoints(const GeodesicLine& g);

/// Residual of the right-angle criterion: |<u|t(s)>| where t(s) is the unit
/// tangent of g at its foot on h and u lies in span{point, tangent}.
double right_angle_residual(const GeodesicLine& g, const Hyperplane& h);

}  // namespace hyperrefl::hyperboloid
