// SPDX-License-Identifier: MIT

#include "hyperrefl/hyperboloid.hpp"

#include <algorithm>
#include <cmath>

namespace hyperrefl::hyperboloid {

using lorentz::form;

HPoint HPoint::normalized(const LorentzVector& x) {
  const double q = form(x, x);
  if (!(q < 0.0)) throw GeometryError("HPoint: vector is not timelike");
  LorentzVector v = x / std::sqrt(-q);
  if (v[v.size() - 1] < 0) v = -v;
  return HPoint{v};
}

bool HPoint::valid(double tolerance) const {
  return v.size() >= 3 && std::abs(form(v, v) + 1.0) < tolerance * std::max(1.0, v.squaredNorm()) &&
         v[v.size() - 1] > 0.0;
}

Hyperplane Hyperplane::normalized(const LorentzVector& x) {
  const double q = form(x, x);
  if (!(q > 0.0)) throw GeometryError("Hyperplane: normal is not spacelike");
  return Hyperplane{x / std::sqrt(q)};
}

bool Hyperplane::valid(double tolerance) const {
  return normal.size() >= 3 && std::abs(form(normal, normal) - 1.0) < tolerance;
}

IdealPoint IdealPoint::normalized(const LorentzVector& x) {
  const double last = x[x.size() - 1];
  if (std::abs(last) < 1e-300) throw GeometryError("IdealPoint: direction has zero last coordinate");
  return IdealPoint{x / last};
}

bool IdealPoint::valid(double tolerance) const {
  return std::abs(form(direction, direction)) < tolerance &&
         std::abs(direction[direction.size() - 1] - 1.0) < tolerance;
}

LorentzVector GeodesicLine::at(double s) const {
  return point * std::cosh(s) + tangent * std::sinh(s);
}

double distance(const HPoint& x, const HPoint& y) {
  const double c = -form(x.v, y.v);
  const double slack = tol::point * std::max(1.0, std::abs(c));
  if (c < 1.0 - slack) throw GeometryError("distance: invalid points (-<x|y> < 1)");
  return std::acosh(std::max(1.0, c));
}

LorentzVector reflect(const Hyperplane& h, const LorentzVector& x) {
  return x - 2.0 * form(h.normal, x) * h.normal;
}

HPoint reflect(const Hyperplane& h, const HPoint& x) { return HPoint{reflect(h, x.v)}; }

Hyperplane reflect(const Hyperplane& h, const Hyperplane& other) {
  return Hyperplane{reflect(h, other.normal)};
}

const char* to_string(PairKind kind) {
  switch (kind) {
    case PairKind::Intersecting: return "intersecting";
    case PairKind::Parallel: return "parallel";
    case PairKind::UltraParallel: return "ultra";
  }
  return "?";
}

PairRelation classify_pair(const Hyperplane& h1, const Hyperplane& h2) {
  if ((h1.normal - h2.normal).cwiseAbs().maxCoeff() < tol::form ||
      (h1.normal + h2.normal).cwiseAbs().maxCoeff() < tol::form)
    throw GeometryError("equal hyperplanes");
  const double g = form(h1.normal, h2.normal);
  const double a = std::abs(g);
  PairRelation rel{PairKind::Intersecting, 0.0, g};
  if (std::abs(a - 1.0) <= tol::classify) {
    rel.kind = PairKind::Parallel;
  } else if (a > 1.0) {
    rel.kind = PairKind::UltraParallel;
  } else {
    rel.angle = std::acos(std::clamp(a, 0.0, 1.0));
  }
  return rel;
}

IdealPoint common_ideal_point(const Hyperplane& h1, const Hyperplane& h2) {
  const PairRelation rel = classify_pair(h1, h2);
  if (rel.kind != PairKind::Parallel) throw GeometryError("common_ideal_point: pair is not parallel");
  // u1 - g u2 is orthogonal to u2 and, for |g| = 1, to u1 and to itself.
  return IdealPoint::normalized(h1.normal - rel.form_value * h2.normal);
}

GeodesicLine common_perpendicular(const Hyperplane& h1, const Hyperplane& h2) {
  const PairRelation rel = classify_pair(h1, h2);
  if (rel.kind != PairKind::UltraParallel)
    throw GeometryError("common_perpendicular: pair is not ultra-parallel");
  const double g = rel.form_value;
  LorentzVector p = (h2.normal - g * h1.normal) / std::sqrt(g * g - 1.0);
  if (p[p.size() - 1] < 0) p = -p;
  LorentzVector t = h1.normal;
  // Orient the tangent so the foot on h2 sits at positive parameter.
  if (form(p, h2.normal) * form(t, h2.normal) > 0) t = -t;
  return GeodesicLine{p, t};
}

namespace {
double foot_param(const GeodesicLine& g, const Hyperplane& h) {
  const double a = form(g.point, h.normal);
  const double b = form(g.tangent, h.normal);
  // a cosh s + b sinh s = 0
  if (std::abs(b) <= std::abs(a)) throw GeometryError("geodesic does not meet hyperplane");
  return std::atanh(-a / b);
}
}  // namespace

std::pair<double, double> perpendicular_feet_params(const GeodesicLine& g, const Hyperplane& h1,
                                                   const Hyperplane& h2) {
  return {foot_param(g, h1), foot_param(g, h2)};
}

std::pair<HPoint, HPoint> perpendicular_feet(const Hyperplane& h1, const Hyperplane& h2) {
  const GeodesicLine g = common_perpendicular(h1, h2);
  const auto [s1, s2] = perpendicular_feet_params(g, h1, h2);
  return {HPoint::normalized(g.at(s1)), HPoint::normalized(g.at(s2))};
}

double hyperplane_distance(const Hyperplane& h1, const Hyperplane& h2) {
  if (classify_pair(h1, h2).kind != PairKind::UltraParallel) return 0.0;
  const auto [f1, f2] = perpendicular_feet(h1, h2);
  return distance(f1, f2);
}

std::pair<IdealPoint, IdealPoint> geodesic_endpoints(const GeodesicLine& g) {
  return {IdealPoint::normalized(g.point - g.tangent), IdealPoint::normalized(g.point + g.tangent)};
}

double right_angle_residual(const GeodesicLine& g, const Hyperplane& h) {
  // Component of u orthogonal to span{point, tangent}; zero iff the
  // geodesic meets h at a right angle.
  const LorentzVector& u = h.normal;
  const LorentzVector rest = u - form(u, g.tangent) * g.tangent + form(u, g.point) * g.point;
  return rest.cwiseAbs().maxCoeff();
}

}  // namespace hyperrefl::hyperboloid
