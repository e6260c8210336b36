// SPDX-License-Identifier: BSD-3-Clause

#include "hyperrefl/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hyperrefl::poincare {

using lorentz::form;
using lorentz::LorentzVector;

BallPoint to_ball(const HPoint& x) {
  const Eigen::Index n = x.v.size() - 1;
  return x.v.head(n) / (1.0 + x.v[n]);
}

HPoint from_ball(const BallPoint& p) {
  const double q = p.squaredNorm();
  if (!(q < 1.0)) throw GeometryError("from_ball: point is not inside the open unit ball");
  LorentzVector v(p.size() + 1);
  v.head(p.size()) = 2.0 * p / (1.0 - q);
  v[p.size()] = (1.0 + q) / (1.0 - q);
  return HPoint{v};
}

BoundaryPoint to_boundary(const IdealPoint& xi) {
  const Eigen::Index n = xi.direction.size() - 1;
  Vector b = xi.direction.head(n) / xi.direction[n];
  return b / b.norm();
}

IdealPoint from_boundary(const BoundaryPoint& b) {
  LorentzVector v(b.size() + 1);
  v.head(b.size()) = b / b.norm();
  v[b.size()] = 1.0;
  return IdealPoint{v};
}

double ball_distance(const BallPoint& p, const BallPoint& q) {
  const double den = (1.0 - p.squaredNorm()) * (1.0 - q.squaredNorm());
  if (!(den > 0.0)) throw GeometryError("ball_distance: point outside the open ball");
  return std::acosh(1.0 + 2.0 * (p - q).squaredNorm() / den);
}

double distance_from_origin(const BallPoint& p) {
  const double r = p.norm();
  if (!(r < 1.0)) return std::numeric_limits<double>::infinity();
  return 2.0 * std::atanh(r);
}

GSphere GSphere::sphere(Vector center, double radius) {
  GSphere s;
  s.kind = Kind::Sphere;
  s.center = std::move(center);
  s.radius = radius;
  return s;
}

GSphere GSphere::plane(Vector unit_normal, double offset) {
  GSphere s;
  s.kind = Kind::Plane;
  s.normal = std::move(unit_normal);
  s.offset = offset;
  return s;
}

double GSphere::orthogonality_defect() const {
  if (is_plane()) return std::abs(offset);
  return center.squaredNorm() - 1.0 - radius * radius;
}

double GSphere::signed_distance(const Vector& x) const {
  if (is_plane()) return normal.dot(x) - offset;
  return (x - center).norm() - radius;
}

GSphere hyperplane_to_gsphere(const Hyperplane& h) {
  const Eigen::Index n = h.normal.size() - 1;
  const Vector a = h.normal.head(n);
  const double b = h.normal[n];
  if (std::abs(b) <= 1e-14 * a.norm()) return GSphere::plane(a / a.norm(), 0.0);
  return GSphere::sphere(a / b, 1.0 / std::abs(b));
}

Hyperplane gsphere_to_hyperplane(const GSphere& s) {
  LorentzVector u(s.dim() + 1);
  if (s.is_plane()) {
    if (std::abs(s.offset) > tol::point) throw GeometryError("plane does not pass through the center");
    u.head(s.dim()) = s.normal;
    u[s.dim()] = 0.0;
  } else {
    u.head(s.dim()) = s.center;
    u[s.dim()] = 1.0;
  }
  return Hyperplane::normalized(u);
}

ExtendedPoint invert(const GSphere& s, const ExtendedPoint& x) {
  if (s.is_plane()) {
    if (x.infinite) return x;
    return ExtendedPoint::finite(x.p - 2.0 * (s.normal.dot(x.p) - s.offset) * s.normal);
  }
  if (x.infinite) return ExtendedPoint::finite(s.center);
  const Vector d = x.p - s.center;
  const double q = d.squaredNorm();
  if (q == 0.0) return ExtendedPoint::at_infinity();
  return ExtendedPoint::finite(s.radius * s.radius / q * d + s.center);
}

Vector invert(const GSphere& s, const Vector& x) {
  ExtendedPoint y = invert(s, ExtendedPoint::finite(x));
  if (y.infinite) throw GeometryError("invert: point is the center of inversion");
  return y.p;
}

GSphere invert_sphere(const GSphere& s, const GSphere& t) {
  if (s.is_plane()) {
    if (t.is_plane()) {
      const double k = s.normal.dot(t.normal);
      Vector n = t.normal - 2.0 * k * s.normal;
      return GSphere::plane(n, t.offset - 2.0 * s.offset * k);
    }
    return GSphere::sphere(invert(s, t.center), t.radius);
  }
  const double r2 = s.radius * s.radius;
  if (t.is_plane()) {
    const double delta = t.offset - t.normal.dot(s.center);
    if (std::abs(delta) <= 1e-14 * std::max(1.0, s.center.norm())) return t;
    return GSphere::sphere(s.center + r2 / (2.0 * delta) * t.normal, r2 / (2.0 * std::abs(delta)));
  }
  const Vector d = t.center - s.center;
  const double dn = d.norm();
  const double pow = (dn - t.radius) * (dn + t.radius);
  if (std::abs(pow) <= 1e-14 * std::max(1.0, dn * dn)) {
    const Vector dir = d / dn;
    return GSphere::plane(dir, dir.dot(s.center) + r2 / (2.0 * t.radius));
  }
  return GSphere::sphere(s.center + r2 / pow * d, r2 * t.radius / std::abs(pow));
}

GSphere orthosphere_through_boundary_circle(const Vector& v, double h) {
  if (!(h > 0.0 && h < 1.0)) throw GeometryError("orthosphere: h must lie in (0,1)");
  const Vector unit = v / v.norm();
  return GSphere::sphere(unit / h, std::sqrt(1.0 - h * h) / h);
}

SphereFit fit_gsphere(const std::vector<Vector>& points) {
  if (points.size() < 4) throw GeometryError("fit_gsphere: need at least four points");
  const int n = static_cast<int>(points.front().size());
  Vector mean = Vector::Zero(n);
  for (const auto& p : points) mean += p;
  mean /= static_cast<double>(points.size());
  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, (p - mean).norm());
  if (scale == 0.0) throw GeometryError("fit_gsphere: degenerate points");

  // A|y|^2 + D.y + E = 0 in normalized coordinates y = (x - mean)/scale.
  Eigen::MatrixXd rows(points.size(), n + 2);
  for (size_t i = 0; i < points.size(); ++i) {
    const Vector y = (points[i] - mean) / scale;
    rows(static_cast<Eigen::Index>(i), 0) = y.squaredNorm();
    rows.row(static_cast<Eigen::Index>(i)).segment(1, n) = y.transpose();
    rows(static_cast<Eigen::Index>(i), n + 1) = 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
  const Eigen::VectorXd coef = svd.matrixV().col(n + 1);
  const double a = coef[0];
  const Vector dvec = coef.segment(1, n);
  const double e = coef[n + 1];

  SphereFit fit;
  if (std::abs(a) < 1e-12 * std::max(1.0, dvec.norm())) {
    const double dn = dvec.norm();
    const Vector normal = dvec / dn;
    // normal . y = -e/dn  =>  normal . x = normal . mean - scale e/dn
    fit.sphere = GSphere::plane(normal, normal.dot(mean) - scale * e / dn);
  } else {
    const Vector cy = -dvec / (2.0 * a);
    const double ry2 = cy.squaredNorm() - e / a;
    fit.sphere = GSphere::sphere(mean + scale * cy, scale * std::sqrt(std::max(0.0, ry2)));
  }
  for (const auto& p : points)
    fit.residual = std::max(fit.residual, std::abs(fit.sphere.signed_distance(p)));
  return fit;
}

namespace {

double angle_residual_circle(const GSphere& s, const Vector& foot, const Vector& circle_center,
                             double circle_radius) {
  const Vector cn = (foot - circle_center) / circle_radius;
  const Vector sn = s.is_plane() ? Vector(s.normal) : Vector((foot - s.center) / s.radius);
  return std::abs(cn.dot(sn));
}

double angle_residual_line(const GSphere& s, const Vector& foot, const Vector& dir) {
  const Vector sn = s.is_plane() ? Vector(s.normal) : Vector((foot - s.center) / s.radius);
  const double c = std::abs(dir.dot(sn));
  return std::sqrt(std::max(0.0, 1.0 - c * c));
}

Vector some_orthogonal(const Vector& e) {
  int k = 0;
  e.cwiseAbs().minCoeff(&k);
  Vector w = Vector::Zero(e.size());
  w[k] = 1.0;
  w -= w.dot(e) * e;
  return w / w.norm();
}

EuclidPerpendicular perpendicular_of_spheres(const GSphere& sa, const GSphere& sb) {
  const Vector& ma = sa.center;
  const Vector& mb = sb.center;
  // Orthospheres meet in the open ball, touch on the unit sphere, or are
  // disjoint in the closed ball exactly when |c_a - c_b| is below, at, or
  // above sqrt(r_a^2 + r_b^2 + 2 r_a r_b); compare via the hyperboloid form.
  const double g = (ma.dot(mb) - 1.0) / (sa.radius * sb.radius);
  if (!(std::abs(g) > 1.0 + tol::classify)) throw GeometryError("not ultra-parallel");
  const double len = (mb - ma).norm();
  const Vector e = (mb - ma) / len;

  // |ma + l e|^2 = 1
  const double b = ma.dot(e);
  const double c = ma.squaredNorm() - 1.0;
  const double disc = b * b - c;
  if (!(disc > 0.0)) throw GeometryError("not ultra-parallel (center line misses the unit sphere)");
  const double sq = std::sqrt(disc);
  // c > 0 since ma lies outside the closed ball, so both roots share a sign.
  const double big = b < 0 ? -b + sq : -b - sq;
  const Vector p1 = ma + (c / big) * e;
  const Vector p2 = ma + big * e;

  // The endpoint on sb's side is the one sb separates from sa.
  auto inside_b = [&](const Vector& p) { return (p - mb).norm() < sb.radius; };
  const Vector sa_point = ma * (1.0 - sa.radius / ma.norm());
  const bool a_inside_b = inside_b(sa_point);

  EuclidPerpendicular out;
  if (inside_b(p1) != a_inside_b) {
    out.ib = p1;
    out.ia = p2;
  } else {
    out.ib = p2;
    out.ia = p1;
  }
  out.plane_u = (out.ib - out.ia).normalized();

  const Vector offset = ma - b * e;  // foot of the origin's perpendicular on the line
  const double origin_gap = offset.norm();
  if (origin_gap <= 1e-12 * std::max(1.0, ma.norm())) {
    out.chord = true;
    out.plane_v = some_orthogonal(e);
    auto nearer = [](const Vector& u, const Vector& v) { return u.squaredNorm() < v.squaredNorm() ? u : v; };
    out.foot_a = nearer(ma + sa.radius * e, ma - sa.radius * e);
    out.foot_b = nearer(mb + sb.radius * e, mb - sb.radius * e);
    out.angle_residual_a = angle_residual_line(sa, out.foot_a, e);
    out.angle_residual_b = angle_residual_line(sb, out.foot_b, e);
    return out;
  }

  const Vector x = 0.5 * (out.ia + out.ib);
  out.q = x / x.squaredNorm();
  out.rq = (out.q - out.ia).norm();
  out.plane_v = x / x.norm();

  const double dq = (ma - out.q).squaredNorm();
  out.identity_residual =
      std::abs(sa.radius * sa.radius + out.rq * out.rq - dq) / std::max(1.0, dq);

  auto foot_on = [&](const GSphere& s) {
    const Vector d = s.center - out.q;
    const double dist = d.norm();
    const Vector w = d / dist;
    const double along = (out.rq * out.rq - s.radius * s.radius + dist * dist) / (2.0 * dist);
    const double h = std::sqrt(std::max(0.0, out.rq * out.rq - along * along));
    const Vector perp = w.dot(out.plane_v) * out.plane_u - w.dot(out.plane_u) * out.plane_v;
    const Vector p1 = out.q + along * w + h * perp;
    const Vector p2 = out.q + along * w - h * perp;
    return p1.squaredNorm() < p2.squaredNorm() ? p1 : p2;
  };
  out.foot_a = foot_on(sa);
  out.foot_b = foot_on(sb);
  out.angle_residual_a = angle_residual_circle(sa, out.foot_a, out.q, out.rq);
  out.angle_residual_b = angle_residual_circle(sb, out.foot_b, out.q, out.rq);
  return out;
}

}  // namespace

BallPoint EuclidPerpendicular::sample(double t) const {
  if (chord) return ia + t * (ib - ia);
  const Vector da = ia - q;
  const Vector db = ib - q;
  const double ta = std::atan2(da.dot(plane_v), da.dot(plane_u));
  double delta = std::atan2(db.dot(plane_v), db.dot(plane_u)) - ta;
  while (delta > M_PI) delta -= 2.0 * M_PI;
  while (delta <= -M_PI) delta += 2.0 * M_PI;
  const double th = ta + t * delta;
  return q + rq * (std::cos(th) * plane_u + std::sin(th) * plane_v);
}

EuclidPerpendicular euclid_common_perpendicular(const GSphere& sa, const GSphere& sb) {
  if (sa.is_plane() && sb.is_plane()) throw GeometryError("not ultra-parallel");
  if (sa.is_plane() || sb.is_plane()) {
    // Invert the plane in the other sphere; the perpendicular is preserved
    // but the moved hyperplane lands beyond the fixed one.
    const bool first = sa.is_plane();
    const GSphere& fixed = first ? sb : sa;
    const GSphere moved = invert_sphere(fixed, first ? sa : sb);
    EuclidPerpendicular out = first ? perpendicular_of_spheres(moved, sb)
                                    : perpendicular_of_spheres(sa, moved);
    std::swap(out.ia, out.ib);
    if (first) {
      out.foot_a = invert(fixed, out.foot_a);
    } else {
      out.foot_b = invert(fixed, out.foot_b);
    }
    if (out.chord) {
      const Vector e = (out.ib - out.ia).normalized();
      out.plane_u = e;
      out.angle_residual_a = angle_residual_line(sa, out.foot_a, e);
      out.angle_residual_b = angle_residual_line(sb, out.foot_b, e);
    } else {
      out.angle_residual_a = angle_residual_circle(sa, out.foot_a, out.q, out.rq);
      out.angle_residual_b = angle_residual_circle(sb, out.foot_b, out.q, out.rq);
    }
    return out;
  }
  return perpendicular_of_spheres(sa, sb);
}

namespace {

struct PreparedPair {
  GSphere s1;
  GSphere s2;
  bool second_replaced = false;
};

PreparedPair prepare_pair(const GSphere& s1, const GSphere& s2, int count) {
  if (count < 1) throw std::invalid_argument("shrink: count must be at least 1");
  if (s1.is_plane() && s2.is_plane()) throw GeometryError("shrink: both inputs pass through the center");
  // A plane S1 needs no preparation: it is only ever inverted in spheres.
  PreparedPair p{s1, s2};
  if (s2.is_plane()) {
    p.s2 = invert_sphere(s1, s2);
    p.second_replaced = true;
  }
  return p;
}

}  // namespace

ShrinkSequence shrink_parallel(const GSphere& s1_in, const GSphere& s2_in, int count) {
  const PreparedPair pp = prepare_pair(s1_in, s2_in, count);
  const Hyperplane h1 = gsphere_to_hyperplane(pp.s1);
  const Hyperplane h2 = gsphere_to_hyperplane(pp.s2);
  if (hyperboloid::classify_pair(h1, h2).kind != hyperboloid::PairKind::Parallel)
    throw GeometryError("shrink_parallel: pair is not parallel");
  const Vector xi = to_boundary(hyperboloid::common_ideal_point(h1, h2));

  ShrinkSequence seq;
  seq.limit = xi;
  seq.second_replaced = pp.second_replaced;

  // Coordinates translated so that xi is the origin; every sphere of the
  // sequence passes through it.
  // A plane S1 has its antipode of xi at infinity, whose image is the center.
  const bool plane = pp.s1.is_plane();
  const Vector a1 = plane ? Vector() : Vector(2.0 * (pp.s1.center - xi));
  Vector c = pp.s2.center - xi;
  double r = pp.s2.radius;
  seq.steps.push_back(ShrinkStep{pp.s2, std::log(r), xi, xi + 2.0 * c});
  for (int i = 1; i < count; ++i) {
    Vector image = c;
    if (!plane) {
      const Vector diff = a1 - c;
      image = r * r / diff.squaredNorm() * diff + c;
    }
    c = 0.5 * image;
    r = 0.5 * image.norm();
    seq.steps.push_back(ShrinkStep{GSphere::sphere(xi + c, r), std::log(r), xi, xi + image});
  }
  return seq;
}

ShrinkSequence shrink_ultraparallel(const GSphere& s1_in, const GSphere& s2_in, int count) {
  const PreparedPair pp = prepare_pair(s1_in, s2_in, count);
  const Hyperplane h1 = gsphere_to_hyperplane(pp.s1);
  const Hyperplane h2 = gsphere_to_hyperplane(pp.s2);
  if (hyperboloid::classify_pair(h1, h2).kind != hyperboloid::PairKind::UltraParallel)
    throw GeometryError("shrink_ultraparallel: pair is not ultra-parallel");

  ShrinkSequence seq;
  seq.limit = euclid_common_perpendicular(pp.s1, pp.s2).ib;
  seq.second_replaced = pp.second_replaced;

  // For a plane S1 the line of centers is the normal through c2, x1 is the
  // foot of c2 and a1 is the point at infinity.
  const bool plane = pp.s1.is_plane();
  const Vector& c1 = plane ? pp.s2.center : pp.s1.center;
  const double r1 = pp.s1.radius;
  const double side = plane ? pp.s1.signed_distance(pp.s2.center) : 0.0;
  const Vector e = plane ? Vector(side < 0.0 ? Vector(-pp.s1.normal) : pp.s1.normal)
                         : Vector((pp.s2.center - c1).normalized());
  const Vector x1 = plane ? Vector(pp.s2.center - side * pp.s1.normal) : Vector(c1 + r1 * e);
  const Vector a1 = plane ? Vector() : Vector(c1 - r1 * e);

  Vector c = pp.s2.center;
  Vector x = c - pp.s2.radius * e;
  Vector a = c + pp.s2.radius * e;
  double log_r = std::log(pp.s2.radius);
  seq.steps.push_back(ShrinkStep{pp.s2, log_r, x, a});
  for (int i = 1; i < count; ++i) {
    const double rr = 0.25 * (a - x).squaredNorm();
    const Vector dx = x1 - c;
    const Vector xn = rr / dx.squaredNorm() * dx + c;
    Vector an = c;
    if (plane) {
      // r_i = r_{i-1}^2 / (2 dist(c_{i-1}, S1)).
      log_r = 2.0 * log_r - std::log(2.0 * std::abs(pp.s1.signed_distance(c)));
    } else {
      const Vector da = a1 - c;
      an = rr / da.squaredNorm() * da + c;
      // r_i = r_{i-1}^2 r1 / |pow(c_{i-1}, S1)|.
      const double pow = (c - c1).squaredNorm() - r1 * r1;
      log_r = 2.0 * log_r + std::log(r1) - std::log(std::abs(pow));
    }
    x = xn;
    a = an;
    c = 0.5 * (x - a) + a;
    seq.steps.push_back(ShrinkStep{GSphere::sphere(c, std::exp(log_r)), log_r, x, a});
  }
  return seq;
}

ConeNbhd::ConeNbhd(BoundaryPoint dir, double r_, double eps_) : direction(std::move(dir)), r(r_), eps(eps_) {
  if (!(r > 0.0) || !(eps > 0.0)) throw GeometryError("ConeNbhd: r and eps must be positive");
  const double len = direction.norm();
  if (!(len > 0.0)) throw GeometryError("ConeNbhd: zero direction");
  direction /= len;
}

double ConeNbhd::max_angle() const {
  const double sh = std::sinh(r);
  const double c = 1.0 - (std::cosh(eps) - 1.0) / (sh * sh);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

namespace {
bool angle_ok(const ConeNbhd& u, const Vector& unit) {
  // cosh d(p_r(x), c(r)) = 1 + sinh^2 r (1 - cos phi)
  const double one_minus_cos = 0.5 * (unit - u.direction).squaredNorm();
  const double sh = std::sinh(u.r);
  return sh * sh * one_minus_cos < std::cosh(u.eps) - 1.0;
}
}  // namespace

bool nbhd_contains(const ConeNbhd& u, const BallPoint& x) {
  const double len = x.norm();
  if (len >= 1.0) return nbhd_contains_boundary(u, x);
  if (!(distance_from_origin(x) > u.r)) return false;
  return angle_ok(u, x / len);
}

bool nbhd_contains_boundary(const ConeNbhd& u, const BoundaryPoint& x) {
  return angle_ok(u, x / x.norm());
}

}  // namespace hyperrefl::poincare
