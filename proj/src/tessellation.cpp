#include "hyperrefl/tessellation.hpp"

#include "hyperrefl/kernels.hpp"
#include "hyperrefl/point_grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>

namespace hyperrefl::tessellation {

using hyperboloid::Hyperplane;
using hyperboloid::PairKind;
using lorentz::form;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * M_PI;

double angle_of(const Vector& b) { return std::atan2(b[1], b[0]); }

double wrap_positive(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

double cross2(const Vector& a, const Vector& b) { return a[0] * b[1] - a[1] * b[0]; }

ClosurePoint image(const Isometry& m, const ClosurePoint& p) { return ClosurePoint{m.apply(p.v), p.ideal}; }

bool contains(const ConeNbhd& u, const ClosurePoint& p) {
  const BallPoint b = p.ball();
  return p.ideal ? poincare::nbhd_contains_boundary(u, b) : poincare::nbhd_contains(u, b);
}

/// Closest point to the model center and a unit tangent of a planar
/// hyperplane (a geodesic).
std::pair<LorentzVector, LorentzVector> geodesic_frame(const LorentzVector& u) {
  const LorentzVector e = lorentz::origin(static_cast<int>(u.size()));
  const double f = form(u, e);
  const LorentzVector p = (e - f * u) / std::sqrt(1.0 + f * f);
  const Eigen::Vector3d ju = lorentz::flip_last(u).head<3>();
  const Eigen::Vector3d jp = lorentz::flip_last(p).head<3>();
  LorentzVector t = LorentzVector(ju.cross(jp));
  t /= std::sqrt(form(t, t));
  return {p, t};
}

/// Positive combinations of closure points stay on the geodesic between them.
ClosurePoint between(const ClosurePoint& a, const ClosurePoint& b, double tau) {
  LorentzVector x = (1.0 - tau) * a.v + tau * b.v;
  if (!a.ideal || !b.ideal || (tau > 0.0 && tau < 1.0)) {
    const double q = form(x, x);
    if (q < 0.0) return ClosurePoint{x / std::sqrt(-q), false};
  }
  return ClosurePoint{x, true};
}

}  // namespace

BallPoint ClosurePoint::ball() const {
  if (ideal) return poincare::to_boundary(hyperboloid::IdealPoint::normalized(v));
  // Far images lose the form value to rounding long before they lose their
  // direction, so skip the renormalization.
  const int n = static_cast<int>(v.size()) - 1;
  BallPoint b = v.head(n) / (1.0 + v[n]);
  const double len = b.norm();
  if (len >= 1.0) b *= (1.0 - 1e-15) / len;
  return b;
}

ClosurePoint PolygonSide::start() const {
  if (std::isinf(lo)) return ClosurePoint{point - tangent, true};
  return ClosurePoint{point * std::cosh(lo) + tangent * std::sinh(lo), false};
}

ClosurePoint PolygonSide::end() const {
  if (std::isinf(hi)) return ClosurePoint{point + tangent, true};
  return ClosurePoint{point * std::cosh(hi) + tangent * std::sinh(hi), false};
}

ClosurePoint PolygonSide::at(double u) const {
  if (u <= -1.0) return ClosurePoint{point - tangent, true};
  if (u >= 1.0) return ClosurePoint{point + tangent, true};
  const double s = 2.0 * std::atanh(u);
  return ClosurePoint{point * std::cosh(s) + tangent * std::sinh(s), false};
}

ClosurePoint IdealArc::at(double angle) const {
  LorentzVector v(3);
  v << std::cos(angle), std::sin(angle), 1.0;
  return ClosurePoint{v, true};
}

FundamentalPolygon fundamental_polygon(const ReflectionGroup& g) {
  if (g.ambient_dim() != 3) throw GeometryError("unsupported configuration: polygon outlines are planar");
  std::vector<PolygonSide> sides;
  for (int i = 0; i < g.rank(); ++i) {
    PolygonSide side;
    side.wall = i;
    std::tie(side.point, side.tangent) = geodesic_frame(g.wall(i).normal);
    const auto probe = [&](double s) {
      return poincare::to_ball(hyperboloid::HPoint::normalized(side.point * std::cosh(s) + side.tangent * std::sinh(s)));
    };
    if (cross2(probe(-0.1), probe(0.1)) < 0.0) side.tangent = -side.tangent;
    side.lo = -kInf;
    side.hi = kInf;
    for (int j = 0; j < g.rank(); ++j) {
      if (j == i) continue;
      const double a = form(g.wall(j).normal, side.point);
      const double b = form(g.wall(j).normal, side.tangent);
      // a cosh s + b sinh s >= 0
      if (std::abs(b) == 0.0 || std::abs(a / b) >= 1.0 - tol::classify) {
        if (a < 0.0) throw GeometryError("wall lies outside the fundamental domain");
        continue;
      }
      const double s = std::atanh(-a / b);
      if (b > 0.0) side.lo = std::max(side.lo, s);
      else side.hi = std::min(side.hi, s);
    }
    if (side.lo < side.hi) sides.push_back(side);
  }
  if (sides.size() < 3) throw GeometryError("fundamental polygon has fewer than three sides");
  std::sort(sides.begin(), sides.end(), [](const PolygonSide& a, const PolygonSide& b) {
    return angle_of(a.start().ball()) < angle_of(b.start().ball());
  });

  FundamentalPolygon poly;
  poly.sides = sides;
  const size_t m = sides.size();
  for (size_t k = 0; k < m; ++k) {
    const ClosurePoint s = sides[k].start();
    poly.corners.push_back(s);
    const ClosurePoint e = sides[k].end();
    const ClosurePoint next = sides[(k + 1) % m].start();
    if ((e.ball() - next.ball()).norm() < 1e-7) continue;  // shared corner
    if (!e.ideal || !next.ideal) throw GeometryError("fundamental polygon outline is not closed");
    poly.corners.push_back(e);
    IdealArc arc;
    arc.from = angle_of(e.ball());
    arc.to = arc.from + wrap_positive(angle_of(next.ball()) - arc.from);
    arc.after_side = static_cast<int>(k);
    poly.arcs.push_back(arc);
  }
  return poly;
}

Tile make_tile(const ReflectionGroup& g, std::shared_ptr<const FundamentalPolygon> polygon, const Element& w,
               int l_r) {
  Tile t;
  t.element = w;
  t.l_s = w.length();
  t.l_r = l_r;
  if (polygon) {
    for (const auto& c : polygon->corners) t.vertices.push_back(image(w.iso, c));
  } else {
    for (const auto& v : g.vertices()) {
      if (v.kind == coxeter::PolytopeVertex::Kind::Hyperideal) continue;
      t.vertices.push_back(image(w.iso, ClosurePoint{v.v, v.kind == coxeter::PolytopeVertex::Kind::Ideal}));
    }
  }
  t.polygon = std::move(polygon);
  return t;
}

std::vector<Tile> generate_tiles(const ReflectionGroup& g, int max_length) {
  std::shared_ptr<const FundamentalPolygon> polygon;
  if (g.ambient_dim() == 3) polygon = std::make_shared<const FundamentalPolygon>(fundamental_polygon(g));
  const std::vector<Element> elements = coxeter::enumerate_elements(g, max_length);
  const std::vector<int> lr = kernels::reflection_lengths_parallel(g, elements);
  std::vector<Tile> tiles;
  tiles.reserve(elements.size());
  for (size_t i = 0; i < elements.size(); ++i) tiles.push_back(make_tile(g, polygon, elements[i], lr[i]));
  return tiles;
}

namespace {

std::vector<ClosurePoint> edge_samples(const Tile& t, int samples) {
  std::vector<ClosurePoint> out;
  const Isometry& m = t.element.iso;
  if (t.polygon) {
    for (const auto& side : t.polygon->sides) {
      const double ulo = std::isinf(side.lo) ? -1.0 : std::tanh(0.5 * side.lo);
      const double uhi = std::isinf(side.hi) ? 1.0 : std::tanh(0.5 * side.hi);
      for (int j = 1; j <= samples; ++j)
        out.push_back(image(m, side.at(ulo + (uhi - ulo) * j / (samples + 1))));
    }
    for (const auto& arc : t.polygon->arcs)
      for (int j = 1; j <= samples; ++j)
        out.push_back(image(m, arc.at(arc.from + (arc.to - arc.from) * j / (samples + 1))));
    return out;
  }
  for (size_t a = 0; a < t.vertices.size(); ++a)
    for (size_t b = a + 1; b < t.vertices.size(); ++b)
      for (int j = 1; j <= samples; ++j)
        out.push_back(between(t.vertices[a], t.vertices[b], static_cast<double>(j) / (samples + 1)));
  return out;
}

}  // namespace

std::vector<ClosurePoint> tile_samples(const Tile& t, int samples) {
  std::vector<ClosurePoint> out = t.vertices;
  const std::vector<ClosurePoint> edges = edge_samples(t, samples);
  out.insert(out.end(), edges.begin(), edges.end());
  return out;
}

bool tile_in_nbhd(const Tile& t, const ConeNbhd& u, int samples) {
  for (const auto& v : t.vertices)
    if (!contains(u, v)) return false;
  for (const auto& p : edge_samples(t, samples))
    if (!contains(u, p)) return false;
  return true;
}

BoundaryCatalog build_boundary_catalog(const ReflectionGroup& g, int depth) {
  BoundaryCatalog c;
  c.depth = depth;
  c.reflections = coxeter::enumerate_reflections(g, depth);
  const std::vector<kernels::PairRecord> pairs = kernels::disjoint_pairs_parallel(c.reflections);
  PointGrid tangency(tol::point);
  PointGrid endpoints(tol::point);
  for (const auto& pr : pairs) {
    const Hyperplane& ha = c.reflections[static_cast<size_t>(pr.a)].hyperplane;
    const Hyperplane& hb = c.reflections[static_cast<size_t>(pr.b)].hyperplane;
    if (pr.kind == PairKind::Parallel) {
      ++c.parallel_pairs;
      const BoundaryPoint xi = poincare::to_boundary(hyperboloid::common_ideal_point(ha, hb));
      if (tangency.find_or_insert(xi, static_cast<int>(c.tangency_points.size())) < 0)
        c.tangency_points.push_back({xi, pr.a, pr.b, pr.kind});
    } else {
      ++c.ultra_pairs;
      const auto ends = hyperboloid::geodesic_endpoints(hyperboloid::common_perpendicular(ha, hb));
      for (const auto& end : {ends.first, ends.second}) {
        const BoundaryPoint xi = poincare::to_boundary(end);
        if (endpoints.find_or_insert(xi, static_cast<int>(c.perpendicular_endpoints.size())) < 0)
          c.perpendicular_endpoints.push_back({xi, pr.a, pr.b, pr.kind});
      }
    }
  }
  return c;
}

const CatalogPoint& catalog_point(const BoundaryCatalog& c, const CatalogRef& ref) {
  const auto& set = ref.set == CatalogRef::Set::Tangency ? c.tangency_points : c.perpendicular_endpoints;
  if (ref.index >= set.size())
    throw GeometryError("catalog point " + std::to_string(ref.index) + " does not exist (catalog has " +
                        std::to_string(set.size()) + ")");
  return set[ref.index];
}

std::vector<Hyperplane> shrink_hyperplanes(const Hyperplane& a, const Hyperplane& b, int count) {
  std::vector<Hyperplane> out;
  if (count < 1) return out;
  out.push_back(b);
  for (int i = 1; i < count; ++i) {
    Hyperplane next = hyperboloid::reflect(out.back(), a);
    if (!next.normal.allFinite()) break;
    out.push_back(next);
  }
  return out;
}

bool hyperplane_in_nbhd(const Hyperplane& h, const ConeNbhd& u, int samples) {
  if (h.normal.size() != 3) throw GeometryError("unsupported configuration: planar hyperplanes only");
  const auto [p, t] = geodesic_frame(h.normal);
  PolygonSide line{0, p, t, -kInf, kInf};
  for (int j = 0; j <= samples + 1; ++j)
    if (!contains(u, line.at(-1.0 + 2.0 * j / (samples + 1)))) return false;
  return true;
}

Theorem1Result theorem1_search(const ReflectionGroup& g, const BoundaryCatalog& catalog, const CatalogRef& ref,
                               const ConeNbhd& u, int k, const SearchCaps& caps) {
  if (k < 1) throw std::invalid_argument("theorem1: k must be at least 1 (the fundamental tile contains the center)");
  if (g.ambient_dim() != 3) throw GeometryError("unsupported configuration: theorem1 search is planar");
  const CatalogPoint& cp = catalog_point(catalog, ref);
  if ((u.direction - cp.point).norm() > 1e-6) throw GeometryError("theorem1: neighbourhood is not centred at the point");

  Hyperplane h1 = catalog.reflections[static_cast<size_t>(cp.a)].hyperplane;
  Hyperplane h2 = catalog.reflections[static_cast<size_t>(cp.b)].hyperplane;
  const bool parallel = cp.kind == PairKind::Parallel;
  auto run = [&](const Hyperplane& a, const Hyperplane& b, int count) {
    const auto sa = poincare::hyperplane_to_gsphere(a);
    const auto sb = poincare::hyperplane_to_gsphere(b);
    return parallel ? poincare::shrink_parallel(sa, sb, count) : poincare::shrink_ultraparallel(sa, sb, count);
  };
  // The ultra-parallel sequence runs to the endpoint on the second sphere's side.
  if (!parallel && (run(h1, h2, 1).limit - cp.point).norm() > 1e-6) std::swap(h1, h2);
  const poincare::ShrinkSequence seq = run(h1, h2, caps.shrink_depth);
  const Hyperplane& a = h1;
  const Hyperplane b = seq.second_replaced ? hyperboloid::reflect(h1, h2) : h2;
  const std::vector<Hyperplane> planes = shrink_hyperplanes(a, b, caps.shrink_depth);

  Theorem1Result res;
  int chosen = -1;
  for (size_t i = 0; i < planes.size(); ++i) {
    if (hyperplane_in_nbhd(planes[i], u, caps.samples)) {
      chosen = static_cast<int>(i);
      break;
    }
  }
  if (chosen < 0) {
    res.message = "no shrink hyperplane inside U within " + std::to_string(planes.size()) + " steps";
    return res;
  }
  res.shrink_steps = chosen;

  LorentzVector n = planes[static_cast<size_t>(chosen)].normal;
  if (form(n, g.basepoint()) < 0.0) n = -n;
  const Hyperplane hr{n};
  const Element r = coxeter::canonical(g, Isometry::reflection(n));
  res.reflection = Reflection{r, hr, (r.length() - 1) / 2};

  auto polygon = std::make_shared<const FundamentalPolygon>(fundamental_polygon(g));
  auto far_side = [&](const Element& w) { return form(n, w.point()) < 0.0; };
  auto accept = [&](const Element& w, int lr) -> bool {
    if (lr != k) return false;
    const Tile t = make_tile(g, polygon, w, lr);
    return tile_in_nbhd(t, u, caps.samples) && tile_in_nbhd(t, u, 4 * caps.samples) &&
           reflength::reflection_length_dyer(g, w) == k;
  };
  auto finish = [&](const Element& w, int lr, bool fallback) {
    res.found = true;
    res.fallback = fallback;
    res.tile = make_tile(g, polygon, w, lr);
    return res;
  };

  if (accept(r, 1)) return finish(r, 1, false);

  // Far-side neighbours of w inside U that `seen` has not met yet.
  auto neighbours = [&](const Element& w, PointGrid& seen) {
    std::vector<Element> out;
    for (int s = 0; s < g.rank(); ++s) {
      Isometry m = w.iso;
      m.multiply_reflection(g.wall(s).normal, g.flipped_normal(s));
      const LorentzVector p = m.matrix().col(2);
      if (form(n, p) >= 0.0) continue;
      if (seen.find_or_insert(p, 0) >= 0) continue;
      Element ws = coxeter::canonical(g, m);
      // Past the precision horizon canonical words stop being consistent.
      if (std::abs(ws.length() - w.length()) != 1) continue;
      if (!far_side(ws)) continue;
      if (!tile_in_nbhd(make_tile(g, polygon, ws, 0), u, caps.samples)) continue;
      out.push_back(std::move(ws));
    }
    return out;
  };

  struct Node {
    Element w;
    int lr;
    int depth;
  };
  {
    PointGrid seen(g.merge_threshold());
    seen.insert(r.point(), 0);
    std::deque<Node> queue{{r, 1, 0}};
    while (!queue.empty() && res.tiles_visited < caps.max_tiles) {
      const Node node = std::move(queue.front());
      queue.pop_front();
      if (node.depth >= caps.bfs_depth) continue;
      for (Element& ws : neighbours(node.w, seen)) {
        const int lr = reflength::reflection_length_from_neighbour(g, ws, node.lr);
        ++res.tiles_visited;
        res.bfs_depth = std::max(res.bfs_depth, node.depth + 1);
        if (accept(ws, lr)) return finish(ws, lr, false);
        queue.push_back({std::move(ws), lr, node.depth + 1});
      }
    }
  }

  // Walk over adjacent far-side tiles, always extending from the tile of
  // largest l_R (then l_S). Steps change l_R by one, so every length below
  // the largest one reached occurs on the walk.
  {
    PointGrid seen(g.merge_threshold());
    seen.insert(r.point(), 0);
    struct Entry {
      int lr;
      int ls;
      size_t seq;
      bool operator<(const Entry& o) const {
        if (lr != o.lr) return lr < o.lr;
        if (ls != o.ls) return ls < o.ls;
        return seq > o.seq;
      }
    };
    std::vector<Node> nodes{{r, 1, 0}};
    std::priority_queue<Entry> open;
    open.push({1, r.length(), 0});
    size_t walked = 0;
    while (!open.empty() && walked < caps.max_tiles) {
      const Entry top = open.top();
      open.pop();
      const Node node = nodes[top.seq];
      for (Element& ws : neighbours(node.w, seen)) {
        const int lr = reflength::reflection_length_from_neighbour(g, ws, node.lr);
        ++walked;
        if (accept(ws, lr)) {
          res.tiles_visited += walked;
          return finish(ws, lr, true);
        }
        open.push({lr, ws.length(), nodes.size()});
        nodes.push_back({std::move(ws), lr, node.depth + 1});
      }
    }
    res.tiles_visited += walked;
  }
  res.message = "no tile of reflection length " + std::to_string(k) + " within the caps";
  return res;
}

DensityReport density_probe(const ReflectionGroup& g, int depth, int directions) {
  if (directions < 1) throw std::invalid_argument("density: directions must be positive");
  if (g.ambient_dim() != 3) throw GeometryError("unsupported configuration: density probe is planar");
  const BoundaryCatalog c = build_boundary_catalog(g, depth);
  std::vector<double> pts;
  for (const auto& p : c.tangency_points) pts.push_back(angle_of(p.point));
  for (const auto& p : c.perpendicular_endpoints) pts.push_back(angle_of(p.point));

  DensityReport rep;
  rep.depth = depth;
  rep.catalog_size = pts.size();
  rep.hypothesis_violated = !g.is_polytope();
  for (int j = 0; j < directions; ++j) {
    const double theta = kTwoPi * j / directions;
    double gap = M_PI;
    for (double a : pts) {
      const double d = wrap_positive(a - theta);
      gap = std::min(gap, std::min(d, kTwoPi - d));
    }
    rep.angles.push_back(theta);
    rep.gaps.push_back(gap);
    rep.max_gap = std::max(rep.max_gap, gap);
  }
  return rep;
}

std::set<int> lengths_inside(const std::vector<Tile>& tiles, const ConeNbhd& u, int samples) {
  std::set<int> out;
  for (const auto& t : tiles)
    if (tile_in_nbhd(t, u, samples)) out.insert(t.l_r);
  return out;
}

std::vector<CounterexampleRow> nbhd_length_rows(const std::vector<Tile>& tiles, const BoundaryPoint& xi,
                                                const std::vector<double>& eps, double r, int samples) {
  std::vector<CounterexampleRow> rows;
  for (double e : eps) {
    const ConeNbhd u(xi, r, e);
    CounterexampleRow row;
    row.eps = e;
    for (const auto& t : tiles) {
      if (!tile_in_nbhd(t, u, samples)) continue;
      ++row.tiles_inside;
      row.values.insert(t.l_r);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

BoundaryPoint ideal_arc_midpoint(const Tile& t) {
  if (!t.polygon || t.polygon->arcs.empty()) throw GeometryError("tile has no ideal boundary interval");
  double best_width = -1.0;
  double best_mid = 0.0;
  for (const auto& arc : t.polygon->arcs) {
    const double a = angle_of(image(t.element.iso, arc.at(arc.from)).ball());
    const double b = angle_of(image(t.element.iso, arc.at(arc.to)).ball());
    const double m = angle_of(image(t.element.iso, arc.at(0.5 * (arc.from + arc.to))).ball());
    const double ab = wrap_positive(b - a);
    double start = a;
    double width = ab;
    if (wrap_positive(m - a) > ab) {
      start = b;
      width = kTwoPi - ab;
    }
    if (width > best_width + 1e-12) {
      best_width = width;
      best_mid = start + 0.5 * width;
    }
  }
  BoundaryPoint xi(2);
  xi << std::cos(best_mid), std::sin(best_mid);
  return xi;
}

CounterexampleReport counterexample_probe(const ReflectionGroup& g, const Element& w,
                                          const std::vector<double>& eps, double r, int depth, int samples) {
  if (g.ambient_dim() != 3) throw GeometryError("unsupported configuration: counterexample probe is planar");
  auto polygon = std::make_shared<const FundamentalPolygon>(fundamental_polygon(g));
  CounterexampleReport rep;
  rep.w = w;
  rep.l_r = reflength::reflection_length_dyer(g, w);
  rep.xi = ideal_arc_midpoint(make_tile(g, polygon, w, rep.l_r));
  rep.r = r;
  rep.depth = depth;
  rep.rows = nbhd_length_rows(generate_tiles(g, depth), rep.xi, eps, r, samples);
  for (auto& row : rep.rows) row.values.insert(rep.l_r);
  return rep;
}

}  // namespace hyperrefl::tessellation
