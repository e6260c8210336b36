#pragma once

// Tiles wP, boundary catalogs of tangency points and perpendicular
// endpoints, and the neighbourhood experiments built on them.
//
// Polygon outlines (sides, ideal arcs) exist for the planar case only;
// in higher dimension tiles carry their vertices and edges are sampled
// between vertex pairs.

#include "hyperrefl/coxeter.hpp"
#include "hyperrefl/poincare.hpp"
#include "hyperrefl/reflength.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace hyperrefl::tessellation {

using coxeter::Element;
using coxeter::Reflection;
using coxeter::ReflectionGroup;
using lorentz::Isometry;
using lorentz::LorentzVector;
using poincare::BallPoint;
using poincare::BoundaryPoint;
using poincare::ConeNbhd;

/// Point of the closed model: on the upper sheet, or a light-cone direction.
struct ClosurePoint {
  LorentzVector v;
  bool ideal = false;

  BallPoint ball() const;
};

/// Side of the fundamental polygon on wall `wall`:
/// x(s) = point cosh s + tangent sinh s for s in [lo, hi], counter-clockwise.
struct PolygonSide {
  int wall = 0;
  LorentzVector point;
  LorentzVector tangent;
  double lo = 0.0;  // may be -inf
  double hi = 0.0;  // may be +inf

  ClosurePoint start() const;
  ClosurePoint end() const;
  /// u in [-1, 1] runs along the side through tanh(s/2).
  ClosurePoint at(double u) const;
};

/// Piece of the unit circle between two sides, counter-clockwise.
struct IdealArc {
  double from = 0.0;  // angles
  double to = 0.0;    // to > from, to - from < 2 pi
  int after_side = 0;

  ClosurePoint at(double angle) const;
};

struct FundamentalPolygon {
  std::vector<PolygonSide> sides;
  std::vector<IdealArc> arcs;
  std::vector<ClosurePoint> corners;  // counter-clockwise, distinct
};

/// Planar groups only (ambient dimension 3).
FundamentalPolygon fundamental_polygon(const ReflectionGroup& g);

struct Tile {
  Element element;
  std::vector<ClosurePoint> vertices;  // images of the outline corners
  int l_s = 0;
  int l_r = 0;
  std::shared_ptr<const FundamentalPolygon> polygon;  // null above dimension 2
};

/// Tile of w, with l_R supplied by the caller.
Tile make_tile(const ReflectionGroup& g, std::shared_ptr<const FundamentalPolygon> polygon, const Element& w,
               int l_r);

/// One tile per element of l_S <= L, in enumeration order, with Dyer lengths.
std::vector<Tile> generate_tiles(const ReflectionGroup& g, int max_length);

/// Sampled containment: vertices first, then `samples` points per side and
/// per ideal arc.
bool tile_in_nbhd(const Tile& t, const ConeNbhd& u, int samples = 32);

/// The points tile_in_nbhd tests, in order (vertices first).
std::vector<ClosurePoint> tile_samples(const Tile& t, int samples);

struct CatalogPoint {
  BoundaryPoint point;
  int a = 0;  // witnessing reflections (indices into BoundaryCatalog::reflections)
  int b = 0;
  hyperboloid::PairKind kind = hyperboloid::PairKind::Parallel;
};

struct BoundaryCatalog {
  int depth = 0;
  std::vector<Reflection> reflections;
  std::vector<CatalogPoint> tangency_points;          // I_p
  std::vector<CatalogPoint> perpendicular_endpoints;  // P_up
  size_t parallel_pairs = 0;
  size_t ultra_pairs = 0;

  size_t size() const { return tangency_points.size() + perpendicular_endpoints.size(); }
};

/// Pairs of reflections with conjugator length <= L.
BoundaryCatalog build_boundary_catalog(const ReflectionGroup& g, int depth);

struct CatalogRef {
  enum class Set { Tangency, Perpendicular };
  Set set = Set::Tangency;
  size_t index = 0;
};

/// Throws GeometryError if the reference is out of range.
const CatalogPoint& catalog_point(const BoundaryCatalog& c, const CatalogRef& ref);

struct SearchCaps {
  int shrink_depth = 40;
  int bfs_depth = 16;
  int samples = 32;
  size_t max_tiles = 200'000;
};

struct Theorem1Result {
  bool found = false;
  Tile tile;
  Reflection reflection;  // H_r inside U
  int shrink_steps = 0;
  int bfs_depth = 0;
  size_t tiles_visited = 0;
  bool fallback = false;  // found by the l_R-ascending walk after the search missed
  std::string message;
};

/// The reflection of the i-th sphere of the shrink sequence for (a, b),
/// computed by reflecting hyperplanes (H_0 = b, H_i = H_{i-1}(a)).
std::vector<hyperboloid::Hyperplane> shrink_hyperplanes(const hyperboloid::Hyperplane& a,
                                                        const hyperboloid::Hyperplane& b, int count);

/// Sampled test that the hyperplane (and so its far half-space) lies in U.
bool hyperplane_in_nbhd(const hyperboloid::Hyperplane& h, const ConeNbhd& u, int samples);

/// A tile of reflection length k inside U, near the catalog point `ref`.
/// k must be at least 1; U must be centred at the point. A miss at the caps
/// is reported with found == false.
Theorem1Result theorem1_search(const ReflectionGroup& g, const BoundaryCatalog& catalog, const CatalogRef& ref,
                               const ConeNbhd& u, int k, const SearchCaps& caps = {});

struct DensityReport {
  int depth = 0;
  size_t catalog_size = 0;
  std::vector<double> angles;
  std::vector<double> gaps;  // angular distance to the nearest catalog point
  double max_gap = 0.0;
  bool hypothesis_violated = false;  // fundamental domain is not a polytope
};

DensityReport density_probe(const ReflectionGroup& g, int depth, int directions);

/// l_R of the tiles lying inside U.
std::set<int> lengths_inside(const std::vector<Tile>& tiles, const ConeNbhd& u, int samples);

struct CounterexampleRow {
  double eps = 0.0;
  std::set<int> values;  // includes l_R(w)
  size_t tiles_inside = 0;
};

struct CounterexampleReport {
  Element w;
  int l_r = 0;
  BoundaryPoint xi;  // midpoint of the widest ideal arc of wP
  double r = 0.0;
  int depth = 0;
  std::vector<CounterexampleRow> rows;
};

/// For each eps: l_R of the tiles of l_S <= depth inside U(xi, r, eps),
/// with wP itself always counted.
CounterexampleReport counterexample_probe(const ReflectionGroup& g, const Element& w,
                                          const std::vector<double>& eps, double r, int depth,
                                          int samples = 32);

/// For each eps: l_R of the tiles inside U(xi, r, eps), without a base tile.
std::vector<CounterexampleRow> nbhd_length_rows(const std::vector<Tile>& tiles, const BoundaryPoint& xi,
                                                const std::vector<double>& eps, double r, int samples = 32);

/// Angular midpoint of the widest ideal arc of the tile.
BoundaryPoint ideal_arc_midpoint(const Tile& t);

}  // namespace hyperrefl::tessellation
