/* SPDX-License-Identifier: MIT */

#include "svg.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace hyperrefl::cli {

using lorentz::Isometry;
using lorentz::LorentzVector;
using tessellation::ClosurePoint;
using tessellation::Tile;

namespace {

constexpr double kView = 2.1;

const char* const kPalette[10] = {"#bdbdbd", "#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                                  "#59a14f", "#edc948", "#b07aa1", "#ff9da7", "#9c755f"};

std::string num(double v) {
  if (std::abs(v) < 5e-7) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Ball coordinates to SVG user coordinates (y axis points down).
struct Pt {
  double x, y;
};
Pt to_svg(const Vector& b) { return {b[0], -b[1]}; }

std::string pt(const Pt& p) { return num(p.x) + "," + num(p.y); }

double cross(const Pt& a, const Pt& b) { return a.x * b.y - a.y * b.x; }

/// Geodesic segment from a to b on the generalized sphere s.
std::string geodesic_to(const poincare::GSphere& s, const Pt& a, const Pt& b, int pixels) {
  const double min_sagitta = 0.5 * kView / pixels;
  if (s.is_plane()) return "L" + pt(b);
  const Pt c = to_svg(s.center);
  const double chord = std::hypot(b.x - a.x, b.y - a.y);
  const double half = std::min(0.5 * chord, s.radius);
  const double sagitta = s.radius - std::sqrt(s.radius * s.radius - half * half);
  if (sagitta < min_sagitta || !std::isfinite(s.radius)) return "L" + pt(b);
  const int sweep = cross({a.x - c.x, a.y - c.y}, {b.x - c.x, b.y - c.y}) > 0.0 ? 1 : 0;
  return "A" + num(s.radius) + "," + num(s.radius) + " 0 0 " + std::to_string(sweep) + " " + pt(b);
}

/// Counter-clockwise (in ball coordinates) angle from a to b.
double ccw_span(const Vector& a, const Vector& b) {
  double d = std::atan2(b[1], b[0]) - std::atan2(a[1], a[0]);
  while (d < 0.0) d += 2.0 * M_PI;
  while (d >= 2.0 * M_PI) d -= 2.0 * M_PI;
  return d;
}

/// Piece of the unit circle from a to b passing through m.
std::string ideal_arc_to(const Vector& a, const Vector& m, const Vector& b) {
  const double ab = ccw_span(a, b);
  const bool ccw = ccw_span(a, m) < ab;
  const double span = ccw ? ab : 2.0 * M_PI - ab;
  // Counter-clockwise in the ball is decreasing angle once y is flipped.
  const int sweep = ccw ? 0 : 1;
  const int large = span > M_PI ? 1 : 0;
  return "A1,1 0 " + std::to_string(large) + " " + std::to_string(sweep) + " " + pt(to_svg(b));
}

ClosurePoint image(const Isometry& m, const ClosurePoint& p) { return ClosurePoint{m.apply(p.v), p.ideal}; }

/// Normal J (a x b) of the plane spanned by a and b.
LorentzVector lorentz_cross(const LorentzVector& a, const LorentzVector& b) {
  const Eigen::Vector3d c = Eigen::Vector3d(a.head<3>()).cross(Eigen::Vector3d(b.head<3>()));
  return lorentz::flip_last(LorentzVector(c));
}

std::string geodesic_path(const hyperboloid::Hyperplane& h, int pixels) {
  // Two light-like vectors of the geodesic: J u x e3 and its partner.
  const LorentzVector e = lorentz::origin(3);
  const double f = lorentz::form(h.normal, e);
  const LorentzVector p = (e - f * h.normal) / std::sqrt(1.0 + f * f);
  LorentzVector t = lorentz_cross(h.normal, p);
  t /= std::sqrt(lorentz::form(t, t));
  const Pt a = to_svg(ClosurePoint{p - t, true}.ball());
  const Pt b = to_svg(ClosurePoint{p + t, true}.ball());
  return "M" + pt(a) + geodesic_to(poincare::hyperplane_to_gsphere(h), a, b, pixels);
}

std::string nbhd_path(const poincare::ConeNbhd& u) {
  const double rho = std::tanh(0.5 * u.r);
  const double phi = std::atan2(u.direction[1], u.direction[0]);
  const double w = std::min(u.max_angle(), M_PI);
  auto at = [&](double radius, double angle) {
    Vector v(2);
    v << radius * std::cos(angle), radius * std::sin(angle);
    return to_svg(v);
  };
  const int large = 2.0 * w > M_PI ? 1 : 0;
  std::string d = "M" + pt(at(rho, phi - w));
  d += "L" + pt(at(1.0, phi - w));
  d += "A1,1 0 " + std::to_string(large) + " 0 " + pt(at(1.0, phi + w));
  d += "L" + pt(at(rho, phi + w));
  d += "A" + num(rho) + "," + num(rho) + " 0 " + std::to_string(large) + " 1 " + pt(at(rho, phi - w));
  return d + "Z";
}

}  // namespace

std::string lr_colour(int l_r) {
  if (l_r <= 0) return kPalette[0];
  return kPalette[(l_r - 1) % 9 + 1];
}

std::string tile_path(const Tile& t, int pixels) {
  if (!t.polygon) throw GeometryError("unsupported configuration: SVG output is planar");
  const auto& poly = *t.polygon;
  const Isometry& m = t.element.iso;
  std::map<int, const tessellation::IdealArc*> arc_after;
  for (const auto& arc : poly.arcs) arc_after[arc.after_side] = &arc;

  std::string d;
  for (size_t k = 0; k < poly.sides.size(); ++k) {
    const auto& side = poly.sides[k];
    const Pt a = to_svg(image(m, side.start()).ball());
    const Pt b = to_svg(image(m, side.end()).ball());
    if (k == 0) d += "M" + pt(a);
    const LorentzVector normal = m.apply(lorentz_cross(side.point, side.tangent));
    d += geodesic_to(poincare::hyperplane_to_gsphere(hyperboloid::Hyperplane::normalized(normal)), a, b, pixels);
    const auto it = arc_after.find(static_cast<int>(k));
    if (it != arc_after.end()) {
      const auto& arc = *it->second;
      d += ideal_arc_to(image(m, arc.at(arc.from)).ball(), image(m, arc.at(0.5 * (arc.from + arc.to))).ball(),
                        image(m, arc.at(arc.to)).ball());
    }
  }
  return d + "Z";
}

std::string render_tessellation(const std::vector<Tile>& tiles, const SvgOptions& opts, const SvgOverlay& overlay) {
  const double stroke = 1.0 * kView / opts.pixels;
  std::set<int> lengths;
  bool hatched = false;
  for (const auto& t : tiles) {
    lengths.insert(t.l_r);
    hatched = hatched || t.l_r > 9;
  }

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opts.pixels << "\" height=\""
      << opts.pixels << "\" viewBox=\"-1.05 -1.05 2.1 2.1\">\n";
  if (!opts.title.empty()) out << "<title>" << opts.title << "</title>\n";
  out << "<!-- tiles: " << tiles.size() << " -->\n";
  if (hatched) {
    out << "<defs><pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"0.02\" height=\"0.02\">"
        << "<path d=\"M0,0.02L0.02,0\" stroke=\"#000000\" stroke-width=\"" << num(stroke) << "\"/>"
        << "</pattern></defs>\n";
  }
  out << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"" << num(2 * stroke)
      << "\"/>\n";
  out << "<g stroke=\"#202020\" stroke-width=\"" << num(stroke) << "\" stroke-linejoin=\"round\">\n";
  for (const auto& t : tiles) {
    const std::string d = tile_path(t, opts.pixels);
    out << "<path class=\"tile\" data-word=\"" << coxeter::word_to_string(t.element.word) << "\" data-ls=\""
        << t.l_s << "\" data-lr=\"" << t.l_r << "\" fill=\"" << lr_colour(t.l_r) << "\" d=\"" << d << "\"/>\n";
    if (t.l_r > 9) out << "<path fill=\"url(#hatch)\" stroke=\"none\" d=\"" << d << "\"/>\n";
  }
  out << "</g>\n";

  if (overlay.nbhd)
    out << "<path class=\"nbhd\" fill=\"#000000\" fill-opacity=\"0.12\" stroke=\"#000000\" stroke-dasharray=\""
        << num(4 * stroke) << "\" stroke-width=\"" << num(2 * stroke) << "\" d=\"" << nbhd_path(*overlay.nbhd)
        << "\"/>\n";
  for (const auto& h : overlay.lines)
    out << "<path class=\"mirror\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"" << num(3 * stroke)
        << "\" d=\"" << geodesic_path(h, opts.pixels) << "\"/>\n";
  if (overlay.highlight)
    out << "<path class=\"highlight\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" << num(4 * stroke)
        << "\" d=\"" << tile_path(*overlay.highlight, opts.pixels) << "\"/>\n";

  // Legend in the upper left corner, outside the disk.
  const double size = 0.04;
  double y = -1.03;
  out << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"0.035\">\n";
  out << "<text x=\"-1.03\" y=\"" << num(y + 0.03) << "\">l_R</text>\n";
  y += size + 0.005;
  for (int l : lengths) {
    out << "<rect x=\"-1.03\" y=\"" << num(y) << "\" width=\"" << num(size) << "\" height=\"" << num(size)
        << "\" fill=\"" << lr_colour(l) << "\" stroke=\"#202020\" stroke-width=\"" << num(stroke) << "\"/>";
    if (l > 9)
      out << "<rect x=\"-1.03\" y=\"" << num(y) << "\" width=\"" << num(size) << "\" height=\"" << num(size)
          << "\" fill=\"url(#hatch)\"/>";
    out << "<text x=\"" << num(-1.03 + size + 0.01) << "\" y=\"" << num(y + 0.032) << "\">" << l << "</text>\n";
    y += size + 0.005;
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace hyperrefl::cli
