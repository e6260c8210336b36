#include "commands.hpp"

#include "spec_io.hpp"
#include "svg.hpp"

#include "hyperrefl/kernels.hpp"
#include "hyperrefl/tessellation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hyperrefl::cli {

using coxeter::ReflectionGroup;
using hyperboloid::PairKind;

namespace {

struct Inconclusive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fixed(double v, int digits = 9) {
  if (std::abs(v) < 0.5 * std::pow(10.0, -digits)) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string vec(const Vector& v, int digits = 9) {
  std::string s = "(";
  for (int i = 0; i < v.size(); ++i) s += (i ? "," : "") + fixed(v[i], digits);
  return s + ")";
}

std::string tolerances() {
  return "form:" + sci(tol::form) + ",point:" + sci(tol::point) + ",classify:" + sci(tol::classify) +
         ",element:" + sci(tol::element) + ",sphere_fit:" + sci(tol::sphere_fit);
}

void stamp(std::ostream& out, const std::string& spec, const std::string& caps) {
  out << "# spec=" << spec << " caps=" << (caps.empty() ? "none" : caps) << " tol=" << tolerances() << "\n";
}

int generator_index(const ReflectionGroup& g, int one_based) {
  if (one_based < 1 || one_based > g.rank())
    throw std::invalid_argument("generator index " + std::to_string(one_based) + " out of range 1.." +
                                std::to_string(g.rank()));
  return one_based - 1;
}

coxeter::Word parse_word(const ReflectionGroup& g, const std::string& text) {
  coxeter::Word w;
  std::string t = text;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream in(t);
  for (std::string tok; in >> tok;) {
    if (tok == "e") continue;
    size_t used = 0;
    int s = 0;
    try {
      s = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw std::invalid_argument("bad generator '" + tok + "' in word");
    w.push_back(generator_index(g, s));
  }
  return w;
}

std::string one_based(const coxeter::Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + std::to_string(w[i] + 1);
  return s;
}

tessellation::CatalogRef parse_point(const std::string& sel) {
  const size_t colon = sel.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("point selector must be ip:<n> or pu:<n>");
  const std::string set = sel.substr(0, colon);
  const std::string idx = sel.substr(colon + 1);
  tessellation::CatalogRef ref;
  if (set == "ip") ref.set = tessellation::CatalogRef::Set::Tangency;
  else if (set == "pu") ref.set = tessellation::CatalogRef::Set::Perpendicular;
  else throw std::invalid_argument("point selector must be ip:<n> or pu:<n>");
  size_t used = 0;
  long v = -1;
  try {
    v = std::stol(idx, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != idx.size() || v < 0) throw std::invalid_argument("bad point index '" + idx + "'");
  ref.index = static_cast<size_t>(v);
  return ref;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write " + path);
  f << data;
  if (!f) throw std::invalid_argument("cannot write " + path);
}

struct Args {
  std::string spec;
  int i = 0, j = 0, k = 1;
  int depth = 0;
  int directions = 360;
  std::string out_path;
  std::string svg_path;
  std::string point = "ip:0";
  double r = 2.0;
  double eps = 0.25;
  int catalog_depth = 0;
  int steps = 5;
  std::string word = "1";
  double cex_r = 1.0;
  double cex_eps = 2.0;
  int cex_depth = 8;
  std::string cex_point;
  int pixels = 1024;
  tessellation::SearchCaps caps;
};

std::string caps_string(const tessellation::SearchCaps& c) {
  return "shrink:" + std::to_string(c.shrink_depth) + ",bfs:" + std::to_string(c.bfs_depth) +
         ",samples:" + std::to_string(c.samples) + ",max_tiles:" + std::to_string(c.max_tiles);
}

void cmd_classify(const Args& a, std::ostream& out) {
  const ReflectionGroup g = coxeter::build_group(load_spec(a.spec));
  const auto& h1 = g.wall(generator_index(g, a.i));
  const auto& h2 = g.wall(generator_index(g, a.j));
  const auto rel = hyperboloid::classify_pair(h1, h2);
  stamp(out, a.spec, "");
  switch (rel.kind) {
    case PairKind::Intersecting: out << "intersecting angle=" << format_angle(rel.angle) << "\n"; break;
    case PairKind::Parallel:
      out << "parallel xi=" << vec(poincare::to_boundary(hyperboloid::common_ideal_point(h1, h2))) << "\n";
      break;
    case PairKind::UltraParallel:
      out << "ultra d=" << format_real(hyperboloid::hyperplane_distance(h1, h2)) << "\n";
      break;
  }
}

void cmd_perp(const Args& a, std::ostream& out) {
  const ReflectionGroup g = coxeter::build_group(load_spec(a.spec));
  const auto& h1 = g.wall(generator_index(g, a.i));
  const auto& h2 = g.wall(generator_index(g, a.j));
  const auto rel = hyperboloid::classify_pair(h1, h2);
  if (rel.kind != PairKind::UltraParallel)
    throw GeometryError(std::string("walls ") + std::to_string(a.i) + " and " + std::to_string(a.j) + " are " +
                        hyperboloid::to_string(rel.kind) + ", not ultra-parallel: no common perpendicular");
  const auto line = hyperboloid::common_perpendicular(h1, h2);
  const auto [f1, f2] = hyperboloid::perpendicular_feet(h1, h2);
  const auto ends = hyperboloid::geodesic_endpoints(line);
  const Vector e1 = poincare::to_boundary(ends.first);
  const Vector e2 = poincare::to_boundary(ends.second);
  const auto eu =
      poincare::euclid_common_perpendicular(poincare::hyperplane_to_gsphere(h1), poincare::hyperplane_to_gsphere(h2));
  const double straight = std::max((e1 - eu.ia).norm(), (e2 - eu.ib).norm());
  const double swapped = std::max((e1 - eu.ib).norm(), (e2 - eu.ia).norm());
  stamp(out, a.spec, "");
  out << "foot1=" << vec(f1.v) << " ball=" << vec(poincare::to_ball(f1)) << "\n";
  out << "foot2=" << vec(f2.v) << " ball=" << vec(poincare::to_ball(f2)) << "\n";
  out << "endpoints=" << vec(e1) << "," << vec(e2) << "\n";
  out << "d=" << format_real(hyperboloid::hyperplane_distance(h1, h2)) << "\n";
  out << "chord=" << (eu.chord ? "yes" : "no") << "\n";
  out << "right_angle_residual=" << sci(std::max(hyperboloid::right_angle_residual(line, h1),
                                                 hyperboloid::right_angle_residual(line, h2)))
      << "\n";
  out << "cross_model_residual=" << sci(std::min(straight, swapped)) << "\n";
}

void cmd_shrink(const Args& a, std::ostream& out) {
  const ReflectionGroup g = coxeter::build_group(load_spec(a.spec));
  if (a.k < 1) throw std::invalid_argument("shrink: k must be at least 1");
  const auto& h1 = g.wall(generator_index(g, a.i));
  const auto& h2 = g.wall(generator_index(g, a.j));
  const auto rel = hyperboloid::classify_pair(h1, h2);
  const auto s1 = poincare::hyperplane_to_gsphere(h1);
  const auto s2 = poincare::hyperplane_to_gsphere(h2);
  poincare::ShrinkSequence seq;
  std::string mode;
  if (rel.kind == PairKind::Parallel) {
    seq = poincare::shrink_parallel(s1, s2, a.k);
    mode = "parallel";
  } else if (rel.kind == PairKind::UltraParallel) {
    seq = poincare::shrink_ultraparallel(s1, s2, a.k);
    mode = "ultra";
  } else {
    throw GeometryError("walls intersect: no shrinking sequence");
  }
  stamp(out, a.spec, "k:" + std::to_string(a.k));
  out << "# mode=" << mode << " limit=" << vec(seq.limit) << "\n";
  out << "step,kind,center_x,center_y,radius,log_radius,limit_gap\n";
  for (size_t s = 0; s < seq.steps.size(); ++s) {
    const auto& st = seq.steps[s];
    out << s + 1 << ',';
    if (st.sphere.is_plane()) {
      out << "plane," << fixed(st.sphere.normal[0], 12) << ',' << fixed(st.sphere.normal[1], 12) << ",inf,inf,"
          << sci(std::abs(st.sphere.signed_distance(seq.limit))) << "\n";
      continue;
    }
    const double gap = std::abs((seq.limit - st.sphere.center).norm() - st.sphere.radius);
    out << "sphere," << fixed(st.sphere.center[0], 12) << ',' << fixed(st.sphere.center[1], 12) << ','
        << sci(st.sphere.radius) << ',' << fixed(st.log_radius, 12) << ',' << sci(gap) << "\n";
  }
}

void cmd_tessellate(const Args& a, std::ostream& out) {
  if (a.depth < 0) throw std::invalid_argument("tessellate: depth must be non-negative");
  const ReflectionGroup g = coxeter::build_group(load_spec(a.spec));
  const auto tiles = tessellation::generate_tiles(g, a.depth);
  SvgOptions opts;
  opts.pixels = a.pixels;
  opts.title = a.spec + " L=" + std::to_string(a.depth);
  write_file(a.out_path, render_tessellation(tiles, opts));
  stamp(out, a.spec, "depth:" + std::to_string(a.depth));
  out << "tiles=" << tiles.size() << "\n";
  out << "svg=" << a.out_path << "\n";
}

void cmd_theorem1(const Args& a, std::ostream& out) {
  if (a.k < 1) throw std::invalid_argument("theorem1: k must be at least 1");
  if (!(a.r > 0.0) || !(a.eps > 0.0)) throw std::invalid_argument("theorem1: r and eps must be positive");
  const ReflectionGroup g = coxeter::build_group(load_spec(a.spec));
  const auto ref = parse_point(a.point);
  const auto catalog = tessellation::build_boundary_catalog(g, a.catalog_depth);
  const auto& cp = tessellation::catalog_point(catalog, ref);
  const poincare::ConeNbhd u(cp.point, a.r, a.eps);
  const auto res = tessellation::theorem1_search(g, catalog, ref, u, a.k, a.caps);

  stamp(out, a.spec, caps_string(a.caps) + ",catalog_depth:" + std::to_string(a.catalog_depth));
  out << "point=" << a.point << " xi=" << vec(cp.point) << " kind=" << hyperboloid::to_string(cp.kind)
      << " witnesses=" << one_based(catalog.reflections[static_cast<size_t>(cp.a)].element.word) << " | "
      << one_based(catalog.reflections[static_cast<size_t>(cp.b)].element.word) << "\n";
  out << "nbhd r=" << format_real(a.r) << " eps=" << format_real(a.eps) << "\n";
  out << "k=" << a.k << "\n";
  if (!res.found) {
    out << "status=inconclusive\n";
    out << "message=" << res.message << "\n";
    out << "tiles_visited=" << res.tiles_visited << "\n";
    throw Inconclusive(res.message);
  }
  const int dyer = reflength::reflection_length_dyer(g, res.tile.element);
  const bool inside = tessellation::tile_in_nbhd(res.tile, u, 4 * a.caps.samples);
  out << "status=found\n";
  out << "shrink_steps=" << res.shrink_steps << "\n";
  out << "reflection=" << one_based(res.reflection.element.word) << "\n";
  out << "tile=" << one_based(res.tile.element.word) << "\n";
  out << "l_S=" << res.tile.l_s << " l_R=" << res.tile.l_r << "\n";
  out << "check dyer_l_R=" << dyer << " inside_at_" << 4 * a.caps.samples << "_samples=" << (inside ? "yes" : "no")
      << "\n";
  out << "bfs_depth=" << res.bfs_depth << " tiles_visited=" << res.tiles_visited
      << " walk=" << (res.fallback ? "yes" : "no") << "\n";
  if (!a.svg_path.empty()) {
    const int depth = std::min(res.tile.l_s, 8);
    std::vector<tessellation::Tile> tiles = tessellation::generate_tiles(g, depth);
    SvgOverlay overlay;
    overlay.nbhd = u;
    overlay.lines.push_back(res.reflection.hyperplane);
    overlay.highlight = res.tile;
    SvgOptions opts;
    opts.pixels = a.pixels;
    opts.title = a.spec + " k=" + std::to_string(a.k);
    write_file(a.svg_path, render_tessellation(tiles, opts, overlay));
    out << "svg=" << a.svg_path << "\n";
  }
  if (dyer != a.k || !inside) throw GeometryError("theorem1: result failed re-verification");
}

void cmd_density(const Args& a, std::ostream& out, std::ostream& err) {
  if (a.directions < 1) throw std::invalid_argument("density: directions must be positive");
  if (a.depth < 0) throw std::invalid_argument("density: depth must be non-negative");
  const ReflectionGroup g = coxeter::build_group(load_spec(a.spec));
  const auto rep = tessellation::density_probe(g, a.depth, a.directions);
  stamp(out, a.spec, "depth:" + std::to_string(a.depth) + ",directions:" + std::to_string(a.directions));
  if (rep.hypothesis_violated) {
    const char* msg = "fundamental domain is not a finite-volume polytope; the density hypothesis is violated";
    out << "# warning: " << msg << "\n";
    err << "warning: " << msg << "\n";
  }
  out << "# catalog_size=" << rep.catalog_size << " max_gap=" << fixed(rep.max_gap) << "\n";
  out << "direction,angle,gap\n";
  for (size_t d = 0; d < rep.angles.size(); ++d)
    out << d << ',' << fixed(rep.angles[d]) << ',' << fixed(rep.gaps[d]) << "\n";
}

void write_rows(std::ostream& out, const std::vector<tessellation::CounterexampleRow>& rows) {
  out << "eps,tiles_inside,values\n";
  for (const auto& row : rows) {
    std::string vals;
    for (int v : row.values) vals += (vals.empty() ? "" : ";") + std::to_string(v);
    out << fixed(row.eps) << ',' << row.tiles_inside << ',' << vals << "\n";
  }
}

void cmd_counterexample(const Args& a, std::ostream& out) {
  if (a.steps < 1) throw std::invalid_argument("counterexample: steps must be positive");
  if (!(a.cex_r > 0.0) || !(a.cex_eps > 0.0))
    throw std::invalid_argument("counterexample: r and eps must be positive");
  if (a.cex_depth < 0) throw std::invalid_argument("counterexample: depth must be non-negative");
  const ReflectionGroup g = coxeter::build_group(load_spec(a.spec));
  std::vector<double> eps;
  for (int s = 0; s < a.steps; ++s) eps.push_back(a.cex_eps / std::pow(2.0, s));
  const std::string caps = "depth:" + std::to_string(a.cex_depth) + ",samples:" + std::to_string(a.caps.samples);

  if (!a.cex_point.empty()) {
    const auto catalog = tessellation::build_boundary_catalog(g, a.catalog_depth);
    const auto& cp = tessellation::catalog_point(catalog, parse_point(a.cex_point));
    const auto rows = tessellation::nbhd_length_rows(tessellation::generate_tiles(g, a.cex_depth), cp.point, eps,
                                                     a.cex_r, a.caps.samples);
    stamp(out, a.spec, caps + ",catalog_depth:" + std::to_string(a.catalog_depth));
    out << "# point=" << a.cex_point << " xi=" << vec(cp.point) << " r=" << format_real(a.cex_r) << "\n";
    write_rows(out, rows);
    return;
  }
  const auto w = coxeter::reduce(g, parse_word(g, a.word));
  const auto rep = tessellation::counterexample_probe(g, w, eps, a.cex_r, a.cex_depth, a.caps.samples);
  stamp(out, a.spec, caps);
  out << "# w=" << one_based(w.word) << " l_R=" << rep.l_r << " xi=" << vec(rep.xi) << " r=" << format_real(a.cex_r)
      << "\n";
  write_rows(out, rep.rows);
}

void cmd_spec(const std::string& name, std::ostream& out) {
  if (name.empty()) {
    for (const auto& n : builtin_spec_names()) out << n << "\n";
    return;
  }
  const auto names = builtin_spec_names();
  if (std::find(names.begin(), names.end(), name) != names.end()) out << builtin_spec_text(name);
  else out << format_spec(load_spec(name));
}

}  // namespace

std::string format_angle(double angle) {
  for (int k = 1; k <= 1000; ++k)
    if (std::abs(angle - M_PI / k) < 1e-9) return k == 1 ? "pi" : "pi/" + std::to_string(k);
  return fixed(angle);
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  std::string s = buf;
  if (s.find_first_of(".eni") == std::string::npos) s += ".0";
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyperbolic reflection groups: geometry, reflection length, boundary experiments", "hyperrefl"};
  app.require_subcommand(1);
  Args a;
  std::string spec_name;

  auto add_spec = [&](CLI::App* c) {
    c->add_option("spec", a.spec, "built-in name (" + [] {
      std::string s;
      for (const auto& n : builtin_spec_names()) s += (s.empty() ? "" : ", ") + n;
      return s;
    }() + ") or spec file")->required();
  };
  auto add_caps = [&](CLI::App* c) {
    c->add_option("--samples", a.caps.samples, "edge samples per side")->check(CLI::PositiveNumber);
  };

  auto* classify = app.add_subcommand("classify", "classify the pair of walls i, j");
  add_spec(classify);
  classify->add_option("i", a.i)->required();
  classify->add_option("j", a.j)->required();

  auto* perp = app.add_subcommand("perp", "common perpendicular of ultra-parallel walls i, j");
  add_spec(perp);
  perp->add_option("i", a.i)->required();
  perp->add_option("j", a.j)->required();

  auto* shrink = app.add_subcommand("shrink", "shrinking sphere sequence for walls i, j (CSV)");
  add_spec(shrink);
  shrink->add_option("i", a.i)->required();
  shrink->add_option("j", a.j)->required();
  shrink->add_option("k", a.k, "number of spheres")->required();

  auto* tess = app.add_subcommand("tessellate", "SVG of all tiles of l_S <= L");
  add_spec(tess);
  tess->add_option("L", a.depth)->required();
  tess->add_option("out", a.out_path, "output SVG path")->required();
  tess->add_option("--pixels", a.pixels)->check(CLI::Range(64, 16384));

  auto* thm = app.add_subcommand("theorem1", "tile of reflection length k inside U(xi, r, eps)");
  add_spec(thm);
  thm->add_option("--point", a.point, "catalog point ip:<n> or pu:<n>");
  thm->add_option("--k", a.k)->required();
  thm->add_option("--r", a.r);
  thm->add_option("--eps", a.eps);
  thm->add_option("--catalog-depth", a.catalog_depth)->check(CLI::NonNegativeNumber);
  thm->add_option("--svg", a.svg_path, "write an SVG overlay");
  thm->add_option("--shrink-depth", a.caps.shrink_depth)->check(CLI::PositiveNumber);
  thm->add_option("--bfs-depth", a.caps.bfs_depth)->check(CLI::NonNegativeNumber);
  thm->add_option("--max-tiles", a.caps.max_tiles)->check(CLI::PositiveNumber);
  thm->add_option("--pixels", a.pixels)->check(CLI::Range(64, 16384));
  add_caps(thm);

  auto* dens = app.add_subcommand("density", "angular gaps to I_p and P_up (CSV)");
  add_spec(dens);
  dens->add_option("L", a.depth)->required();
  dens->add_option("directions", a.directions)->required();

  auto* cex = app.add_subcommand("counterexample", "l_R values of tiles near a boundary arc of wP (CSV)");
  add_spec(cex);
  cex->add_option("--word", a.word, "w as 1-based generators, e.g. \"1 2\" (e for the identity)");
  cex->add_option("--r", a.cex_r);
  cex->add_option("--eps", a.cex_eps, "largest eps; halved at every step");
  cex->add_option("--point", a.cex_point, "use catalog point ip:<n> or pu:<n> instead of an arc of wP");
  cex->add_option("--catalog-depth", a.catalog_depth)->check(CLI::NonNegativeNumber);
  cex->add_option("--steps", a.steps);
  cex->add_option("--depth", a.cex_depth, "generation depth");
  add_caps(cex);

  auto* spec = app.add_subcommand("spec", "list built-in specs, or print one");
  spec->add_option("name", spec_name);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*classify) cmd_classify(a, out);
    else if (*perp) cmd_perp(a, out);
    else if (*shrink) cmd_shrink(a, out);
    else if (*tess) cmd_tessellate(a, out);
    else if (*thm) cmd_theorem1(a, out);
    else if (*dens) cmd_density(a, out, err);
    else if (*cex) cmd_counterexample(a, out);
    else if (*spec) cmd_spec(spec_name, out);
    return kOk;
  } catch (const SpecParseError& e) {
    err << "error: spec: " << e.what() << "\n";
    return kUsage;
  } catch (const Inconclusive& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << "\n";
    return kGeometry;
  } catch (const ResourceError& e) {
    err << "error: resource: " << e.what() << "\n";
    return kResource;
  } catch (const std::bad_alloc&) {
    err << "error: resource: out of memory\n";
    return kResource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kGeometry;
  }
}

}  // namespace hyperrefl::cli
