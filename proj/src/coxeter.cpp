/*
 * Copyright 2024 the hyperrefl authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hyperrefl/coxeter.hpp"

#include "hyperrefl/kernels.hpp"
#include "hyperrefl/point_grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hyperrefl::coxeter {

using lorentz::flip_last;
using lorentz::form;

CoxeterLabel CoxeterLabel::finite(int m) {
  if (m < 2) throw GeometryError("Coxeter label must be at least 2");
  CoxeterLabel l;
  l.kind = Kind::Finite;
  l.m = m;
  return l;
}

CoxeterLabel CoxeterLabel::parallel() {
  CoxeterLabel l;
  l.kind = Kind::Parallel;
  l.m = 0;
  return l;
}

CoxeterLabel CoxeterLabel::ultra(double t) {
  if (!(t > 0.0)) throw GeometryError("ultra-parallel distance must be positive");
  CoxeterLabel l;
  l.kind = Kind::Ultra;
  l.m = 0;
  l.t = t;
  return l;
}

double CoxeterLabel::gram_entry() const {
  switch (kind) {
    case Kind::Finite: return -std::cos(M_PI / m);
    case Kind::Parallel: return -1.0;
    case Kind::Ultra: return -std::cosh(t);
  }
  return 0.0;
}

CoxeterSpec::CoxeterSpec(int rank_, std::string name_) : rank(rank_), name(std::move(name_)) {
  labels.assign(static_cast<size_t>(rank), std::vector<CoxeterLabel>(static_cast<size_t>(rank)));
}

void CoxeterSpec::set(int i, int j, CoxeterLabel label) {
  labels[static_cast<size_t>(i)][static_cast<size_t>(j)] = label;
  labels[static_cast<size_t>(j)][static_cast<size_t>(i)] = label;
}

lorentz::GramMatrix CoxeterSpec::gram() const {
  Matrix g = Matrix::Identity(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (i != j) g(i, j) = label(i, j).gram_entry();
  return lorentz::GramMatrix{g};
}

const char* to_string(PolytopeVertex::Kind kind) {
  switch (kind) {
    case PolytopeVertex::Kind::Finite: return "finite";
    case PolytopeVertex::Kind::Ideal: return "ideal";
    case PolytopeVertex::Kind::Hyperideal: return "hyperideal";
  }
  return "?";
}

bool ReflectionGroup::is_polytope() const {
  return std::none_of(vertices_.begin(), vertices_.end(), [](const PolytopeVertex& v) {
    return v.kind == PolytopeVertex::Kind::Hyperideal;
  });
}

double ReflectionGroup::merge_threshold() const { return std::sinh(inradius_); }

bool ReflectionGroup::is_identity(const Matrix& m) const {
  return m(dim_ - 1, dim_ - 1) < std::cosh(inradius_);
}

void ReflectionGroup::finish() {
  dim_ = static_cast<int>(p0_.size());
  flipped_.clear();
  gens_.clear();
  double min_f = INFINITY;
  double max_f = 0.0;
  for (const auto& h : normals_) {
    if (!h.valid()) throw GeometryError("wall normal is not a unit spacelike vector");
    const double f = form(h.normal, p0_);
    if (!(f > 0.0)) throw GeometryError("basepoint is not strictly inside all walls");
    min_f = std::min(min_f, f);
    max_f = std::max(max_f, f);
    flipped_.push_back(flip_last(h.normal));
    gens_.push_back(Isometry::reflection(h.normal));
  }
  // d(x, H) = asinh |<u|x>|
  inradius_ = std::asinh(min_f);
  step_max_ = 2.0 * std::asinh(max_f);
}

namespace {

// Reflection taking p (on the upper sheet) to the model center.
std::optional<Isometry> to_center(const LorentzVector& p) {
  const LorentzVector e = lorentz::origin(static_cast<int>(p.size()));
  const LorentzVector d = p - e;
  const double q = form(d, d);
  if (q < 1e-28) return std::nullopt;
  return Isometry::reflection(d / std::sqrt(q));
}

}  // namespace

ReflectionGroup build_group(const CoxeterSpec& spec) {
  if (spec.rank < 3) throw GeometryError("unsupported configuration: rank must be at least 3");
  if (spec.rank > kMaxDim) throw GeometryError("unsupported configuration: rank too large");
  const lorentz::GramMatrix gram = spec.gram();
  const lorentz::Signature sig = lorentz::signature(gram.entries);
  if (sig.negative != 1 || sig.zero != 0) {
    const char* what = sig.negative == 0 ? (sig.zero == 0 ? "spherical" : "affine") : "indefinite";
    throw GeometryError(std::string("not hyperbolic (") + what + ")");
  }
  std::vector<LorentzVector> u = lorentz::realize_gram(gram);
  const int m = spec.rank;

  Matrix rows(m, m);
  for (int i = 0; i < m; ++i) rows.row(i) = u[static_cast<size_t>(i)].transpose();
  Eigen::FullPivLU<Matrix> lu(rows);
  if (!lu.isInvertible()) throw GeometryError("wall normals are linearly dependent");

  // <u_i|p> = 1 for every wall: rows * J p = 1.
  LorentzVector p = flip_last(lu.solve(Vector::Ones(m)));
  const double q = form(p, p);
  if (!(q < 0.0)) throw GeometryError("no interior point equidistant from all walls");
  p /= std::sqrt(-q);
  if (p[m - 1] < 0) {
    p = -p;
    for (auto& v : u) v = -v;
  }
  if (auto iso = to_center(p)) {
    p = iso->apply(p);
    for (auto& v : u) v = iso->apply(v);
    rows = Matrix(m, m);
    for (int i = 0; i < m; ++i) rows.row(i) = u[static_cast<size_t>(i)].transpose();
  }
  p = lorentz::origin(m);

  ReflectionGroup g;
  g.spec_ = spec;
  g.p0_ = p;
  for (const auto& v : u) g.normals_.push_back(Hyperplane{v});

  // Vertex opposite wall i: <u_j|v_i> = delta_ij.
  const Matrix inv = Eigen::FullPivLU<Matrix>(rows).inverse();
  for (int i = 0; i < m; ++i) {
    LorentzVector v = flip_last(inv.col(i));
    PolytopeVertex vert{PolytopeVertex::Kind::Hyperideal, v};
    const double last = v[m - 1];
    if (std::abs(last) > 1e-12 * v.norm()) {
      const LorentzVector w = v / last;
      const double qw = form(w, w);
      if (std::abs(qw) < tol::point) {
        vert = {PolytopeVertex::Kind::Ideal, w};
      } else if (qw < 0.0) {
        vert = {PolytopeVertex::Kind::Finite, HPoint::normalized(v).v};
      }
    }
    if (vert.kind == PolytopeVertex::Kind::Hyperideal) vert.v = Hyperplane::normalized(v).normal;
    g.vertices_.push_back(vert);
  }
  g.finish();

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (std::abs(form(g.normals_[i].normal, g.normals_[j].normal) - gram.entries(i, j)) > tol::form)
        throw GeometryError("realized walls do not reproduce the Gram matrix");
  return g;
}

ReflectionGroup from_normals(const std::vector<Hyperplane>& normals, const LorentzVector& basepoint,
                             const std::vector<PolytopeVertex>& vertices, const std::string& name) {
  if (normals.size() < 3) throw GeometryError("unsupported configuration: need at least three walls");
  const int d = static_cast<int>(basepoint.size());
  for (const auto& h : normals)
    if (h.normal.size() != d) throw DimensionError("from_normals: dimension mismatch");
  const LorentzVector p = HPoint::normalized(basepoint).v;

  ReflectionGroup g;
  g.spec_ = CoxeterSpec(static_cast<int>(normals.size()), name);
  const auto iso = to_center(p);
  auto move = [&](const LorentzVector& v) { return iso ? iso->apply(v) : v; };
  for (const auto& h : normals) g.normals_.push_back(Hyperplane{move(h.normal)});
  for (const auto& v : vertices) g.vertices_.push_back({v.kind, move(v.v)});
  g.p0_ = lorentz::origin(d);

  const int m = static_cast<int>(normals.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double a = std::abs(form(g.normals_[i].normal, g.normals_[j].normal));
      CoxeterLabel l;
      if (std::abs(a - 1.0) <= tol::classify) l = CoxeterLabel::parallel();
      else if (a > 1.0) l = CoxeterLabel::ultra(std::acosh(a));
      else l = CoxeterLabel::finite(std::max(2, static_cast<int>(std::lround(M_PI / std::acos(a)))));
      g.spec_.set(i, j, l);
    }
  g.finish();
  return g;
}

Element word_element(const ReflectionGroup& g, const Word& word) {
  Isometry m = Isometry::identity(g.ambient_dim());
  for (int s : word) {
    if (s < 0 || s >= g.rank()) throw std::out_of_range("generator index out of range");
    m.multiply_reflection(g.wall(s).normal, g.flipped_normal(s));
  }
  return Element{word, m};
}

bool is_left_descent(const ReflectionGroup& g, int s, const Element& w) {
  const double f = form(g.wall(s).normal, w.point());
  if (std::abs(f) < tol::point) throw GeometryError("basepoint on wall");
  return f < 0.0;
}

bool is_right_descent(const ReflectionGroup& g, int s, const Element& w) {
  // w H_s separates p0 from w p0  <=>  <w u_s | p0> < 0.
  const LorentzVector wu = w.iso.apply(g.wall(s).normal);
  return wu[wu.size() - 1] > 0.0;
}

Word locate(const ReflectionGroup& g, LorentzVector x) {
  Word word;
  const int m = g.rank();
  for (int guard = 0; guard < 1'000'000; ++guard) {
    int found = -1;
    for (int s = 0; s < m; ++s) {
      if (form(g.wall(s).normal, x) < 0.0) {
        found = s;
        break;
      }
    }
    if (found < 0) return word;
    word.push_back(found);
    x -= 2.0 * form(g.wall(found).normal, x) * g.wall(found).normal;
    // Pull x back onto the sheet along J x (the Euclidean normal of the
    // sheet). Rounding error along that direction is what the remaining
    // reflections would otherwise amplify.
    x -= (form(x, x) + 1.0) / (2.0 * x.squaredNorm()) * flip_last(x);
  }
  throw ResourceError("locate: descent did not terminate");
}

Element canonical(const ReflectionGroup& g, const Isometry& iso) {
  return word_element(g, locate(g, iso.matrix().col(iso.dim() - 1)));
}

Element reduce(const ReflectionGroup& g, const Word& word) {
  return canonical(g, word_element(g, word).iso);
}

Element multiply(const ReflectionGroup& g, const Element& a, const Element& b) {
  // One letter at a time, so no product of two long matrices is formed.
  Element cur = a;
  for (int s : b.word) {
    Isometry m = cur.iso;
    m.multiply_reflection(g.wall(s).normal, g.flipped_normal(s));
    cur = canonical(g, m);
  }
  return cur;
}

Element inverse(const ReflectionGroup& g, const Element& a) { return canonical(g, a.iso.inverse()); }

bool element_equal(const Element& a, const Element& b) {
  if (a.iso.dim() != b.iso.dim()) return false;
  const double scale = std::max(1.0, a.iso.matrix().cwiseAbs().maxCoeff());
  return (a.iso.matrix() - b.iso.matrix()).cwiseAbs().maxCoeff() <= tol::element * scale;
}

namespace {
bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}
}  // namespace

std::vector<Element> enumerate_elements(const ReflectionGroup& g, int max_length, size_t budget) {
  if (max_length < 0) throw std::invalid_argument("enumerate_elements: negative length");
  std::vector<Element> all;
  all.push_back(word_element(g, {}));
  PointGrid grid(g.merge_threshold());
  grid.insert(all.front().point(), 0);

  std::vector<Element> layer = all;
  for (int k = 1; k <= max_length; ++k) {
    std::vector<Isometry> candidates = kernels::expand_layer(g, layer);
    std::vector<Isometry> fresh;
    for (auto& c : candidates) {
      const LorentzVector p = c.matrix().col(g.ambient_dim() - 1);
      if (grid.find_or_insert(p, static_cast<int>(all.size() + fresh.size())) < 0)
        fresh.push_back(std::move(c));
      if (all.size() + fresh.size() > budget)
        throw ResourceError("enumerate_elements: element budget exceeded at length " + std::to_string(k));
    }
    layer = kernels::canonicalize(g, fresh);
    std::sort(layer.begin(), layer.end(),
              [](const Element& a, const Element& b) { return shortlex_less(a.word, b.word); });
    all.insert(all.end(), layer.begin(), layer.end());
  }
  return all;
}

Reflection reflection_from_element(const ReflectionGroup& g, const Element& r, int conjugator_length) {
  const LorentzVector p0 = g.basepoint();
  const LorentzVector d = p0 - r.point();
  const double q = form(d, d);
  if (!(q > 0.0)) throw GeometryError("element does not move the basepoint");
  Hyperplane h{d / std::sqrt(q)};
  const Isometry exact = Isometry::reflection(h.normal);
  if ((exact.matrix() - r.iso.matrix()).cwiseAbs().maxCoeff() >
      tol::element * std::max(1.0, r.iso.matrix().cwiseAbs().maxCoeff()))
    throw GeometryError("element is not a reflection");
  return Reflection{r, h, conjugator_length};
}

std::vector<Reflection> enumerate_reflections(const ReflectionGroup& g, int max_conjugator_length,
                                              size_t budget) {
  const std::vector<Element> conj = enumerate_elements(g, max_conjugator_length, budget);
  const LorentzVector p0 = g.basepoint();
  PointGrid grid(g.merge_threshold());
  std::vector<Reflection> out;
  for (const Element& w : conj) {
    for (int s = 0; s < g.rank(); ++s) {
      LorentzVector n = w.iso.apply(g.wall(s).normal);
      if (form(n, p0) < 0.0) n = -n;
      const LorentzVector image = p0 - 2.0 * form(n, p0) * n;
      if (grid.find_or_insert(image, static_cast<int>(out.size())) >= 0) continue;
      const Hyperplane h = Hyperplane::normalized(n);
      Element e = canonical(g, Isometry::reflection(h.normal));
      out.push_back(Reflection{std::move(e), h, w.length()});
      if (out.size() > budget) throw ResourceError("enumerate_reflections: budget exceeded");
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Reflection& a, const Reflection& b) {
    return shortlex_less(a.element.word, b.element.word);
  });
  return out;
}

std::optional<ConjugacyWitness> product_conjugacy_check(const ReflectionGroup& g, const Reflection& r1,
                                                        const Reflection& r2, int bound,
                                                        bool finite_only) {
  if (element_equal(r1.element, r2.element)) throw GeometryError("product_conjugacy_check: r1 == r2");
  const Matrix prod = r1.element.iso.matrix() * r2.element.iso.matrix();

  struct Power {
    int i, j, k;
    Matrix m;
  };
  std::vector<Power> powers;
  for (int i = 0; i < g.rank(); ++i)
    for (int j = i + 1; j < g.rank(); ++j) {
      const CoxeterLabel& l = g.spec().label(i, j);
      if (finite_only && l.infinite()) continue;
      const int kmax = l.infinite() ? bound : std::min(bound, l.m - 1);
      const Matrix a = g.generator(i).matrix() * g.generator(j).matrix();
      const Matrix ainv = g.generator(j).matrix() * g.generator(i).matrix();
      Matrix pos = Matrix::Identity(g.ambient_dim(), g.ambient_dim());
      Matrix neg = pos;
      for (int k = 1; k <= kmax; ++k) {
        pos = pos * a;
        neg = neg * ainv;
        powers.push_back({i, j, k, pos});
        powers.push_back({i, j, -k, neg});
      }
    }
  if (powers.empty()) return std::nullopt;

  for (const Element& w : enumerate_elements(g, bound)) {
    const Matrix t = w.iso.inverse().matrix() * prod * w.iso.matrix();
    for (const Power& p : powers)
      if ((t - p.m).cwiseAbs().maxCoeff() <= tol::element) return ConjugacyWitness{w, p.i, p.j, p.k};
  }
  return std::nullopt;
}

std::optional<Reflection> find_ultraparallel_partner(const ReflectionGroup& g, const Reflection& r,
                                                     double eps, int max_depth) {
  for (const Reflection& c : enumerate_reflections(g, max_depth)) {
    if (element_equal(c.element, r.element)) continue;
    const auto rel = hyperboloid::classify_pair(r.hyperplane, c.hyperplane);
    if (rel.kind != hyperboloid::PairKind::UltraParallel) continue;
    if (hyperboloid::hyperplane_distance(r.hyperplane, c.hyperplane) > eps) return c;
  }
  return std::nullopt;
}

std::string word_to_string(const Word& word) {
  if (word.empty()) return "e";
  std::ostringstream out;
  for (size_t i = 0; i < word.size(); ++i) {
    if (i) out << ' ';
    out << 's' << (word[i] + 1);
  }
  return out.str();
}

}  // namespace hyperrefl::coxeter
