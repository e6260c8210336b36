#pragma once

// Discrete hyperbolic reflection groups generated by the walls of a simplex
// (or of an explicitly supplied polytope), with elements stored as canonical
// reduced words plus their matrices.

#include "hyperrefl/hyperboloid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hyperrefl::coxeter {

using hyperboloid::HPoint;
using hyperboloid::Hyperplane;
using lorentz::Isometry;
using lorentz::LorentzVector;

struct CoxeterLabel {
  enum class Kind { Finite, Parallel, Ultra };
  Kind kind = Kind::Finite;
  int m = 2;         // Finite only
  double t = 0.0;    // Ultra only: prescribed wall distance

  static CoxeterLabel finite(int m);
  static CoxeterLabel parallel();
  static CoxeterLabel ultra(double t);
  bool infinite() const { return kind != Kind::Finite; }
  /// -cos(pi/m), -1 or -cosh(t).
  double gram_entry() const;
};

struct CoxeterSpec {
  int rank = 0;
  /// labels[i][j] for i != j, symmetric; diagonal entries unused.
  std::vector<std::vector<CoxeterLabel>> labels;
  std::string name;

  CoxeterSpec() = default;
  explicit CoxeterSpec(int rank_, std::string name_ = {});
  void set(int i, int j, CoxeterLabel label);
  const CoxeterLabel& label(int i, int j) const { return labels[i][j]; }
  lorentz::GramMatrix gram() const;
};

using Word = std::vector<int>;

struct Element {
  Word word;
  Isometry iso;

  int length() const { return static_cast<int>(word.size()); }
  /// w.p0 (the basepoint is the model center, so this is the last column).
  LorentzVector point() const { return iso.matrix().col(iso.dim() - 1); }
};

struct Reflection {
  Element element;
  Hyperplane hyperplane;  // oriented with the basepoint on the positive side
  int conjugator_length = 0;
};

struct PolytopeVertex {
  enum class Kind { Finite, Ideal, Hyperideal };
  Kind kind;
  /// Finite: point on the upper sheet; Ideal: last coordinate 1;
  /// Hyperideal: unit spacelike vector.
  LorentzVector v;
};

const char* to_string(PolytopeVertex::Kind kind);

class ReflectionGroup {
 public:
  const CoxeterSpec& spec() const { return spec_; }
  int rank() const { return static_cast<int>(normals_.size()); }
  int ambient_dim() const { return dim_; }
  const std::vector<Hyperplane>& normals() const { return normals_; }
  const Hyperplane& wall(int s) const { return normals_[static_cast<size_t>(s)]; }
  /// J u_s, used for rank-one products.
  const LorentzVector& flipped_normal(int s) const { return flipped_[static_cast<size_t>(s)]; }
  const Isometry& generator(int s) const { return gens_[static_cast<size_t>(s)]; }
  const LorentzVector& basepoint() const { return p0_; }
  const std::vector<PolytopeVertex>& vertices() const { return vertices_; }
  /// True when no vertex is hyperideal (finite-volume polytope).
  bool is_polytope() const;
  /// Distance from the basepoint to the nearest wall.
  double inradius() const { return inradius_; }
  /// max_s d(p0, s p0).
  double step_max() const { return step_max_; }
  /// Euclidean merge threshold for orbit points on the hyperboloid.
  double merge_threshold() const;
  /// True iff d(p0, M p0) is below the inradius, i.e. M fixes the orbit point.
  bool is_identity(const Matrix& m) const;

  friend ReflectionGroup build_group(const CoxeterSpec& spec);
  friend ReflectionGroup from_normals(const std::vector<Hyperplane>& normals,
                                      const LorentzVector& basepoint,
                                      const std::vector<PolytopeVertex>& vertices,
                                      const std::string& name);

 private:
  void finish();

  CoxeterSpec spec_;
  int dim_ = 0;
  std::vector<Hyperplane> normals_;
  std::vector<LorentzVector> flipped_;
  std::vector<Isometry> gens_;
  LorentzVector p0_;
  std::vector<PolytopeVertex> vertices_;
  double inradius_ = 0.0;
  double step_max_ = 0.0;
};

/// Realizes the simplex group described by `spec`, with the basepoint (equidistant
/// from all walls) moved to the model center.
ReflectionGroup build_group(const CoxeterSpec& spec);

/// Group generated by reflections in the given walls; the caller supplies an
/// interior basepoint and the polytope vertices. Labels are inferred from
/// the pairwise form values.
ReflectionGroup from_normals(const std::vector<Hyperplane>& normals, const LorentzVector& basepoint,
                             const std::vector<PolytopeVertex>& vertices,
                             const std::string& name = "custom");

/// Product of generator matrices, without reduction.
Element word_element(const ReflectionGroup& g, const Word& word);

bool is_left_descent(const ReflectionGroup& g, int s, const Element& w);
bool is_right_descent(const ReflectionGroup& g, int s, const Element& w);

/// Canonical reduced word of the unique element mapping p0 to the orbit
/// point x: repeatedly strip the least-index generator whose wall separates
/// x from p0. For a point x not in the orbit this locates the tile of x.
Word locate(const ReflectionGroup& g, LorentzVector x);

/// Canonical element with the same isometry as the word.
Element reduce(const ReflectionGroup& g, const Word& word);
/// Canonical element for a group matrix.
Element canonical(const ReflectionGroup& g, const Isometry& iso);

Element multiply(const ReflectionGroup& g, const Element& a, const Element& b);
Element inverse(const ReflectionGroup& g, const Element& a);

/// Entrywise matrix comparison within tol::element, relative to the larger
/// entries of long elements.
bool element_equal(const Element& a, const Element& b);

/// All elements of length <= max_length in shortlex order of canonical words.
/// Throws ResourceError when more than `budget` elements would be produced.
std::vector<Element> enumerate_elements(const ReflectionGroup& g, int max_length,
                                        size_t budget = 4'000'000);

/// Distinct reflections w s w^{-1} with l_S(w) <= max_conjugator_length,
/// ordered shortlex by canonical word.
std::vector<Reflection> enumerate_reflections(const ReflectionGroup& g, int max_conjugator_length,
                                              size_t budget = 4'000'000);

/// The reflection in a hyperplane through a given normal, as a group element.
Reflection reflection_from_element(const ReflectionGroup& g, const Element& r, int conjugator_length = 0);

struct ConjugacyWitness {
  Element w;
  int i = 0;
  int j = 0;
  int k = 0;
};

/// Bounded search for r1 r2 = w (s_i s_j)^k w^{-1} over w of length <= bound
/// and 1 <= |k| <= bound. With finite_only, only pairs with a finite label
/// are tried.
std::optional<ConjugacyWitness> product_conjugacy_check(const ReflectionGroup& g, const Reflection& r1,
                                                        const Reflection& r2, int bound,
                                                        bool finite_only = true);

/// First reflection r' (in enumeration order) ultra-parallel to r with
/// d-bar(H_r, H_r') > eps, among enumerate_reflections(max_depth).
std::optional<Reflection> find_ultraparallel_partner(const ReflectionGroup& g, const Reflection& r,
                                                     double eps, int max_depth);

std::string word_to_string(const Word& word);

}  // namespace hyperrefl::coxeter
