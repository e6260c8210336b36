#pragma once

// Reflection length: the least number of reflections whose product is w.
//
// Dyer's deletion theorem: for an S-reduced word s_1...s_N, l_R(w) is the
// least p such that deleting some p letters leaves a word for the identity.

#include "hyperrefl/coxeter.hpp"
#include "hyperrefl/point_grid.hpp"

#include <optional>
#include <vector>

namespace hyperrefl::reflength {

using coxeter::Element;
using coxeter::Reflection;
using coxeter::ReflectionGroup;

struct LengthAnnotation {
  Element element;
  int l_s = 0;
  int l_r = 0;
};

/// Lexicographically least set of p positions whose deletion gives the
/// identity, or nothing. Parity is not checked here.
std::optional<std::vector<int>> dyer_deletion(const ReflectionGroup& g, const Element& w, int p);

/// Minimal p over p = N mod 2, N mod 2 + 2, ..., N.
int reflection_length_dyer(const ReflectionGroup& g, const Element& w);

/// Deleted positions realizing reflection_length_dyer.
std::vector<int> dyer_witness(const ReflectionGroup& g, const Element& w);

/// l_R(w) when l_R of a neighbour w r (r a reflection) is known; uses that
/// the two lengths differ by exactly one.
int reflection_length_from_neighbour(const ReflectionGroup& g, const Element& w, int neighbour_length);

/// Breadth-first reflection length on the ball of radius k.
///
/// Vertices are the elements with l_S <= k; edges are right multiplication
/// by reflections w s w^{-1} with l_S(w) <= k - 1 (S-length <= 2k - 1).
/// Restoring Dyer's deleted letters one at a time gives a path inside this
/// graph, so distances equal l_R for every vertex.
class ReflectionLengthOracle {
 public:
  ReflectionLengthOracle(const ReflectionGroup& g, int radius, size_t budget = 200'000);

  int radius() const { return radius_; }
  size_t ball_size() const { return ball_.size(); }
  size_t edge_set_size() const { return edge_count_; }
  const std::vector<Element>& ball() const { return ball_; }
  const std::vector<int>& lengths() const { return lengths_; }

  /// Throws ResourceError if w lies outside the ball.
  int length(const Element& w) const;

 private:
  const ReflectionGroup* group_;
  int radius_;
  std::vector<Element> ball_;
  std::vector<int> lengths_;
  size_t edge_count_ = 0;
  PointGrid index_;
};

/// One-shot oracle query (builds an oracle of radius l_S(w)).
int reflection_length_oracle(const ReflectionGroup& g, const Element& w);

struct StepCheck {
  int before = 0;
  int after = 0;
  bool holds() const { return after - before == 1 || before - after == 1; }
};

/// l_R(w) and l_R(w r) via Dyer.
StepCheck step_property(const ReflectionGroup& g, const Element& w, const Reflection& r);

std::vector<LengthAnnotation> annotate(const ReflectionGroup& g, const std::vector<Element>& elements);

}  // namespace hyperrefl::reflength
