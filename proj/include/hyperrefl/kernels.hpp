#pragma once

// Hot loops in two flavours: a plain serial reference and an OpenMP version.
// Both produce identical, deterministically ordered results; the unsuffixed
// entry points dispatch to the parallel version.

#include "hyperrefl/coxeter.hpp"
#include "hyperrefl/hyperboloid.hpp"

#include <optional>
#include <vector>

namespace hyperrefl::kernels {

using coxeter::Element;
using coxeter::Reflection;
using coxeter::ReflectionGroup;
using coxeter::Word;
using lorentz::Isometry;

int max_threads();

/// w s for every w in the layer (in order) and every s that is not a right
/// descent of w (ascending s).
std::vector<Isometry> expand_layer_serial(const ReflectionGroup& g, const std::vector<Element>& layer);
std::vector<Isometry> expand_layer_parallel(const ReflectionGroup& g, const std::vector<Element>& layer);
inline std::vector<Isometry> expand_layer(const ReflectionGroup& g, const std::vector<Element>& layer) {
  return expand_layer_parallel(g, layer);
}

/// Canonical elements for a batch of group matrices.
std::vector<Element> canonicalize_serial(const ReflectionGroup& g, const std::vector<Isometry>& isos);
std::vector<Element> canonicalize_parallel(const ReflectionGroup& g, const std::vector<Isometry>& isos);
inline std::vector<Element> canonicalize(const ReflectionGroup& g, const std::vector<Isometry>& isos) {
  return canonicalize_parallel(g, isos);
}

/// Lexicographically least deletion set of size p turning the word into
/// the identity. The parallel version splits on the first deleted position.
std::optional<std::vector<int>> dyer_level_serial(const ReflectionGroup& g, const Word& word, int p);
std::optional<std::vector<int>> dyer_level_parallel(const ReflectionGroup& g, const Word& word, int p);

/// Reflection length of every element (Dyer).
std::vector<int> reflection_lengths_serial(const ReflectionGroup& g, const std::vector<Element>& elements);
std::vector<int> reflection_lengths_parallel(const ReflectionGroup& g, const std::vector<Element>& elements);

struct PairRecord {
  int a = 0;
  int b = 0;
  hyperboloid::PairKind kind = hyperboloid::PairKind::Intersecting;
};

/// All pairs a < b of non-intersecting reflection hyperplanes, ordered by (a, b).
std::vector<PairRecord> disjoint_pairs_serial(const std::vector<Reflection>& reflections);
std::vector<PairRecord> disjoint_pairs_parallel(const std::vector<Reflection>& reflections);

}  // namespace hyperrefl::kernels
