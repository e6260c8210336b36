#pragma once

#include "hyperrefl/coxeter.hpp"
#include "spec_io.hpp"

namespace testgroups {

using hyperrefl::coxeter::CoxeterLabel;
using hyperrefl::coxeter::CoxeterSpec;
using hyperrefl::coxeter::ReflectionGroup;

inline CoxeterSpec triangle(const char* name, CoxeterLabel a12, CoxeterLabel a13, CoxeterLabel a23) {
  CoxeterSpec s(3, name);
  s.set(0, 1, a12);
  s.set(0, 2, a13);
  s.set(1, 2, a23);
  return s;
}

inline const ReflectionGroup& tri344() {
  static const ReflectionGroup g = hyperrefl::coxeter::build_group(hyperrefl::cli::load_spec("tri-3-4-4"));
  return g;
}

inline const ReflectionGroup& tri23inf() {
  static const ReflectionGroup g = hyperrefl::coxeter::build_group(hyperrefl::cli::load_spec("tri-2-3-inf"));
  return g;
}

inline const ReflectionGroup& universal() {
  static const ReflectionGroup g = hyperrefl::coxeter::build_group(hyperrefl::cli::load_spec("universal-3-ultra1"));
  return g;
}

// Cumulative element counts for L = 0..10 from the growth series
// (tests/oracles/growth_series.py).
inline constexpr int kCount344[] = {1, 4, 10, 21, 39, 68, 114, 187, 303, 486, 776};
inline constexpr int kCount23inf[] = {1, 4, 9, 16, 25, 37, 53, 74, 102, 139, 188};
inline constexpr int kCountUniversal[] = {1, 4, 10, 22, 46, 94, 190, 382, 766, 1534, 3070};

}  // namespace testgroups
