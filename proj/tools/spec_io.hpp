#pragma once

// Group-spec text format:
//
//   rank 3
//   1 2 2
//   1 3 3
//   2 3 inf            # parallel walls
//   # 2 3 inf:ultra:1  # walls at distance 1
//
// Generators are numbered from 1. Every unordered pair appears exactly once.

#include "hyperrefl/coxeter.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace hyperrefl::cli {

class SpecParseError : public std::runtime_error {
 public:
  SpecParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

coxeter::CoxeterSpec parse_spec(const std::string& text, const std::string& name = "inline");

/// Built-in name, or a path to a spec file.
coxeter::CoxeterSpec load_spec(const std::string& name_or_path);

const std::vector<std::string>& builtin_spec_names();

/// Source text of a built-in spec; throws std::out_of_range for unknown names.
const std::string& builtin_spec_text(const std::string& name);

std::string format_spec(const coxeter::CoxeterSpec& spec);

}  // namespace hyperrefl::cli
