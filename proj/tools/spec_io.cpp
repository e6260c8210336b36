// SPDX-License-Identifier: MIT

#include "spec_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace hyperrefl::cli {

using coxeter::CoxeterLabel;
using coxeter::CoxeterSpec;

SpecParseError::SpecParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

const std::map<std::string, std::string>& builtins() {
  // The (2,3,inf) and (3,4,4) presentations as usually printed repeat the
  // pair (1,3); the second occurrence is read as (2,3) here.
  static const std::map<std::string, std::string> specs = {
      {"tri-2-3-inf",
       "# (s1 s2)^2 = (s1 s3)^3 = (s2 s3)^inf = 1, corrected from a repeated (s1 s3)\n"
       "rank 3\n"
       "1 2 2\n"
       "1 3 3\n"
       "2 3 inf\n"},
      {"tri-3-4-4",
       "# (s1 s2)^3 = (s1 s3)^4 = (s2 s3)^4 = 1, corrected from a repeated (s1 s3)\n"
       "rank 3\n"
       "1 2 3\n"
       "1 3 4\n"
       "2 3 4\n"},
      {"universal-3-ultra1",
       "# universal Coxeter group on three generators, walls pairwise at distance 1\n"
       "rank 3\n"
       "1 2 inf:ultra:1\n"
       "1 3 inf:ultra:1\n"
       "2 3 inf:ultra:1\n"},
  };
  return specs;
}

int parse_int(const std::string& tok, int line, const char* what) {
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw SpecParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
  }
  if (used != tok.size()) throw SpecParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
  return v;
}

CoxeterLabel parse_label(const std::string& tok, int line) {
  if (tok == "inf") return CoxeterLabel::parallel();
  const std::string ultra = "inf:ultra:";
  if (tok.rfind(ultra, 0) == 0) {
    const std::string num = tok.substr(ultra.size());
    size_t used = 0;
    double t = 0.0;
    try {
      t = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (num.empty() || used != num.size() || !(t > 0.0))
      throw SpecParseError(line, "ultra distance must be a positive number, got '" + num + "'");
    return CoxeterLabel::ultra(t);
  }
  const int m = parse_int(tok, line, "label (integer >= 2, inf or inf:ultra:<t>)");
  if (m < 2) throw SpecParseError(line, "label must be at least 2, got " + tok);
  return CoxeterLabel::finite(m);
}

}  // namespace

CoxeterSpec parse_spec(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  int rank = -1;
  int rank_line = 0;
  CoxeterSpec spec;
  std::vector<std::vector<int>> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (rank < 0) {
      if (tok.size() != 2 || tok[0] != "rank") throw SpecParseError(line_no, "expected 'rank <m>'");
      rank = parse_int(tok[1], line_no, "rank");
      if (rank < 2) throw SpecParseError(line_no, "rank must be at least 2");
      if (rank > kMaxDim) throw SpecParseError(line_no, "rank exceeds " + std::to_string(kMaxDim));
      rank_line = line_no;
      spec = CoxeterSpec(rank, name);
      seen.assign(static_cast<size_t>(rank), std::vector<int>(static_cast<size_t>(rank), 0));
      continue;
    }
    if (tok.size() != 3) throw SpecParseError(line_no, "expected 'i j label'");
    const int i = parse_int(tok[0], line_no, "generator index");
    const int j = parse_int(tok[1], line_no, "generator index");
    if (i < 1 || i > rank || j < 1 || j > rank)
      throw SpecParseError(line_no, "generator index out of range 1.." + std::to_string(rank));
    if (i == j) throw SpecParseError(line_no, "pair (" + tok[0] + ", " + tok[1] + ") is not a pair of distinct generators");
    int& prev = seen[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)];
    if (prev != 0)
      throw SpecParseError(line_no, "pair (" + tok[0] + ", " + tok[1] + ") already given on line " + std::to_string(prev));
    prev = line_no;
    seen[static_cast<size_t>(j - 1)][static_cast<size_t>(i - 1)] = line_no;
    spec.set(i - 1, j - 1, parse_label(tok[2], line_no));
  }
  if (rank < 0) throw SpecParseError(line_no, "missing 'rank <m>' line");
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j)
      if (seen[static_cast<size_t>(i)][static_cast<size_t>(j)] == 0)
        throw SpecParseError(line_no, "pair (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                                          ") missing (rank declared on line " + std::to_string(rank_line) + ")");
  return spec;
}

const std::vector<std::string>& builtin_spec_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : builtins()) out.push_back(k);
    return out;
  }();
  return names;
}

const std::string& builtin_spec_text(const std::string& name) { return builtins().at(name); }

CoxeterSpec load_spec(const std::string& name_or_path) {
  const auto it = builtins().find(name_or_path);
  if (it != builtins().end()) return parse_spec(it->second, name_or_path);
  std::ifstream f(name_or_path);
  if (!f) throw SpecParseError(0, "no built-in spec or readable file named '" + name_or_path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_spec(buf.str(), name_or_path);
}

std::string format_spec(const CoxeterSpec& spec) {
  std::ostringstream out;
  out << "rank " << spec.rank << "\n";
  for (int i = 0; i < spec.rank; ++i)
    for (int j = i + 1; j < spec.rank; ++j) {
      const CoxeterLabel& l = spec.label(i, j);
      out << i + 1 << ' ' << j + 1 << ' ';
      switch (l.kind) {
        case CoxeterLabel::Kind::Finite: out << l.m; break;
        case CoxeterLabel::Kind::Parallel: out << "inf"; break;
        case CoxeterLabel::Kind::Ultra: out << "inf:ultra:" << l.t; break;
      }
      out << "\n";
    }
  return out.str();
}

}  // namespace hyperrefl::cli
