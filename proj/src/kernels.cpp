#include "hyperrefl/kernels.hpp"

#include "hyperrefl/point_grid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hyperrefl::kernels {

using lorentz::LorentzVector;

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

void expand_one(const ReflectionGroup& g, const Element& w, std::vector<Isometry>& out) {
  for (int s = 0; s < g.rank(); ++s) {
    if (coxeter::is_right_descent(g, s, w)) continue;
    Isometry m = w.iso;
    m.multiply_reflection(g.wall(s).normal, g.flipped_normal(s));
    out.push_back(std::move(m));
  }
}

}  // namespace

std::vector<Isometry> expand_layer_serial(const ReflectionGroup& g, const std::vector<Element>& layer) {
  std::vector<Isometry> out;
  for (const Element& w : layer) expand_one(g, w, out);
  return out;
}

std::vector<Isometry> expand_layer_parallel(const ReflectionGroup& g, const std::vector<Element>& layer) {
  const long n = static_cast<long>(layer.size());
  std::vector<std::vector<Isometry>> parts(layer.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) expand_one(g, layer[static_cast<size_t>(i)], parts[static_cast<size_t>(i)]);
  std::vector<Isometry> out;
  for (auto& p : parts)
    for (auto& m : p) out.push_back(std::move(m));
  return out;
}

std::vector<Element> canonicalize_serial(const ReflectionGroup& g, const std::vector<Isometry>& isos) {
  std::vector<Element> out;
  out.reserve(isos.size());
  for (const auto& m : isos) out.push_back(coxeter::canonical(g, m));
  return out;
}

std::vector<Element> canonicalize_parallel(const ReflectionGroup& g, const std::vector<Isometry>& isos) {
  std::vector<Element> out(isos.size());
  const long n = static_cast<long>(isos.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) out[static_cast<size_t>(i)] = coxeter::canonical(g, isos[static_cast<size_t>(i)]);
  return out;
}

namespace {

Matrix times_generator(const ReflectionGroup& g, const Matrix& m, int s) {
  Matrix next = m;
  const LorentzVector mu = m * g.wall(s).normal;
  next.noalias() -= 2.0 * mu * g.flipped_normal(s).transpose();
  return next;
}

/// Per-word tables shared by every branch of one search.
struct DeletionTables {
  DeletionTables(const ReflectionGroup& g, const Word& word) : grid(g.merge_threshold()) {
    const int n = static_cast<int>(word.size());
    const int d = g.ambient_dim();
    prefix.resize(static_cast<size_t>(n + 1));
    prefix[0] = Matrix::Identity(d, d);
    for (int i = 0; i < n; ++i)
      prefix[static_cast<size_t>(i + 1)] = times_generator(g, prefix[static_cast<size_t>(i)], word[static_cast<size_t>(i)]);
    suffix.resize(static_cast<size_t>(n + 1));
    suffix[static_cast<size_t>(n)] = g.basepoint();
    for (int i = n - 1; i >= 0; --i)
      suffix[static_cast<size_t>(i)] = g.generator(word[static_cast<size_t>(i)]).apply(suffix[static_cast<size_t>(i + 1)]);
    // Orbit point of the word with letter j deleted.
    for (int j = 0; j < n; ++j) {
      const LorentzVector q = prefix[static_cast<size_t>(j)] * suffix[static_cast<size_t>(j + 1)];
      int slot = grid.find(q);
      if (slot < 0) {
        slot = static_cast<int>(deleted_at.size());
        grid.insert(q, slot);
        deleted_at.emplace_back();
      }
      deleted_at[static_cast<size_t>(slot)].push_back(j);
    }
  }

  std::vector<Matrix> prefix;         // s_1 ... s_i
  std::vector<LorentzVector> suffix;  // s_{i+1} ... s_n p0
  PointGrid grid;
  std::vector<std::vector<int>> deleted_at;  // ascending positions per point
};

class DeletionSearch {
 public:
  DeletionSearch(const ReflectionGroup& g, const Word& word, int p, const DeletionTables& tables)
      : g_(g), word_(word), tables_(tables), n_(static_cast<int>(word.size())), p_(p), dim_(g.ambient_dim()) {
    chosen_.reserve(static_cast<size_t>(p));
  }

  /// Search with positions [0, start) fixed: kept except those in `deleted`.
  bool run(int start, const Matrix& m, std::vector<int> deleted) {
    chosen_ = std::move(deleted);
    return dfs(start, m);
  }

  const std::vector<int>& chosen() const { return chosen_; }

 private:
  bool dfs(int pos, const Matrix& m) {
    const int del = static_cast<int>(chosen_.size());
    const int kept_left = (n_ - pos) - (p_ - del);
    // The kept suffix must undo m, and a product of k generators moves the
    // basepoint at most k * step_max.
    const double moved = std::acosh(std::max(1.0, m(dim_ - 1, dim_ - 1)));
    if (moved > kept_left * g_.step_max() + 0.5 * g_.inradius()) return false;
    if (del == p_) {
      const LorentzVector x = m * tables_.suffix[static_cast<size_t>(pos)];
      return x[dim_ - 1] < std::cosh(g_.inradius());
    }
    if (del + 1 == p_) return last_deletion(pos, m);
    if (pos == n_) return false;
    chosen_.push_back(pos);
    if (dfs(pos + 1, m)) return true;
    chosen_.pop_back();
    if (kept_left > 0) {
      if (dfs(pos + 1, times_generator(g_, m, word_[static_cast<size_t>(pos)]))) return true;
    }
    return false;
  }

  // Least j >= pos with m s_pos ... (s_j deleted) ... s_n = 1, i.e. the
  // deleted-word point at j equals s_1 ... s_{pos-1} m^{-1} p0.
  bool last_deletion(int pos, const Matrix& m) {
    if (pos == n_) return false;
    const LorentzVector back = -lorentz::flip_last(m.row(dim_ - 1).transpose());
    const LorentzVector y = tables_.prefix[static_cast<size_t>(pos)] * back;
    const int slot = tables_.grid.find(y);
    if (slot < 0) return false;
    const auto& js = tables_.deleted_at[static_cast<size_t>(slot)];
    const auto it = std::lower_bound(js.begin(), js.end(), pos);
    if (it == js.end()) return false;
    chosen_.push_back(*it);
    return true;
  }

  const ReflectionGroup& g_;
  const Word& word_;
  const DeletionTables& tables_;
  int n_;
  int p_;
  int dim_;
  std::vector<int> chosen_;
};

}  // namespace

std::optional<std::vector<int>> dyer_level_serial(const ReflectionGroup& g, const Word& word, int p) {
  const int n = static_cast<int>(word.size());
  if (p < 0 || p > n) return std::nullopt;
  const DeletionTables tables(g, word);
  DeletionSearch search(g, word, p, tables);
  const Matrix id = Matrix::Identity(g.ambient_dim(), g.ambient_dim());
  if (search.run(0, id, {})) return search.chosen();
  return std::nullopt;
}

std::optional<std::vector<int>> dyer_level_parallel(const ReflectionGroup& g, const Word& word, int p) {
  const int n = static_cast<int>(word.size());
  if (p < 0 || p > n) return std::nullopt;
  if (p == 0 || n < 8) return dyer_level_serial(g, word, p);

  // Branch on the first deleted position f; positions before f are kept.
  const int branches = n - p + 1;
  const DeletionTables tables(g, word);

  std::vector<std::optional<std::vector<int>>> found(static_cast<size_t>(branches));
  std::atomic<int> best{branches};
#pragma omp parallel for schedule(dynamic, 1)
  for (int f = 0; f < branches; ++f) {
    if (f > best.load()) continue;
    DeletionSearch search(g, word, p, tables);
    if (search.run(f + 1, tables.prefix[static_cast<size_t>(f)], {f})) {
      found[static_cast<size_t>(f)] = search.chosen();
      int cur = best.load();
      while (f < cur && !best.compare_exchange_weak(cur, f)) {
      }
    }
  }
  for (auto& r : found)
    if (r) return r;
  return std::nullopt;
}

namespace {
int dyer_length_serial(const ReflectionGroup& g, const Word& word) {
  const int n = static_cast<int>(word.size());
  for (int p = n % 2; p <= n; p += 2)
    if (dyer_level_serial(g, word, p)) return p;
  return n;
}
}  // namespace

std::vector<int> reflection_lengths_serial(const ReflectionGroup& g, const std::vector<Element>& elements) {
  std::vector<int> out;
  out.reserve(elements.size());
  for (const auto& e : elements) out.push_back(dyer_length_serial(g, e.word));
  return out;
}

std::vector<int> reflection_lengths_parallel(const ReflectionGroup& g, const std::vector<Element>& elements) {
  std::vector<int> out(elements.size());
  const long n = static_cast<long>(elements.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) out[static_cast<size_t>(i)] = dyer_length_serial(g, elements[static_cast<size_t>(i)].word);
  return out;
}

namespace {
void scan_row(const std::vector<Reflection>& refl, int a, std::vector<PairRecord>& out) {
  const int k = static_cast<int>(refl.size());
  for (int b = a + 1; b < k; ++b) {
    const auto rel = hyperboloid::classify_pair(refl[static_cast<size_t>(a)].hyperplane,
                                                refl[static_cast<size_t>(b)].hyperplane);
    if (rel.kind != hyperboloid::PairKind::Intersecting) out.push_back({a, b, rel.kind});
  }
}
}  // namespace

std::vector<PairRecord> disjoint_pairs_serial(const std::vector<Reflection>& reflections) {
  std::vector<PairRecord> out;
  for (int a = 0; a < static_cast<int>(reflections.size()); ++a) scan_row(reflections, a, out);
  return out;
}

std::vector<PairRecord> disjoint_pairs_parallel(const std::vector<Reflection>& reflections) {
  const int k = static_cast<int>(reflections.size());
  std::vector<PairRecord> out;
  // Rows in fixed-size chunks keep the per-row buffers bounded.
  constexpr int kChunk = 256;
  for (int lo = 0; lo < k; lo += kChunk) {
    const int hi = std::min(k, lo + kChunk);
    std::vector<std::vector<PairRecord>> rows(static_cast<size_t>(hi - lo));
#pragma omp parallel for schedule(dynamic, 4)
    for (int a = lo; a < hi; ++a) scan_row(reflections, a, rows[static_cast<size_t>(a - lo)]);
    for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

}  // namespace hyperrefl::kernels
