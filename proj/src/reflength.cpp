#include "hyperrefl/reflength.hpp"

#include "hyperrefl/kernels.hpp"

#include <deque>

namespace hyperrefl::reflength {

std::optional<std::vector<int>> dyer_deletion(const ReflectionGroup& g, const Element& w, int p) {
  return kernels::dyer_level_parallel(g, w.word, p);
}

std::vector<int> dyer_witness(const ReflectionGroup& g, const Element& w) {
  const int n = w.length();
  for (int p = n % 2; p <= n; p += 2)
    if (auto del = dyer_deletion(g, w, p)) return *del;
  // Unreachable for reduced words: deleting everything leaves the identity.
  throw GeometryError("dyer_witness: word is not a group word");
}

int reflection_length_dyer(const ReflectionGroup& g, const Element& w) {
  return static_cast<int>(dyer_witness(g, w).size());
}

int reflection_length_from_neighbour(const ReflectionGroup& g, const Element& w, int neighbour_length) {
  if (neighbour_length == 0) return 1;
  if (dyer_deletion(g, w, neighbour_length - 1)) return neighbour_length - 1;
  return neighbour_length + 1;
}

ReflectionLengthOracle::ReflectionLengthOracle(const ReflectionGroup& g, int radius, size_t budget)
    : group_(&g), radius_(radius), index_(g.merge_threshold()) {
  if (radius < 0) throw std::invalid_argument("oracle radius must be non-negative");
  ball_ = coxeter::enumerate_elements(g, radius, budget);
  for (size_t i = 0; i < ball_.size(); ++i) index_.insert(ball_[i].point(), static_cast<int>(i));
  lengths_.assign(ball_.size(), -1);
  lengths_[0] = 0;
  if (radius == 0) return;

  const std::vector<Reflection> edges = coxeter::enumerate_reflections(g, radius - 1, budget);
  edge_count_ = edges.size();
  if (ball_.size() * ball_.size() > 400'000'000ull)
    throw ResourceError("oracle: ball too large for the pair scan");
  PointGrid edge_index(g.merge_threshold());
  for (size_t i = 0; i < edges.size(); ++i) edge_index.insert(edges[i].element.point(), static_cast<int>(i));

  // y = x r with r in the edge set  <=>  x^{-1} y p0 is the point of some r.
  // Testing x^{-1} (y p0) keeps every product bounded by the ball size;
  // forming x (r p0) would multiply by matrices of S-length up to 2k - 1.
  std::vector<Matrix> inverses;
  inverses.reserve(ball_.size());
  for (const auto& e : ball_) inverses.push_back(e.iso.inverse().matrix());
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    const Matrix& inv = inverses[static_cast<size_t>(x)];
    for (size_t y = 0; y < ball_.size(); ++y) {
      if (lengths_[y] >= 0) continue;
      if (edge_index.find(inv * ball_[y].point()) < 0) continue;
      lengths_[y] = lengths_[static_cast<size_t>(x)] + 1;
      queue.push_back(static_cast<int>(y));
    }
  }
}

int ReflectionLengthOracle::length(const Element& w) const {
  const int i = index_.find(w.point());
  if (i < 0) throw ResourceError("oracle: element outside the enumerated ball");
  return lengths_[static_cast<size_t>(i)];
}

int reflection_length_oracle(const ReflectionGroup& g, const Element& w) {
  return ReflectionLengthOracle(g, w.length()).length(w);
}

StepCheck step_property(const ReflectionGroup& g, const Element& w, const Reflection& r) {
  const Element wr = coxeter::multiply(g, w, r.element);
  return StepCheck{reflection_length_dyer(g, w), reflection_length_dyer(g, wr)};
}

std::vector<LengthAnnotation> annotate(const ReflectionGroup& g, const std::vector<Element>& elements) {
  const std::vector<int> lr = kernels::reflection_lengths_parallel(g, elements);
  std::vector<LengthAnnotation> out;
  out.reserve(elements.size());
  for (size_t i = 0; i < elements.size(); ++i) out.push_back({elements[i], elements[i].length(), lr[i]});
  return out;
}

}  // namespace hyperrefl::reflength
