#pragma once

#include "hyperrefl/common.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace hyperrefl {

/// Spatial hash over points of R^d that merges points closer than a fixed
/// Euclidean threshold. Used to deduplicate orbit points w.p0, which are
/// pairwise far apart, so a merge threshold far below the orbit separation
/// is exact in practice.
class PointGrid {
 public:
  explicit PointGrid(double threshold);

  /// Index stored for a point within the threshold of x, or -1.
  int find(const Vector& x) const;
  /// Stores x with the given index (does not check for duplicates).
  void insert(const Vector& x, int index);
  /// find(x) if present, otherwise insert(x, index) and return -1.
  int find_or_insert(const Vector& x, int index);

  size_t size() const { return points_.size(); }
  double threshold() const { return threshold_; }

 private:
  struct KeyHash {
    size_t operator()(const std::vector<int64_t>& k) const;
  };
  std::vector<int64_t> key_of(const Vector& x) const;

  double threshold_;
  double cell_;
  std::vector<Vector> points_;
  std::vector<int> indices_;
  std::unordered_map<std::vector<int64_t>, std::vector<int>, KeyHash> cells_;
};

}  // namespace hyperrefl
