#include "hyperrefl/point_grid.hpp"

#include <cmath>

namespace hyperrefl {

PointGrid::PointGrid(double threshold) : threshold_(threshold), cell_(2.0 * threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("PointGrid: threshold must be positive");
}

size_t PointGrid::KeyHash::operator()(const std::vector<int64_t>& k) const {
  uint64_t h = 1469598103934665603ull;
  for (int64_t v : k) {
    h ^= static_cast<uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h);
}

std::vector<int64_t> PointGrid::key_of(const Vector& x) const {
  std::vector<int64_t> key(static_cast<size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i)
    key[static_cast<size_t>(i)] = static_cast<int64_t>(std::floor(x[i] / cell_));
  return key;
}

int PointGrid::find(const Vector& x) const {
  const std::vector<int64_t> base = key_of(x);
  const size_t d = base.size();
  // Probe the 3^d block of cells around x; the cell is twice the threshold
  // wide, so any point within the threshold lies in this block.
  std::vector<int64_t> key(base);
  std::vector<int> offset(d, -1);
  while (true) {
    for (size_t i = 0; i < d; ++i) key[i] = base[i] + offset[i];
    auto it = cells_.find(key);
    if (it != cells_.end()) {
      for (int slot : it->second)
        if ((points_[static_cast<size_t>(slot)] - x).norm() < threshold_)
          return indices_[static_cast<size_t>(slot)];
    }
    size_t i = 0;
    while (i < d && offset[i] == 1) offset[i++] = -1;
    if (i == d) break;
    ++offset[i];
  }
  return -1;
}

void PointGrid::insert(const Vector& x, int index) {
  const int slot = static_cast<int>(points_.size());
  points_.push_back(x);
  indices_.push_back(index);
  cells_[key_of(x)].push_back(slot);
}

int PointGrid::find_or_insert(const Vector& x, int index) {
  const int found = find(x);
  if (found >= 0) return found;
  insert(x, index);
  return -1;
}

}  // namespace hyperrefl
