#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace hyperrefl {

/// Largest supported ambient dimension n+1 of the form space. Vectors and
/// matrices are dynamically sized up to this bound but never heap allocate.
inline constexpr int kMaxDim = 10;

using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

namespace tol {
inline constexpr double form = 1e-9;      // form preservation
inline constexpr double point = 1e-7;     // point coincidence
inline constexpr double classify = 1e-7;  // parallel vs. intersecting / ultra-parallel
inline constexpr double element = 1e-6;   // entrywise matrix identity of group elements
inline constexpr double sphere_fit = 1e-8;
}  // namespace tol

/// Input violates a geometric precondition (wrong pair class, bad signature, ...).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vectors or matrices of incompatible dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A search or enumeration would exceed its memory/time budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hyperrefl
