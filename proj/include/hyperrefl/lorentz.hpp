// SPDX-License-Identifier: MIT

#pragma once

// Linear algebra over the symmetric bilinear form of type (n,1).
//
// Coordinates are ordered so that the last entry carries the negative sign:
//   <a|b> = a_1 b_1 + ... + a_n b_n - a_{n+1} b_{n+1}.

#include "hyperrefl/common.hpp"

#include <vector>

namespace hyperrefl::lorentz {

using LorentzVector = Vector;

double form(const LorentzVector& a, const LorentzVector& b);

/// Multiplies by J = diag(1,...,1,-1).
LorentzVector flip_last(const LorentzVector& v);

/// Basis vector e_{n+1}, the model center of the upper sheet.
LorentzVector origin(int ambient_dim);

/// Form-preserving linear map, stored as its (n+1)x(n+1) matrix.
class Isometry {
 public:
  Isometry() = default;
  explicit Isometry(Matrix m);

  static Isometry identity(int ambient_dim);
  /// x -> x - 2<u|x> u for a unit spacelike u.
  static Isometry reflection(const LorentzVector& unit_normal);

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  /// this * other (apply other first).
  Isometry compose(const Isometry& other) const;
  /// J M^T J, exact for form-preserving M.
  Isometry inverse() const;
  LorentzVector apply(const LorentzVector& v) const;

  /// Right-multiplies in place by the reflection with normal u; J u is passed
  /// precomputed so the update is a single rank-one correction.
  void multiply_reflection(const LorentzVector& u, const LorentzVector& ju);

 private:
  Matrix m_;
};

/// M^T J M = J entrywise within tolerance, and M keeps the upper sheet.
bool is_isometry(const Matrix& m, double tolerance = tol::form);
inline bool is_isometry(const Isometry& m, double tolerance = tol::form) {
  return is_isometry(m.matrix(), tolerance);
}

/// Symmetric matrix with unit diagonal describing pairwise form values of
/// generator normals.
struct GramMatrix {
  Matrix entries;

  int size() const { return static_cast<int>(entries.rows()); }
  /// Throws GeometryError if not symmetric or not unit-diagonal.
  void validate(double tolerance = tol::form) const;
};

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// Eigenvalue sign counts of a symmetric matrix; |lambda| <= tolerance counts as zero.
Signature signature(const Matrix& symmetric, double tolerance = 1e-10);

/// Unit spacelike vectors u_1..u_m in R^{m-1,1} with <u_i|u_j> = G_ij.
///
/// Uses the eigendecomposition G = V diag(lambda) V^T with the negative
/// eigenvalue ordered last; u_i is row i of V diag(sqrt|lambda|). Eigenvector
/// signs are fixed so the first nonzero entry is positive.
/// Throws GeometryError("not a hyperbolic simplex group") unless the
/// signature is (m-1, 1).
std::vector<LorentzVector> realize_gram(const GramMatrix& gram);

}  // namespace hyperrefl::lorentz
