// SPDX-License-Identifier: MIT
// Copyright (c) 2024 the hyperrefl authors

#include "hyperrefl/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hyperrefl::lorentz {

double form(const LorentzVector& a, const LorentzVector& b) {
  if (a.size() != b.size()) {
    std::ostringstream msg;
    msg << "form: dimension mismatch (" << a.size() << " vs " << b.size() << ")";
    throw DimensionError(msg.str());
  }
  const Eigen::Index n = a.size() - 1;
  return a.head(n).dot(b.head(n)) - a[n] * b[n];
}

LorentzVector flip_last(const LorentzVector& v) {
  LorentzVector out = v;
  out[out.size() - 1] = -out[out.size() - 1];
  return out;
}

LorentzVector origin(int ambient_dim) {
  LorentzVector e = LorentzVector::Zero(ambient_dim);
  e[ambient_dim - 1] = 1.0;
  return e;
}

Isometry::Isometry(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DimensionError("Isometry: matrix must be square");
}

Isometry Isometry::identity(int ambient_dim) {
  return Isometry(Matrix::Identity(ambient_dim, ambient_dim));
}

Isometry Isometry::reflection(const LorentzVector& u) {
  const int d = static_cast<int>(u.size());
  Matrix m = Matrix::Identity(d, d);
  m.noalias() -= 2.0 * u * flip_last(u).transpose();
  return Isometry(std::move(m));
}

Isometry Isometry::compose(const Isometry& other) const {
  if (dim() != other.dim()) throw DimensionError("compose: dimension mismatch");
  return Isometry(m_ * other.m_);
}

Isometry Isometry::inverse() const {
  const int d = dim();
  Matrix inv = m_.transpose();
  // J M^T J flips the sign of the last row and last column (corner twice).
  inv.row(d - 1) *= -1.0;
  inv.col(d - 1) *= -1.0;
  return Isometry(std::move(inv));
}

LorentzVector Isometry::apply(const LorentzVector& v) const {
  if (v.size() != dim()) throw DimensionError("apply: dimension mismatch");
  return m_ * v;
}

void Isometry::multiply_reflection(const LorentzVector& u, const LorentzVector& ju) {
  const LorentzVector mu = m_ * u;
  m_.noalias() -= 2.0 * mu * ju.transpose();
}

bool is_isometry(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols() || m.rows() < 2) return false;
  const int d = static_cast<int>(m.rows());
  Matrix j = Matrix::Identity(d, d);
  j(d - 1, d - 1) = -1.0;
  const Matrix defect = m.transpose() * j * m - j;
  // Relative to the size of the entries: products of O(10^3) reflections
  // carry entries far larger than one.
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff() * m.cwiseAbs().maxCoeff());
  if (defect.cwiseAbs().maxCoeff() > tolerance * scale) return false;
  return m(d - 1, d - 1) > 0.0;
}

void GramMatrix::validate(double tolerance) const {
  if (entries.rows() != entries.cols() || entries.rows() < 2)
    throw GeometryError("Gram matrix must be square with at least two rows");
  if ((entries - entries.transpose()).cwiseAbs().maxCoeff() > tolerance)
    throw GeometryError("Gram matrix is not symmetric");
  for (int i = 0; i < entries.rows(); ++i)
    if (std::abs(entries(i, i) - 1.0) > tolerance)
      throw GeometryError("Gram matrix diagonal must be 1");
}

Signature signature(const Matrix& symmetric, double tolerance) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric, Eigen::EigenvaluesOnly);
  Signature s;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()[i];
    if (lambda > tolerance) ++s.positive;
    else if (lambda < -tolerance) ++s.negative;
    else ++s.zero;
  }
  return s;
}

std::vector<LorentzVector> realize_gram(const GramMatrix& gram) {
  gram.validate();
  const int m = gram.size();
  if (m > kMaxDim) throw DimensionError("realize_gram: rank exceeds supported dimension");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram.entries);
  if (solver.info() != Eigen::Success) throw GeometryError("realize_gram: eigensolver failed");
  const Vector& lambda = solver.eigenvalues();
  const Matrix& basis = solver.eigenvectors();

  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  int negatives = 0;
  int zeros = 0;
  for (int i = 0; i < m; ++i) {
    if (lambda[i] < -1e-10 * scale) ++negatives;
    else if (lambda[i] <= 1e-10 * scale) ++zeros;
  }
  if (negatives != 1 || zeros != 0) {
    std::ostringstream msg;
    msg << "not a hyperbolic simplex group (signature " << (m - negatives - zeros) << ","
        << negatives << "," << zeros << " zero)";
    throw GeometryError(msg.str());
  }

  // Eigenvalues come sorted ascending, so the single negative one is first;
  // put it in the last (timelike) slot and keep the rest in order.
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 1);
  order[m - 1] = 0;

  Matrix coords(m, m);
  for (int c = 0; c < m; ++c) {
    const int k = order[c];
    Vector column = basis.col(k);
    for (int r = 0; r < m; ++r) {
      if (std::abs(column[r]) > 1e-14) {
        if (column[r] < 0) column = -column;
        break;
      }
    }
    coords.col(c) = column * std::sqrt(std::abs(lambda[k]));
  }

  std::vector<LorentzVector> normals;
  normals.reserve(m);
  for (int i = 0; i < m; ++i) normals.emplace_back(coords.row(i).transpose());
  return normals;
}

}  // namespace hyperrefl::lorentz
