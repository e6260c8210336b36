#pragma once

// Slow, straightforward re-implementations used to check the library.
// Nothing here calls the code under test except for group construction.

#include "hyperrefl/coxeter.hpp"
#include "hyperrefl/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using hyperrefl::Matrix;
using hyperrefl::Vector;
using hyperrefl::coxeter::ReflectionGroup;
using hyperrefl::coxeter::Word;

inline double mform(const Vector& a, const Vector& b) {
  const int n = static_cast<int>(a.size()) - 1;
  return a.head(n).dot(b.head(n)) - a[n] * b[n];
}

/// Poincare ball distance from the closed form.
inline double ball_distance(const Vector& p, const Vector& q) {
  const double num = 2.0 * (p - q).squaredNorm();
  const double den = (1.0 - p.squaredNorm()) * (1.0 - q.squaredNorm());
  return std::acosh(1.0 + num / den);
}

/// I - 2 u u^T J.
inline Matrix reflection_matrix(const Vector& u) {
  const int d = static_cast<int>(u.size());
  Vector ju = u;
  ju[d - 1] = -ju[d - 1];
  return Matrix::Identity(d, d) - 2.0 * u * ju.transpose();
}

inline Matrix word_matrix(const ReflectionGroup& g, const Word& w) {
  const int d = g.ambient_dim();
  Matrix m = Matrix::Identity(d, d);
  for (int s : w) m = m * reflection_matrix(g.wall(s).normal);
  return m;
}

inline bool is_identity(const Matrix& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() < 1e-6 * scale;
}

/// Dyer's criterion by plain subset enumeration: the least p such that some
/// p letters can be deleted to leave the identity.
inline int brute_dyer(const ReflectionGroup& g, const Word& w) {
  const int n = static_cast<int>(w.size());
  for (int p = n % 2; p <= n; p += 2) {
    std::vector<int> del(static_cast<size_t>(n), 0);
    std::fill(del.end() - p, del.end(), 1);
    do {
      Word kept;
      for (int i = 0; i < n; ++i)
        if (!del[static_cast<size_t>(i)]) kept.push_back(w[static_cast<size_t>(i)]);
      if (is_identity(word_matrix(g, kept))) return p;
    } while (std::next_permutation(del.begin(), del.end()));
  }
  return -1;
}

struct BallEntry {
  Matrix m;
  int length;
  Word word;
};

/// Breadth-first Cayley-graph ball: every product of generators up to
/// length L, deduplicated by pairwise matrix comparison.
inline std::vector<BallEntry> cayley_ball(const ReflectionGroup& g, int L) {
  std::vector<BallEntry> ball{{Matrix::Identity(g.ambient_dim(), g.ambient_dim()), 0, {}}};
  size_t layer_start = 0;
  for (int len = 1; len <= L; ++len) {
    const size_t layer_end = ball.size();
    for (size_t i = layer_start; i < layer_end; ++i) {
      for (int s = 0; s < g.rank(); ++s) {
        Matrix m = ball[i].m * reflection_matrix(g.wall(s).normal);
        bool seen = false;
        for (const auto& e : ball) {
          const double scale = std::max(1.0, e.m.cwiseAbs().maxCoeff());
          if ((e.m - m).cwiseAbs().maxCoeff() < 1e-6 * scale) {
            seen = true;
            break;
          }
        }
        if (seen) continue;
        Word w = ball[i].word;
        w.push_back(s);
        ball.push_back({std::move(m), len, std::move(w)});
      }
    }
    layer_start = layer_end;
  }
  return ball;
}

/// Unit spacelike vector whose hyperplane lies at distance |a| from the
/// model center, with a uniformly random direction.
inline Vector random_normal(std::mt19937_64& rng, int n, double max_dist = 2.0) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> uni(-max_dist, max_dist);
  Vector dir(n);
  for (int i = 0; i < n; ++i) dir[i] = gauss(rng);
  dir.normalize();
  const double a = uni(rng);
  Vector u(n + 1);
  u.head(n) = std::cosh(a) * dir;
  u[n] = std::sinh(a);
  return u;
}

/// Point of the upper sheet within distance max_dist of the center.
inline Vector random_point(std::mt19937_64& rng, int n, double max_dist = 3.0) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> uni(0.0, max_dist);
  Vector dir(n);
  for (int i = 0; i < n; ++i) dir[i] = gauss(rng);
  dir.normalize();
  const double s = uni(rng);
  Vector x(n + 1);
  x.head(n) = std::sinh(s) * dir;
  x[n] = std::cosh(s);
  return x;
}

/// Two normals with |<u1|u2>| > 1 + margin.
inline std::pair<Vector, Vector> random_ultra_pair(std::mt19937_64& rng, int n, double margin = 1e-3) {
  for (;;) {
    Vector u1 = random_normal(rng, n);
    Vector u2 = random_normal(rng, n);
    if (std::abs(mform(u1, u2)) > 1.0 + margin) return {u1, u2};
  }
}

/// Form-orthogonal residual of u against the plane spanned by two null
/// vectors; zero iff u lies in their span.
inline double span_residual(const Vector& u, const Vector& xi1, const Vector& xi2) {
  const double f12 = mform(xi1, xi2);
  const Vector r = u - (mform(u, xi2) / f12) * xi1 - (mform(u, xi1) / f12) * xi2;
  return std::sqrt(std::max(0.0, mform(r, r)));
}

/// Null vector (x, 1) for a unit direction x.
inline Vector null_vector(const Vector& x) {
  Vector v(x.size() + 1);
  v.head(x.size()) = x;
  v[x.size()] = 1.0;
  return v;
}

}  // namespace oracle
