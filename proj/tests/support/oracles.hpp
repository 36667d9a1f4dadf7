#pragma once

// Independent oracles used by the tests. Everything here recomputes expected
// values through a different route than the library code under test.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "deltaideal/curvature.hpp"

namespace oracles {

/// Exhaustive tuple enumeration by a different algorithm: generate every
/// non-decreasing sequence of parts in [2, n-1] of every length, filter by
/// sum, and return the canonical sorted set (plus the empty tuple).
inline std::set<std::vector<int>> tuple_set(int n) {
  std::set<std::vector<int>> out;
  out.insert(std::vector<int>{});
  std::vector<int> parts;
  // Depth-first over non-decreasing sequences.
  std::function<void(int, int)> grow = [&](int min_part, int budget) {
    for (int p = min_part; p <= std::min(n - 1, budget); ++p) {
      parts.push_back(p);
      std::vector<int> canon = parts;
      std::sort(canon.begin(), canon.end(), std::greater<int>());
      out.insert(canon);
      grow(p, budget - p);
      parts.pop_back();
    }
  };
  grow(2, n);
  return out;
}

/// Direct evaluation of the coefficient formula from its definition.
inline double coefficient(int n, const std::vector<int>& parts) {
  int sum = 0;
  for (int p : parts) sum += p;
  const double k = static_cast<double>(parts.size());
  return static_cast<double>(n) * n * (n + k - 1 - sum) / (2.0 * (n + k - sum));
}

/// Random tensor with the full curvature symmetries: symmetrize a uniform
/// random array and validate it.
inline deltaideal::CurvatureTensor random_tensor(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> raw(static_cast<std::size_t>(n) * n * n * n);
  for (double& v : raw) v = uni(rng);
  return deltaideal::validate_curvature_tensor(
      deltaideal::symmetrize_components(raw, n), n);
}

/// Minimum sectional curvature over 2-planes of a 3-dimensional tangent
/// space, by dense search over plane normals (Fibonacci hemisphere) with two
/// local refinement stages. Independent of the optimizer path.
inline double min_sectional_n3(const deltaideal::CurvatureTensor& R) {
  using Eigen::Vector3d;
  auto plane_curvature = [&R](const Vector3d& normal) {
    // Orthonormal basis of the plane orthogonal to `normal`.
    Vector3d seed = std::abs(normal.x()) < 0.9 ? Vector3d(1, 0, 0) : Vector3d(0, 1, 0);
    const Vector3d u = normal.cross(seed).normalized();
    const Vector3d v = normal.cross(u).normalized();
    return deltaideal::sectional_curvature(R, u, v);
  };

  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  const int count = 200000;
  double best = std::numeric_limits<double>::infinity();
  Vector3d best_normal = Vector3d::UnitZ();
  for (int i = 0; i < count; ++i) {
    const double z = (i + 0.5) / count;  // hemisphere is enough: -w spans the same plane
    const double r = std::sqrt(1.0 - z * z);
    const double phi = golden_angle * i;
    const Vector3d w(r * std::cos(phi), r * std::sin(phi), z);
    const double k = plane_curvature(w);
    if (k < best) {
      best = k;
      best_normal = w;
    }
  }

  // Local grid refinement around the best normal.
  double window = 0.02;
  for (int stage = 0; stage < 3; ++stage) {
    Vector3d t1 = best_normal.cross(
        std::abs(best_normal.x()) < 0.9 ? Vector3d(1, 0, 0) : Vector3d(0, 1, 0));
    t1.normalize();
    const Vector3d t2 = best_normal.cross(t1).normalized();
    Vector3d center = best_normal;
    for (int a = -20; a <= 20; ++a) {
      for (int b = -20; b <= 20; ++b) {
        const Vector3d w =
            (center + window * (a / 20.0) * t1 + window * (b / 20.0) * t2).normalized();
        const double k = plane_curvature(w);
        if (k < best) {
          best = k;
          best_normal = w;
        }
      }
    }
    window /= 10.0;
  }
  return best;
}

}  // namespace oracles
