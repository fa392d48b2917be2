#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace rbolab {

using Rng = std::mt19937_64;

inline Eigen::VectorXd gaussian_vector(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

/// Uniform on the unit sphere S^{n-1} (normalized Gaussian draw).
inline Eigen::VectorXd unit_sphere_sample(Eigen::Index n, Rng& rng) {
  Eigen::VectorXd v = gaussian_vector(n, rng);
  while (v.norm() == 0.0) v = gaussian_vector(n, rng);
  return v / v.norm();
}

}  // namespace rbolab
