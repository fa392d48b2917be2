// Shared test fixtures: named operators and random families of verified
// Rota-Baxter operators built from random subalgebra splittings.
#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "rbolab/lie_algebra.hpp"
#include "rbolab/rbo.hpp"

namespace fixtures {

using rbolab::LieAlgebra;
using rbolab::LinearOperator;
using rbolab::Matrix;
using rbolab::Subspace;
using rbolab::Vector;

/// Minus the projection of sl(2,R) onto span{h, e} along span{e - f}:
/// h -> -h, e -> -e, f -> -e (columns in the basis h, e, f).
inline LinearOperator iwasawa_operator() {
  Matrix m(3, 3);
  m << -1, 0, 0,
       0, -1, -1,
       0, 0, 0;
  return LinearOperator(m);
}

/// B(u1, u2) = (-u1, 0) on so3+so3.
inline LinearOperator minus_first_projection() {
  Matrix m = Matrix::Zero(6, 6);
  m.topLeftCorner(3, 3) = -Matrix::Identity(3, 3);
  return LinearOperator(m);
}

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::Quaterniond q(normal(rng), normal(rng), normal(rng), normal(rng));
  q.normalize();
  return q.toRotationMatrix();
}

/// Ad_g on sl(2,R) in the basis (h, e, f) for g in SL(2,R).
inline Matrix sl2_adjoint(const Eigen::Matrix2d& g) {
  const Eigen::Matrix2d ginv = g.inverse();
  Matrix out(3, 3);
  for (int k = 0; k < 3; ++k) {
    Eigen::Matrix2d x = Eigen::Matrix2d::Zero();
    if (k == 0) x << 1, 0, 0, -1;
    if (k == 1) x << 0, 1, 0, 0;
    if (k == 2) x << 0, 0, 1, 0;
    const Eigen::Matrix2d y = g * x * ginv;
    out.col(k) << y(0, 0), y(0, 1), y(1, 0);
  }
  return out;
}

inline Eigen::Matrix2d random_sl2(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::Matrix2d g;
  do {
    g << normal(rng), normal(rng), normal(rng), normal(rng);
  } while (std::abs(g.determinant()) < 0.1);
  if (g.determinant() < 0) g.col(0) *= -1.0;
  return g / std::sqrt(g.determinant());
}

struct Sample {
  LieAlgebra algebra;
  LinearOperator op;
};

/// Random splitting of sl(2,R): a conjugate of the Borel span{h, e} paired with
/// a conjugate of any line outside it, in either role.
inline Sample random_sl2_rbo(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::bernoulli_distribution coin;
  const LieAlgebra L = rbolab::build_sl2R();
  const Matrix ad_g = sl2_adjoint(random_sl2(rng));
  Vector line(3);
  line << normal(rng), normal(rng), 0.0;
  do {
    line(2) = normal(rng);
  } while (std::abs(line(2)) < 0.1);
  Matrix borel(3, 2);
  borel << 1, 0, 0, 1, 0, 0;
  const Subspace two = Subspace::from_span(ad_g * borel);
  const Subspace one = Subspace::from_span(ad_g * line);
  return coin(rng) ? Sample{L, rbolab::splitting_rbo(L, one, two)}
                   : Sample{L, rbolab::splitting_rbo(L, two, one)};
}

/// Random splitting of so3+so3 into a factor and the graph of a rotation.
inline Sample random_so3_pair_rbo(std::mt19937_64& rng) {
  std::bernoulli_distribution coin;
  const LieAlgebra L = rbolab::direct_sum(rbolab::build_so(3), rbolab::build_so(3));
  const Eigen::Matrix3d R = random_rotation(rng);
  const bool first_factor = coin(rng);
  Matrix factor = Matrix::Zero(6, 3);
  Matrix graph(6, 3);
  if (first_factor) {
    factor.topRows(3) = Matrix::Identity(3, 3);
    graph << R, Matrix::Identity(3, 3);
  } else {
    factor.bottomRows(3) = Matrix::Identity(3, 3);
    graph << Matrix::Identity(3, 3), R;
  }
  const Subspace f = Subspace::from_span(factor);
  const Subspace g = Subspace::from_span(graph);
  return coin(rng) ? Sample{L, rbolab::splitting_rbo(L, f, g)} : Sample{L, rbolab::splitting_rbo(L, g, f)};
}

/// `count` verified operators alternating between the two families.
inline std::vector<Sample> random_rbos(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Sample> out;
  for (int s = 0; s < count; ++s) out.push_back(s % 2 ? random_so3_pair_rbo(rng) : random_sl2_rbo(rng));
  return out;
}

}  // namespace fixtures
