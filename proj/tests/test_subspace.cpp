#include <doctest.h>

#include "rbolab/errors.hpp"
#include "rbolab/random.hpp"
#include "rbolab/subspace.hpp"

using namespace rbolab;

namespace {

double orthonormality_defect(const Subspace& s) {
  const Eigen::MatrixXd g = s.basis().transpose() * s.basis();
  return (g - Eigen::MatrixXd::Identity(s.dim(), s.dim())).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("from_span orthonormalizes and drops dependent columns") {
  Rng rng(1);
  for (int s = 0; s < 20; ++s) {
    Eigen::MatrixXd span(6, 4);
    span.col(0) = gaussian_vector(6, rng);
    span.col(1) = gaussian_vector(6, rng);
    span.col(2) = 2.0 * span.col(0) - 0.5 * span.col(1);
    span.col(3) = gaussian_vector(6, rng);
    const Subspace sub = Subspace::from_span(span);
    CHECK(sub.dim() == 3);
    CHECK(orthonormality_defect(sub) <= 1e-12);
    for (int c = 0; c < 4; ++c) CHECK(sub.distance(span.col(c)) <= 1e-10);
  }
  CHECK(Subspace::from_span(Eigen::MatrixXd::Zero(3, 2)).dim() == 0);

  // Orthonormal input comes back unchanged.
  const Subspace e01 = Subspace::coordinate(3, {0, 1});
  CHECK(e01.basis() == Eigen::MatrixXd::Identity(3, 3).leftCols(2));
  CHECK_THROWS_AS(Subspace::coordinate(3, {3}), InputError);
}

TEST_CASE("sum and intersection") {
  const Subspace a = Subspace::coordinate(4, {0, 1});
  const Subspace b = Subspace::coordinate(4, {1, 2});
  CHECK(subspace_sum(a, b).dim() == 3);
  const Subspace i = subspace_intersection(a, b);
  REQUIRE(i.dim() == 1);
  CHECK(std::abs(i.basis()(1, 0)) == doctest::Approx(1.0));
  CHECK(subspace_intersection(a, Subspace::coordinate(4, {2, 3})).dim() == 0);
  CHECK(subspace_intersection(a, Subspace(4)).dim() == 0);

  // Grassmann formula on random subspaces sharing a known common part.
  Rng rng(8);
  for (int s = 0; s < 30; ++s) {
    const Eigen::VectorXd shared1 = gaussian_vector(7, rng), shared2 = gaussian_vector(7, rng);
    Eigen::MatrixXd sa(7, 3), sb(7, 4);
    sa << shared1, shared2, gaussian_vector(7, rng);
    sb << shared1 + shared2, gaussian_vector(7, rng), shared2, gaussian_vector(7, rng);
    const Subspace A = Subspace::from_span(sa), B = Subspace::from_span(sb);
    const Subspace I = subspace_intersection(A, B);
    CHECK(I.dim() == 2);
    CHECK(orthonormality_defect(I) <= 1e-12);
    CHECK(A.contains(I, 1e-10));
    CHECK(B.contains(I, 1e-10));
    CHECK(subspace_sum(A, B).dim() == A.dim() + B.dim() - I.dim());
  }
  CHECK_THROWS_AS(subspace_sum(a, Subspace(3)), InputError);
}
