#pragma once

#include <utility>

#include "rbolab/lie_algebra.hpp"
#include "rbolab/subspace.hpp"

namespace rbolab {

/// Square operator on the coordinate space of an algebra; column j is the
/// image of e_j.
class LinearOperator {
 public:
  explicit LinearOperator(Matrix m);

  static LinearOperator zero(int dim);
  static LinearOperator minus_identity(int dim);
  static LinearOperator identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Vector operator()(const Vector& u) const;

  /// Entrywise max-abs distance.
  double distance(const LinearOperator& other) const;

 private:
  Matrix m_;
};

struct RboReport {
  double max_residual = 0.0;
  bool is_rbo = false;
  std::pair<int, int> worst_pair{0, 0};
};

struct DecompositionReport {
  int dim_im_B = 0;
  int dim_im_Bprime = 0;
  int dim_sum = 0;
  int dim_intersection = 0;
  bool is_full_sum = false;
};

/// [Bu, Bv] - B([Bu, v] + [u, Bv] + [u, v]).
Vector rbo_residual(const LieAlgebra& L, const LinearOperator& B, const Vector& u,
                    const Vector& v);

/// Weight-1 Rota-Baxter check over all basis pairs i < j (complete by
/// bilinearity).  is_rbo holds iff max_residual <= tol.
RboReport is_rbo(const LieAlgebra& L, const LinearOperator& B, double tol = kIdentityTol);

/// Structure constants of [u, v]_B = [Bu, v] + [u, Bv] + [u, v].  Antisymmetric
/// for any B; a Lie bracket only when B is a Rota-Baxter operator.
LieAlgebra deformed_algebra(const LieAlgebra& L, const LinearOperator& B);

/// -I - B.
LinearOperator companion(const LinearOperator& B);

/// Column space, with singular values below tol * sigma_max treated as zero.
Subspace image_subspace(const LinearOperator& B, double tol = kIdentityTol);
Subspace kernel_subspace(const LinearOperator& B, double tol = kIdentityTol);

DecompositionReport decomposition_report(const LieAlgebra& L, const LinearOperator& B,
                                         double tol = kIdentityTol);

/// For a direct vector-space splitting L = S1 (+) S2 into subalgebras, returns
/// minus the projection onto S2 along S1.  Throws PreconditionError when a
/// summand is not a subalgebra or the splitting is not direct, and
/// std::logic_error if the result somehow fails is_rbo.
LinearOperator splitting_rbo(const LieAlgebra& L, const Subspace& S1, const Subspace& S2,
                             double tol = kIdentityTol);

struct Restriction {
  LieAlgebra algebra;
  LinearOperator op;
};

/// Bracket and operator restricted to a B-invariant subalgebra S, expressed in
/// S's orthonormal coordinates.
Restriction restrict(const LieAlgebra& L, const LinearOperator& B, const Subspace& S,
                     double tol = kIdentityTol);

}  // namespace rbolab
