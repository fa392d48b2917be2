#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rbolab/subspace.hpp"

namespace rbolab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Default tolerances shared by the diagnostics.
inline constexpr double kIdentityTol = 1e-9;
inline constexpr double kEigenTol = 1e-9;
inline constexpr double kClosureTol = 1e-9;
inline constexpr double kBuilderJacobiTol = 1e-10;

/// Finite-dimensional real Lie algebra in a fixed basis e_0..e_{n-1}:
/// [e_i, e_j] = sum_k c(i, j, k) e_k.
///
/// Only the rows i < j are taken from the caller; the diagonal is zero and
/// the lower rows are reflected, so antisymmetry holds exactly.  The Jacobi
/// identity is *not* enforced here (deformed brackets of non-RBOs are
/// legitimately non-Lie); use jacobi_residual() or the builders.
class LieAlgebra {
 public:
  /// `c` is a dense n*n*n tensor indexed (i*n + j)*n + k.  Entries with
  /// i >= j are ignored.
  LieAlgebra(int dim, std::vector<double> c, std::string name = {});

  /// Abelian algebra of dimension `dim`.
  static LieAlgebra abelian(int dim, std::string name = {});

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  double c(int i, int j, int k) const {
    return c_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k];
  }
  const std::vector<double>& tensor() const { return c_; }

  /// [e_i, e_j] as a coordinate vector.
  Vector basis_bracket(int i, int j) const;

 private:
  int dim_;
  std::vector<double> c_;
  std::string name_;
};

Vector bracket(const LieAlgebra& L, const Vector& u, const Vector& v);

/// Matrix of v -> [u, v].
Matrix ad(const LieAlgebra& L, const Vector& u);

/// Max-norm Jacobi defect over all basis triples.
double jacobi_residual(const LieAlgebra& L);

/// K(x, y) = trace(ad_x ad_y) in the basis.
Matrix killing_form(const LieAlgebra& L);

/// True iff every eigenvalue of the symmetric matrix K is < -tol.
/// Throws InputError when K is asymmetric beyond tol.
bool is_negative_definite(const Matrix& K, double tol = kEigenTol);

/// Generic adjoint nullity: min over `trials` random unit vectors x of
/// dim ker(ad_x).
int rank_estimate(const LieAlgebra& L, int trials, std::uint64_t seed);

/// Smallest subalgebra containing S.
Subspace subalgebra_closure(const LieAlgebra& L, const Subspace& S,
                            double tol = kClosureTol);

/// Smallest ideal containing S.
Subspace ideal_closure(const LieAlgebra& L, const Subspace& S,
                       double tol = kClosureTol);

/// True when [S, S] is contained in S within tol.
bool is_subalgebra(const LieAlgebra& L, const Subspace& S,
                   double tol = kClosureTol);

/// Probabilistic simplicity test.  Requires a nondegenerate Killing form,
/// then looks for a proper ideal by (1) ideal closure of `trials` random
/// vectors, (2) ideal closure of every basis vector and (3) eigenspaces of a
/// generic element of the commutant of ad(L), which separate the simple
/// factors of a semisimple algebra.  Any proper ideal found means false.
bool is_simple_heuristic(const LieAlgebra& L, int trials, std::uint64_t seed,
                         double tol = kIdentityTol);

// Builders.  Basis conventions:
//  so(n): X_{ij} = E_{ji} - E_{ij} for i < j, ordered lexicographically; for
//         n = 3 this gives [e_1, e_2] = e_3 (cyclic epsilon convention).
//  su(n): X = -(i/2) * lambda for the generalized Gell-Mann matrices, ordered
//         per pair (j, k), j < k lexicographic: symmetric then antisymmetric,
//         followed by the n-1 diagonal ones.  su(2) gets [e_1, e_2] = e_3.
//  sl(2,R): (h, e, f) with [h,e] = 2e, [h,f] = -2f, [e,f] = h.
LieAlgebra build_so(int n);
LieAlgebra build_su(int n);
LieAlgebra build_sl2R();
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

/// Structure constants of a matrix Lie algebra spanned by a Frobenius-
/// orthogonal basis (real or complex matrices, stored as complex).
LieAlgebra from_matrix_basis(const std::vector<Eigen::MatrixXcd>& basis,
                             std::string name);

}  // namespace rbolab
