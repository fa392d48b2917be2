#pragma once

#include <Eigen/Core>

namespace rbolab {

/// Linear subspace of R^n held as an orthonormal column basis.
class Subspace {
 public:
  /// Zero subspace of R^n.
  explicit Subspace(int ambient);

  /// Orthonormalizes the columns of `span` (modified Gram-Schmidt, run twice)
  /// dropping columns whose remainder falls below tol * (largest column norm).
  /// An already orthonormal input is reproduced up to rounding.
  static Subspace from_span(const Eigen::MatrixXd& span, double tol = 1e-9);

  static Subspace full(int ambient);

  /// Span of the listed standard basis vectors.
  static Subspace coordinate(int ambient, std::initializer_list<int> indices);

  int ambient() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Eigen::MatrixXd& basis() const { return basis_; }

  /// Orthogonal projector onto the subspace.
  Eigen::MatrixXd projector() const;

  /// Distance of v from the subspace (Euclidean).
  double distance(const Eigen::VectorXd& v) const;

  bool contains(const Subspace& other, double tol = 1e-9) const;

 private:
  Subspace(Eigen::MatrixXd basis, int) : basis_(std::move(basis)) {}
  Eigen::MatrixXd basis_;
};

Subspace subspace_sum(const Subspace& a, const Subspace& b, double tol = 1e-9);

/// Intersection via principal angles: the directions of `a` whose principal
/// angle against `b` has sine <= tol.  The sines are read off the singular
/// values of (I - P_b) Q_a, which stays accurate near zero angles.
Subspace subspace_intersection(const Subspace& a, const Subspace& b,
                               double tol = 1e-9);

}  // namespace rbolab
