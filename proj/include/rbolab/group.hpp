#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rbolab/lie_algebra.hpp"

namespace rbolab {

enum class Group { SU2, SO3 };

std::string to_string(Group g);

/// Element of SU(2) (2x2 complex) or SO(3) (3x3 with zero imaginary part).
class GroupElement {
 public:
  /// Validates unitarity and det = 1 within tol; throws InputError otherwise.
  GroupElement(Group group, Eigen::MatrixXcd m, double tol = 1e-12);

  static GroupElement identity(Group group);

  Group group() const { return group_; }
  const Eigen::MatrixXcd& matrix() const { return m_; }

  GroupElement inverse() const;

  /// max(|m^dagger m - I|, |det m - 1|), plus for SO(3) the largest imaginary part.
  double invariant_defect() const;

 private:
  struct Unchecked {};
  GroupElement(Group group, Eigen::MatrixXcd m, Unchecked) : group_(group), m_(std::move(m)) {}
  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);

  Group group_;
  Eigen::MatrixXcd m_;
};

/// Product in the same group; InputError for mixed groups.  The result is not
/// re-validated, so drift accumulates only through rounding.
GroupElement operator*(const GroupElement& a, const GroupElement& b);

/// Frobenius distance; InputError for mixed groups.
double distance(const GroupElement& a, const GroupElement& b);

enum class GroupOperatorKind { Trivial, Inverse, Custom };

/// Map G -> G.  TRIVIAL and INVERSE are known Rota-Baxter operators; CUSTOM
/// maps start unverified and must pass certify() before star products treat
/// them as a group law.
class GroupOperator {
 public:
  using Map = std::function<GroupElement(const GroupElement&)>;

  static GroupOperator trivial();
  static GroupOperator inverse();
  static GroupOperator custom(std::string name, Map map);

  GroupOperatorKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool verified() const { return verified_; }

  GroupElement operator()(const GroupElement& g) const;

  /// Copy of this operator marked as verified.
  GroupOperator as_verified() const;

 private:
  GroupOperator(GroupOperatorKind kind, std::string name, Map map, bool verified)
      : kind_(kind), name_(std::move(name)), map_(std::move(map)), verified_(verified) {}

  GroupOperatorKind kind_;
  std::string name_;
  Map map_;
  bool verified_;
};

/// Haar-uniform samples: a normalized 4-d Gaussian is a unit quaternion,
/// mapped to SU(2) or to its rotation in SO(3).
std::vector<GroupElement> sample_group(Group which, int count, std::uint64_t seed);

/// || B(g) B(h) - B(g B(g) h B(g)^{-1}) ||_F.
double group_rbo_defect(const GroupOperator& B, const GroupElement& g, const GroupElement& h);

inline constexpr int kCertifyPairs = 256;

/// Max defect over `pairs` seeded random pairs.
double max_group_defect(const GroupOperator& B, Group which, int pairs, std::uint64_t seed);

/// Samples the defect on kCertifyPairs pairs; returns the operator marked as
/// verified when the defect stays within tol, unchanged otherwise.
GroupOperator certify(const GroupOperator& B, Group which, std::uint64_t seed, double tol = 1e-10);

struct StarProduct {
  GroupElement value;
  bool verified_law;  ///< false when B has not been verified as an RBO
};

/// g * h = g B(g) h B(g)^{-1}.
StarProduct star_multiply(const GroupOperator& B, const GroupElement& g, const GroupElement& h);

/// g -> g^{-1} B(g^{-1}); always CUSTOM and unverified.
GroupOperator tilde_operator(const GroupOperator& B);

/// Closed-form exponential of the algebra element with coordinates u:
/// su(2) uses the basis -(i/2) sigma_a, so(3) the cross-product basis.
GroupElement group_exp(Group which, const Eigen::Vector3d& u);

/// Matrix form of u in the algebra basis above.
Eigen::MatrixXcd algebra_matrix(Group which, const Eigen::Vector3d& u);

/// Coordinates of an algebra matrix (orthogonal projection onto the basis).
Eigen::Vector3d algebra_coordinates(Group which, const Eigen::MatrixXcd& x);

inline constexpr double kDefaultStep = 1e-4;

/// Central difference of t -> B(exp(t u)) at t = 0, in algebra coordinates.
/// Throws PreconditionError when B(1) is not 1 within 1e-10.
Eigen::Vector3d tangent_at_identity(const GroupOperator& B, Group which, const Eigen::Vector3d& u,
                                    double step = kDefaultStep);

/// Column a is tangent_at_identity(B, which, e_a).
Eigen::Matrix3d tangent_matrix(const GroupOperator& B, Group which, double step = kDefaultStep);

/// The algebra whose structure constants match algebra_matrix():
/// build_su(2) or build_so(3).
LieAlgebra group_algebra(Group which);

/// Runs is_rbo on the tangent matrix over the matching algebra.
bool tangent_is_algebra_rbo(const GroupOperator& B, Group which, double step = kDefaultStep,
                            double tol = 1e-8);

}  // namespace rbolab
