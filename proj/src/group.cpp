#include "rbolab/group.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/LU>

#include "rbolab/errors.hpp"
#include "rbolab/random.hpp"
#include "rbolab/rbo.hpp"

namespace rbolab {

namespace {

using Complex = std::complex<double>;

int matrix_size(Group g) { return g == Group::SU2 ? 2 : 3; }

void require_same(const GroupElement& a, const GroupElement& b, const char* what) {
  if (a.group() != b.group()) {
    throw InputError(std::string(what) + ": elements belong to different groups");
  }
}

// Pauli matrices.
Eigen::Matrix2cd pauli(int a) {
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  switch (a) {
    case 0:
      s << 0, 1, 1, 0;
      break;
    case 1:
      s << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    default:
      s << 1, 0, 0, -1;
      break;
  }
  return s;
}

Eigen::Matrix3d hat(const Eigen::Vector3d& u) {
  Eigen::Matrix3d k;
  k << 0, -u(2), u(1), u(2), 0, -u(0), -u(1), u(0), 0;
  return k;
}

}  // namespace

std::string to_string(Group g) { return g == Group::SU2 ? "su2" : "so3"; }

GroupElement::GroupElement(Group group, Eigen::MatrixXcd m, double tol)
    : group_(group), m_(std::move(m)) {
  const int d = matrix_size(group_);
  if (m_.rows() != d || m_.cols() != d) {
    throw InputError("GroupElement: wrong matrix size for " + to_string(group_));
  }
  if (invariant_defect() > tol) {
    throw InputError("GroupElement: matrix is not in " + to_string(group_));
  }
}

GroupElement GroupElement::identity(Group group) {
  const int d = matrix_size(group);
  return GroupElement(group, Eigen::MatrixXcd::Identity(d, d), Unchecked{});
}

GroupElement GroupElement::inverse() const { return GroupElement(group_, m_.adjoint(), Unchecked{}); }

double GroupElement::invariant_defect() const {
  const Eigen::Index d = m_.rows();
  double defect = (m_.adjoint() * m_ - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
  defect = std::max(defect, std::abs(m_.determinant() - Complex(1.0, 0.0)));
  if (group_ == Group::SO3) defect = std::max(defect, m_.imag().cwiseAbs().maxCoeff());
  return defect;
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  require_same(a, b, "GroupElement product");
  return GroupElement(a.group_, a.m_ * b.m_, GroupElement::Unchecked{});
}

double distance(const GroupElement& a, const GroupElement& b) {
  require_same(a, b, "distance");
  return (a.matrix() - b.matrix()).norm();
}

GroupOperator GroupOperator::trivial() {
  return GroupOperator(GroupOperatorKind::Trivial, "trivial",
                       [](const GroupElement& g) { return GroupElement::identity(g.group()); }, true);
}

GroupOperator GroupOperator::inverse() {
  return GroupOperator(GroupOperatorKind::Inverse, "inverse",
                       [](const GroupElement& g) { return g.inverse(); }, true);
}

GroupOperator GroupOperator::custom(std::string name, Map map) {
  if (!map) throw InputError("GroupOperator::custom: empty map");
  return GroupOperator(GroupOperatorKind::Custom, std::move(name), std::move(map), false);
}

GroupElement GroupOperator::operator()(const GroupElement& g) const {
  GroupElement out = map_(g);
  if (out.group() != g.group()) {
    throw InputError("GroupOperator " + name_ + ": output lies in a different group");
  }
  return out;
}

GroupOperator GroupOperator::as_verified() const {
  GroupOperator copy = *this;
  copy.verified_ = true;
  return copy;
}

std::vector<GroupElement> sample_group(Group which, int count, std::uint64_t seed) {
  if (count < 1) throw InputError("sample_group: count must be >= 1");
  Rng rng(seed);
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    const Eigen::VectorXd q = unit_sphere_sample(4, rng);
    const double a = q(0), b = q(1), c = q(2), d = q(3);
    if (which == Group::SU2) {
      Eigen::MatrixXcd m(2, 2);
      m << Complex(a, b), Complex(c, d), Complex(-c, d), Complex(a, -b);
      out.emplace_back(which, std::move(m));
    } else {
      Eigen::Matrix3d r;
      r << a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c),
          2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b),
          2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d;
      out.emplace_back(which, r.cast<Complex>());
    }
  }
  return out;
}

double group_rbo_defect(const GroupOperator& B, const GroupElement& g, const GroupElement& h) {
  require_same(g, h, "group_rbo_defect");
  const GroupElement bg = B(g);
  const GroupElement lhs = bg * B(h);
  const GroupElement rhs = B(g * bg * h * bg.inverse());
  return distance(lhs, rhs);
}

double max_group_defect(const GroupOperator& B, Group which, int pairs, std::uint64_t seed) {
  const auto samples = sample_group(which, 2 * pairs, seed);
  double worst = 0.0;
  for (int p = 0; p < pairs; ++p) {
    worst = std::max(worst, group_rbo_defect(B, samples[static_cast<std::size_t>(2 * p)],
                                             samples[static_cast<std::size_t>(2 * p + 1)]));
  }
  return worst;
}

GroupOperator certify(const GroupOperator& B, Group which, std::uint64_t seed, double tol) {
  if (B.verified()) return B;
  return max_group_defect(B, which, kCertifyPairs, seed) <= tol ? B.as_verified() : B;
}

StarProduct star_multiply(const GroupOperator& B, const GroupElement& g, const GroupElement& h) {
  require_same(g, h, "star_multiply");
  const GroupElement bg = B(g);
  return {g * bg * h * bg.inverse(), B.verified()};
}

GroupOperator tilde_operator(const GroupOperator& B) {
  return GroupOperator::custom("tilde(" + B.name() + ")", [B](const GroupElement& g) {
    const GroupElement ginv = g.inverse();
    return ginv * B(ginv);
  });
}

Eigen::MatrixXcd algebra_matrix(Group which, const Eigen::Vector3d& u) {
  if (which == Group::SO3) return hat(u).cast<Complex>();
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(2, 2);
  for (int a = 0; a < 3; ++a) x += Complex(0.0, -0.5 * u(a)) * pauli(a);
  return x;
}

Eigen::Vector3d algebra_coordinates(Group which, const Eigen::MatrixXcd& x) {
  Eigen::Vector3d out;
  for (int a = 0; a < 3; ++a) {
    const Eigen::MatrixXcd basis = algebra_matrix(which, Eigen::Vector3d::Unit(a));
    const double norm2 = (basis.adjoint() * basis).trace().real();
    out(a) = (basis.adjoint() * x).trace().real() / norm2;
  }
  return out;
}

GroupElement group_exp(Group which, const Eigen::Vector3d& u) {
  const double theta = u.norm();
  if (which == Group::SU2) {
    // exp(-(i/2) theta n.sigma) = cos(theta/2) I - i sin(theta/2) n.sigma
    Eigen::MatrixXcd m = std::cos(0.5 * theta) * Eigen::MatrixXcd::Identity(2, 2);
    if (theta > 0.0) {
      const double s = std::sin(0.5 * theta) / theta;
      for (int a = 0; a < 3; ++a) m += Complex(0.0, -s * u(a)) * pauli(a);
    }
    return GroupElement(which, std::move(m));
  }
  const Eigen::Matrix3d k = hat(u);
  Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
  if (theta > 0.0) {
    const double half = std::sin(0.5 * theta) / theta;
    r += (std::sin(theta) / theta) * k + (2.0 * half * half) * (k * k);
  }
  return GroupElement(which, r.cast<Complex>());
}

Eigen::Vector3d tangent_at_identity(const GroupOperator& B, Group which, const Eigen::Vector3d& u,
                                    double step) {
  if (!(step > 0.0)) throw InputError("tangent_at_identity: step must be positive");
  const GroupElement one = GroupElement::identity(which);
  if (distance(B(one), one) > 1e-10) {
    throw PreconditionError("tangent_at_identity: operator does not fix the identity");
  }
  const Eigen::MatrixXcd forward = B(group_exp(which, step * u)).matrix();
  const Eigen::MatrixXcd backward = B(group_exp(which, -step * u)).matrix();
  return algebra_coordinates(which, (forward - backward) / (2.0 * step));
}

Eigen::Matrix3d tangent_matrix(const GroupOperator& B, Group which, double step) {
  Eigen::Matrix3d t;
  for (int a = 0; a < 3; ++a) t.col(a) = tangent_at_identity(B, which, Eigen::Vector3d::Unit(a), step);
  return t;
}

LieAlgebra group_algebra(Group which) { return which == Group::SU2 ? build_su(2) : build_so(3); }

bool tangent_is_algebra_rbo(const GroupOperator& B, Group which, double step, double tol) {
  const Eigen::Matrix3d t = tangent_matrix(B, which, step);
  return is_rbo(group_algebra(which), LinearOperator(t), tol).is_rbo;
}

}  // namespace rbolab
