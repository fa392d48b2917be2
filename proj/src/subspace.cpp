#include "rbolab/subspace.hpp"

#include <algorithm>

#include <Eigen/SVD>

#include "rbolab/errors.hpp"

namespace rbolab {

Subspace::Subspace(int ambient) : basis_(ambient, 0) {
  if (ambient < 0) throw InputError("Subspace: negative ambient dimension");
}

Subspace Subspace::from_span(const Eigen::MatrixXd& span, double tol) {
  const Eigen::Index n = span.rows();
  double scale = 0.0;
  for (Eigen::Index j = 0; j < span.cols(); ++j) {
    scale = std::max(scale, span.col(j).norm());
  }
  Eigen::MatrixXd q(n, span.cols());
  Eigen::Index kept = 0;
  if (scale == 0.0) return Subspace(Eigen::MatrixXd(n, 0), 0);
  for (Eigen::Index j = 0; j < span.cols(); ++j) {
    Eigen::VectorXd v = span.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < kept; ++k) {
        v -= q.col(k).dot(v) * q.col(k);
      }
    }
    const double r = v.norm();
    if (r > tol * scale) {
      q.col(kept++) = v / r;
    }
  }
  return Subspace(q.leftCols(kept), 0);
}

Subspace Subspace::full(int ambient) {
  return Subspace(Eigen::MatrixXd::Identity(ambient, ambient), 0);
}

Subspace Subspace::coordinate(int ambient, std::initializer_list<int> indices) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(ambient, static_cast<Eigen::Index>(indices.size()));
  Eigen::Index col = 0;
  for (int i : indices) {
    if (i < 0 || i >= ambient) throw InputError("Subspace::coordinate: index out of range");
    b(i, col++) = 1.0;
  }
  return from_span(b);
}

Eigen::MatrixXd Subspace::projector() const { return basis_ * basis_.transpose(); }

double Subspace::distance(const Eigen::VectorXd& v) const {
  detail::require_dim(static_cast<std::size_t>(v.size()), static_cast<std::size_t>(ambient()),
                      "Subspace::distance");
  return (v - basis_ * (basis_.transpose() * v)).norm();
}

bool Subspace::contains(const Subspace& other, double tol) const {
  detail::require_dim(static_cast<std::size_t>(other.ambient()),
                      static_cast<std::size_t>(ambient()), "Subspace::contains");
  for (Eigen::Index j = 0; j < other.basis().cols(); ++j) {
    if (distance(other.basis().col(j)) > tol) return false;
  }
  return true;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b, double tol) {
  detail::require_dim(static_cast<std::size_t>(b.ambient()), static_cast<std::size_t>(a.ambient()),
                      "subspace_sum");
  Eigen::MatrixXd cat(a.ambient(), a.dim() + b.dim());
  cat << a.basis(), b.basis();
  return Subspace::from_span(cat, tol);
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b, double tol) {
  detail::require_dim(static_cast<std::size_t>(b.ambient()), static_cast<std::size_t>(a.ambient()),
                      "subspace_intersection");
  if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient());
  const Eigen::MatrixXd& qa = a.basis();
  const Eigen::MatrixXd& qb = b.basis();
  const Eigen::MatrixXd residual = qa - qb * (qb.transpose() * qa);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual, Eigen::ComputeFullV);
  const Eigen::VectorXd& sines = svd.singularValues();
  const Eigen::MatrixXd& v = svd.matrixV();
  // Singular values cover min(rows, cols) directions; any remaining right
  // singular vectors have zero sine.
  Eigen::MatrixXd dirs(a.ambient(), 0);
  std::vector<Eigen::Index> picked;
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    const double s = k < sines.size() ? sines(k) : 0.0;
    if (s <= tol) picked.push_back(k);
  }
  dirs.resize(a.ambient(), static_cast<Eigen::Index>(picked.size()));
  for (std::size_t c = 0; c < picked.size(); ++c) {
    dirs.col(static_cast<Eigen::Index>(c)) = qa * v.col(picked[c]);
  }
  return Subspace::from_span(dirs, tol);
}

}  // namespace rbolab
