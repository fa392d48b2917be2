#include "rbolab/rbo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "rbolab/errors.hpp"

namespace rbolab {

namespace {

void require_match(const LieAlgebra& L, const LinearOperator& B, const char* what) {
  detail::require_dim(static_cast<std::size_t>(B.dim()), static_cast<std::size_t>(L.dim()), what);
}

}  // namespace

LinearOperator::LinearOperator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw InputError("LinearOperator: matrix must be square and nonempty");
  }
}

LinearOperator LinearOperator::zero(int dim) { return LinearOperator(Matrix::Zero(dim, dim)); }
LinearOperator LinearOperator::minus_identity(int dim) {
  return LinearOperator(-Matrix::Identity(dim, dim));
}
LinearOperator LinearOperator::identity(int dim) { return LinearOperator(Matrix::Identity(dim, dim)); }

Vector LinearOperator::operator()(const Vector& u) const {
  detail::require_dim(static_cast<std::size_t>(u.size()), static_cast<std::size_t>(dim()),
                      "LinearOperator");
  return m_ * u;
}

double LinearOperator::distance(const LinearOperator& other) const {
  detail::require_dim(static_cast<std::size_t>(other.dim()), static_cast<std::size_t>(dim()),
                      "LinearOperator::distance");
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

Vector rbo_residual(const LieAlgebra& L, const LinearOperator& B, const Vector& u,
                    const Vector& v) {
  require_match(L, B, "rbo_residual");
  const Vector bu = B(u);
  const Vector bv = B(v);
  const Vector inner = bracket(L, bu, v) + bracket(L, u, bv) + bracket(L, u, v);
  return bracket(L, bu, bv) - B(inner);
}

RboReport is_rbo(const LieAlgebra& L, const LinearOperator& B, double tol) {
  require_match(L, B, "is_rbo");
  if (!(tol > 0.0)) throw InputError("is_rbo: tol must be positive");
  const int n = L.dim();
  RboReport report;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double r =
          rbo_residual(L, B, Vector::Unit(n, i), Vector::Unit(n, j)).cwiseAbs().maxCoeff();
      if (r > report.max_residual) {
        report.max_residual = r;
        report.worst_pair = {i, j};
      }
    }
  }
  report.is_rbo = report.max_residual <= tol;
  return report;
}

LieAlgebra deformed_algebra(const LieAlgebra& L, const LinearOperator& B) {
  require_match(L, B, "deformed_algebra");
  const int n = L.dim();
  std::vector<double> c(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    const Vector ei = Vector::Unit(n, i);
    const Vector bi = B.matrix().col(i);
    for (int j = i + 1; j < n; ++j) {
      const Vector ej = Vector::Unit(n, j);
      const Vector w = bracket(L, bi, ej) + bracket(L, ei, B.matrix().col(j)) + L.basis_bracket(i, j);
      for (int k = 0; k < n; ++k) c[(static_cast<std::size_t>(i) * n + j) * n + k] = w(k);
    }
  }
  std::string name = L.name().empty() ? std::string{} : L.name() + "_deformed";
  return LieAlgebra(n, std::move(c), std::move(name));
}

LinearOperator companion(const LinearOperator& B) {
  return LinearOperator(-Matrix::Identity(B.dim(), B.dim()) - B.matrix());
}

namespace {

struct SplitSpaces {
  Subspace image;
  Subspace kernel;
};

SplitSpaces svd_spaces(const Matrix& m, double tol) {
  const int n = static_cast<int>(m.rows());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double cutoff = tol * s(0);
  int rank = 0;
  if (s(0) > 0.0) {
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      if (s(k) > cutoff) ++rank;
    }
  }
  return {Subspace::from_span(svd.matrixU().leftCols(rank)),
          Subspace::from_span(svd.matrixV().rightCols(n - rank))};
}

}  // namespace

Subspace image_subspace(const LinearOperator& B, double tol) {
  if (!(tol > 0.0)) throw InputError("image_subspace: tol must be positive");
  return svd_spaces(B.matrix(), tol).image;
}

Subspace kernel_subspace(const LinearOperator& B, double tol) {
  if (!(tol > 0.0)) throw InputError("kernel_subspace: tol must be positive");
  return svd_spaces(B.matrix(), tol).kernel;
}

DecompositionReport decomposition_report(const LieAlgebra& L, const LinearOperator& B,
                                         double tol) {
  require_match(L, B, "decomposition_report");
  const Subspace g1 = image_subspace(B, tol);
  const Subspace g2 = image_subspace(companion(B), tol);
  DecompositionReport r;
  r.dim_im_B = g1.dim();
  r.dim_im_Bprime = g2.dim();
  r.dim_intersection = subspace_intersection(g1, g2, std::sqrt(tol)).dim();
  r.dim_sum = r.dim_im_B + r.dim_im_Bprime - r.dim_intersection;
  r.is_full_sum = r.dim_sum == L.dim();
  return r;
}

LinearOperator splitting_rbo(const LieAlgebra& L, const Subspace& S1, const Subspace& S2,
                             double tol) {
  const int n = L.dim();
  detail::require_dim(static_cast<std::size_t>(S1.ambient()), static_cast<std::size_t>(n),
                      "splitting_rbo");
  detail::require_dim(static_cast<std::size_t>(S2.ambient()), static_cast<std::size_t>(n),
                      "splitting_rbo");
  if (!is_subalgebra(L, S1, tol)) throw PreconditionError("splitting_rbo: S1 is not a subalgebra");
  if (!is_subalgebra(L, S2, tol)) throw PreconditionError("splitting_rbo: S2 is not a subalgebra");
  if (S1.dim() + S2.dim() != n) {
    throw PreconditionError("splitting_rbo: dim S1 + dim S2 must equal the algebra dimension");
  }
  if (subspace_intersection(S1, S2, std::sqrt(tol)).dim() != 0) {
    throw PreconditionError("splitting_rbo: S1 and S2 intersect; the splitting is not direct");
  }
  Matrix frame(n, n);
  frame << S1.basis(), S2.basis();
  Eigen::FullPivLU<Matrix> lu(frame);
  if (!lu.isInvertible()) throw PreconditionError("splitting_rbo: splitting is not direct");
  // v = Q1 x1 + Q2 x2; the projection onto S2 along S1 is Q2 x2.
  const Matrix coords = lu.inverse();
  const Matrix proj = S2.basis() * coords.bottomRows(S2.dim());
  LinearOperator B(-proj);
  const RboReport check = is_rbo(L, B, tol);
  if (!check.is_rbo) {
    throw std::logic_error("splitting_rbo: constructed operator failed the Rota-Baxter check (residual " +
                           std::to_string(check.max_residual) + ")");
  }
  return B;
}

Restriction restrict(const LieAlgebra& L, const LinearOperator& B, const Subspace& S, double tol) {
  require_match(L, B, "restrict");
  detail::require_dim(static_cast<std::size_t>(S.ambient()), static_cast<std::size_t>(L.dim()),
                      "restrict");
  if (S.dim() == 0) throw PreconditionError("restrict: subspace is zero");
  if (!is_subalgebra(L, S, tol)) throw PreconditionError("restrict: subspace is not a subalgebra");
  const Matrix& q = S.basis();
  const Matrix image = B.matrix() * q;
  for (Eigen::Index a = 0; a < q.cols(); ++a) {
    if (S.distance(image.col(a)) > tol) {
      throw PreconditionError("restrict: subspace is not invariant under the operator");
    }
  }
  const int k = S.dim();
  std::vector<double> c(static_cast<std::size_t>(k) * k * k, 0.0);
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      const Vector coords = q.transpose() * bracket(L, q.col(a), q.col(b));
      for (int m = 0; m < k; ++m) c[(static_cast<std::size_t>(a) * k + b) * k + m] = coords(m);
    }
  }
  return {LieAlgebra(k, std::move(c), L.name().empty() ? std::string{} : L.name() + "_restricted"),
          LinearOperator(q.transpose() * image)};
}

}  // namespace rbolab
