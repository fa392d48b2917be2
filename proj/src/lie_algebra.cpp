#include "rbolab/lie_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "rbolab/errors.hpp"
#include "rbolab/random.hpp"

namespace rbolab {

namespace {

std::size_t cube(int n) {
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
}

int nullity(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  const double cutoff = rel_tol * std::max(1.0, s.size() ? s(0) : 0.0);
  int zero = static_cast<int>(m.cols() - s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) <= cutoff) ++zero;
  }
  return zero;
}

// Brackets every basis vector of S against every column of `with` and adds
// the results to S until nothing new appears.
Subspace bracket_closure(const LieAlgebra& L, const Subspace& S, bool ideal, double tol) {
  detail::require_dim(static_cast<std::size_t>(S.ambient()), static_cast<std::size_t>(L.dim()),
                      "closure");
  Subspace current = S;
  const int n = L.dim();
  while (true) {
    const Matrix& q = current.basis();
    const int k = current.dim();
    std::vector<Vector> extra;
    if (ideal) {
      for (int a = 0; a < k; ++a) {
        const Matrix adq = ad(L, q.col(a));
        for (int j = 0; j < n; ++j) extra.push_back(adq.col(j));
      }
    } else {
      for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) extra.push_back(bracket(L, q.col(a), q.col(b)));
      }
    }
    Matrix cat(n, k + static_cast<Eigen::Index>(extra.size()));
    cat.leftCols(k) = q;
    for (std::size_t e = 0; e < extra.size(); ++e) {
      cat.col(k + static_cast<Eigen::Index>(e)) = extra[e];
    }
    Subspace next = Subspace::from_span(cat, tol);
    if (next.dim() == k) return current;
    current = std::move(next);
  }
}

}  // namespace

LieAlgebra::LieAlgebra(int dim, std::vector<double> c, std::string name)
    : dim_(dim), c_(std::move(c)), name_(std::move(name)) {
  if (dim_ <= 0) throw InputError("LieAlgebra: dimension must be positive");
  if (c_.size() != cube(dim_)) throw InputError("LieAlgebra: tensor size must be dim^3");
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j <= i; ++j) {
      for (int k = 0; k < dim_; ++k) {
        const std::size_t lower = (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
        const std::size_t upper = (static_cast<std::size_t>(j) * dim_ + i) * dim_ + k;
        if (i == j) {
          c_[lower] = 0.0;
        } else {
          c_[lower] = -c_[upper];
        }
      }
    }
  }
}

LieAlgebra LieAlgebra::abelian(int dim, std::string name) {
  if (dim <= 0) throw InputError("abelian: dimension must be positive");
  return LieAlgebra(dim, std::vector<double>(cube(dim), 0.0), std::move(name));
}

Vector LieAlgebra::basis_bracket(int i, int j) const {
  Vector out(dim_);
  for (int k = 0; k < dim_; ++k) out(k) = c(i, j, k);
  return out;
}

Vector bracket(const LieAlgebra& L, const Vector& u, const Vector& v) {
  const int n = L.dim();
  detail::require_dim(static_cast<std::size_t>(u.size()), static_cast<std::size_t>(n), "bracket");
  detail::require_dim(static_cast<std::size_t>(v.size()), static_cast<std::size_t>(n), "bracket");
  Vector out = Vector::Zero(n);
  const double* c = L.tensor().data();
  for (int i = 0; i < n; ++i) {
    if (u(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const double w = u(i) * v(j);
      if (w == 0.0) continue;
      const double* row = c + (static_cast<std::size_t>(i) * n + j) * n;
      for (int k = 0; k < n; ++k) out(k) += w * row[k];
    }
  }
  return out;
}

Matrix ad(const LieAlgebra& L, const Vector& u) {
  const int n = L.dim();
  detail::require_dim(static_cast<std::size_t>(u.size()), static_cast<std::size_t>(n), "ad");
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (u(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) m(k, j) += u(i) * L.c(i, j, k);
    }
  }
  return m;
}

double jacobi_residual(const LieAlgebra& L) {
  const int n = L.dim();
  // [[e_i, e_j], e_k] = sum_l c(i,j,l) c(l,k,.)
  auto nested = [&](int i, int j, int k, int m) {
    double s = 0.0;
    for (int l = 0; l < n; ++l) s += L.c(i, j, l) * L.c(l, k, m);
    return s;
  };
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        for (int m = 0; m < n; ++m) {
          const double d = nested(i, j, k, m) + nested(j, k, i, m) + nested(k, i, j, m);
          worst = std::max(worst, std::abs(d));
        }
      }
    }
  }
  return worst;
}

Matrix killing_form(const LieAlgebra& L) {
  const int n = L.dim();
  std::vector<Matrix> ads;
  ads.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ads.push_back(ad(L, Vector::Unit(n, i)));
  Matrix K(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      K(i, j) = (ads[static_cast<std::size_t>(i)] * ads[static_cast<std::size_t>(j)]).trace();
      K(j, i) = K(i, j);
    }
  }
  return K;
}

bool is_negative_definite(const Matrix& K, double tol) {
  if (K.rows() != K.cols()) throw InputError("is_negative_definite: matrix is not square");
  if ((K - K.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw InputError("is_negative_definite: matrix is not symmetric within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (K + K.transpose()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff() < -tol;
}

int rank_estimate(const LieAlgebra& L, int trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("rank_estimate: trials must be >= 1");
  Rng rng(seed);
  int best = L.dim();
  for (int t = 0; t < trials; ++t) {
    const Vector x = unit_sphere_sample(L.dim(), rng);
    best = std::min(best, nullity(ad(L, x), 1e-8));
  }
  return best;
}

Subspace subalgebra_closure(const LieAlgebra& L, const Subspace& S, double tol) {
  return bracket_closure(L, S, false, tol);
}

Subspace ideal_closure(const LieAlgebra& L, const Subspace& S, double tol) {
  return bracket_closure(L, S, true, tol);
}

bool is_subalgebra(const LieAlgebra& L, const Subspace& S, double tol) {
  detail::require_dim(static_cast<std::size_t>(S.ambient()), static_cast<std::size_t>(L.dim()),
                      "is_subalgebra");
  const Matrix& q = S.basis();
  for (int a = 0; a < S.dim(); ++a) {
    for (int b = a + 1; b < S.dim(); ++b) {
      if (S.distance(bracket(L, q.col(a), q.col(b))) > tol) return false;
    }
  }
  return true;
}

namespace {

// Candidate ideals from the eigenspaces of a generic element of the
// commutant of ad(L).  The commutant is computed for two random elements,
// which generically generate a semisimple algebra.
std::vector<Subspace> commutant_split(const LieAlgebra& L, Rng& rng) {
  const int n = L.dim();
  const Eigen::Index n2 = static_cast<Eigen::Index>(n) * n;
  const Matrix id = Matrix::Identity(n, n);
  Matrix gram = Matrix::Zero(n2, n2);
  for (int rep = 0; rep < 2; ++rep) {
    const Matrix a = ad(L, unit_sphere_sample(n, rng));
    // vec(AZ - ZA) = (I (x) A - A^T (x) I) vec(Z), column-major vec.
    Matrix m = Matrix::Zero(n2, n2);
    for (int c = 0; c < n; ++c) {
      m.block(static_cast<Eigen::Index>(c) * n, static_cast<Eigen::Index>(c) * n, n, n) += a;
      for (int d = 0; d < n; ++d) {
        m.block(static_cast<Eigen::Index>(c) * n, static_cast<Eigen::Index>(d) * n, n, n) -=
            a(d, c) * id;
      }
    }
    gram.noalias() += m.transpose() * m;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  const Vector& evals = eig.eigenvalues();
  const double scale = std::max(1.0, evals.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> kernel;
  for (Eigen::Index k = 0; k < evals.size(); ++k) {
    if (evals(k) <= 1e-10 * scale) kernel.push_back(k);
  }
  if (kernel.size() < 2) return {};
  Vector coeff = gaussian_vector(static_cast<Eigen::Index>(kernel.size()), rng);
  Vector zvec = Vector::Zero(n2);
  for (std::size_t k = 0; k < kernel.size(); ++k) {
    zvec += coeff(static_cast<Eigen::Index>(k)) * eig.eigenvectors().col(kernel[k]);
  }
  const Matrix z = Eigen::Map<const Matrix>(zvec.data(), n, n);

  Eigen::EigenSolver<Matrix> zeig(z, false);
  const Eigen::VectorXcd lambdas = zeig.eigenvalues();
  const double lscale = std::max(1e-300, lambdas.cwiseAbs().maxCoeff());
  std::vector<std::complex<double>> classes;
  for (Eigen::Index k = 0; k < lambdas.size(); ++k) {
    const std::complex<double> l = lambdas(k);
    const bool seen = std::any_of(classes.begin(), classes.end(), [&](std::complex<double> c) {
      return std::abs(c - l) <= 1e-6 * lscale || std::abs(c - std::conj(l)) <= 1e-6 * lscale;
    });
    if (!seen) classes.push_back(l);
  }
  if (classes.size() < 2) return {};
  std::vector<Subspace> out;
  for (const auto& l : classes) {
    const Matrix shifted = z - l.real() * id;
    const Matrix poly = shifted * shifted + (l.imag() * l.imag()) * id;
    Eigen::JacobiSVD<Matrix> svd(poly, Eigen::ComputeFullV);
    const Vector& s = svd.singularValues();
    const double cutoff = 1e-6 * std::max(lscale * lscale, s(0));
    std::vector<Eigen::Index> cols;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      if (s(k) <= cutoff) cols.push_back(k);
    }
    Matrix span(n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      span.col(static_cast<Eigen::Index>(c)) = svd.matrixV().col(cols[c]);
    }
    out.push_back(Subspace::from_span(span));
  }
  return out;
}

}  // namespace

bool is_simple_heuristic(const LieAlgebra& L, int trials, std::uint64_t seed, double tol) {
  const int n = L.dim();
  if (n < 2) return false;
  const Matrix K = killing_form(L);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(K, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().cwiseAbs().minCoeff() <= tol) return false;

  auto proper = [&](const Subspace& seed_space) {
    if (seed_space.dim() == 0) return false;
    return ideal_closure(L, seed_space, kClosureTol).dim() < n;
  };

  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const Vector v = unit_sphere_sample(n, rng);
    if (proper(Subspace::from_span(v))) return false;
  }
  for (int i = 0; i < n; ++i) {
    if (proper(Subspace::from_span(Vector::Unit(n, i)))) return false;
  }
  for (const Subspace& candidate : commutant_split(L, rng)) {
    if (proper(candidate)) return false;
  }
  return true;
}

LieAlgebra from_matrix_basis(const std::vector<Eigen::MatrixXcd>& basis, std::string name) {
  const int n = static_cast<int>(basis.size());
  if (n == 0) throw InputError("from_matrix_basis: empty basis");
  std::vector<double> norms(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const auto& b = basis[static_cast<std::size_t>(k)];
    norms[static_cast<std::size_t>(k)] = (b.adjoint() * b).trace().real();
  }
  std::vector<double> c(cube(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& a = basis[static_cast<std::size_t>(i)];
      const auto& b = basis[static_cast<std::size_t>(j)];
      const Eigen::MatrixXcd comm = a * b - b * a;
      Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Zero(comm.rows(), comm.cols());
      for (int k = 0; k < n; ++k) {
        const auto& bk = basis[static_cast<std::size_t>(k)];
        double coef = (bk.adjoint() * comm).trace().real() / norms[static_cast<std::size_t>(k)];
        if (std::abs(coef) < 1e-15) coef = 0.0;
        c[(static_cast<std::size_t>(i) * n + j) * n + k] = coef;
        rebuilt += coef * bk;
      }
      if ((rebuilt - comm).cwiseAbs().maxCoeff() > 1e-10) {
        throw InputError("from_matrix_basis: basis is not closed under the commutator");
      }
    }
  }
  return LieAlgebra(n, std::move(c), std::move(name));
}

LieAlgebra build_so(int n) {
  if (n < 2) throw InputError("build_so: n must be >= 2");
  std::vector<Eigen::MatrixXcd> basis;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
      x(j, i) = 1.0;
      x(i, j) = -1.0;
      basis.push_back(x);
    }
  }
  return from_matrix_basis(basis, "so" + std::to_string(n));
}

LieAlgebra build_su(int n) {
  if (n < 2) throw InputError("build_su: n must be >= 2");
  using C = std::complex<double>;
  const C minus_half_i(0.0, -0.5);
  std::vector<Eigen::MatrixXcd> basis;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Eigen::MatrixXcd sym = Eigen::MatrixXcd::Zero(n, n);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      Eigen::MatrixXcd asym = Eigen::MatrixXcd::Zero(n, n);
      asym(j, k) = C(0.0, -1.0);
      asym(k, j) = C(0.0, 1.0);
      basis.push_back(minus_half_i * sym);
      basis.push_back(minus_half_i * asym);
    }
  }
  for (int l = 1; l < n; ++l) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
    const double s = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
    for (int m = 0; m < l; ++m) d(m, m) = s;
    d(l, l) = -s * l;
    basis.push_back(minus_half_i * d);
  }
  return from_matrix_basis(basis, "su" + std::to_string(n));
}

LieAlgebra build_sl2R() {
  std::vector<double> c(27, 0.0);
  auto set = [&](int i, int j, int k, double v) { c[(static_cast<std::size_t>(i) * 3 + j) * 3 + k] = v; };
  set(0, 1, 1, 2.0);   // [h, e] = 2e
  set(0, 2, 2, -2.0);  // [h, f] = -2f
  set(1, 2, 0, 1.0);   // [e, f] = h
  return LieAlgebra(3, std::move(c), "sl2R");
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  const int na = a.dim();
  const int n = na + b.dim();
  std::vector<double> c(cube(n), 0.0);
  auto at = [&](int i, int j, int k) -> double& { return c[(static_cast<std::size_t>(i) * n + j) * n + k]; };
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      for (int k = 0; k < na; ++k) at(i, j, k) = a.c(i, j, k);
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      for (int k = 0; k < b.dim(); ++k) at(na + i, na + j, na + k) = b.c(i, j, k);
  std::string name = a.name().empty() || b.name().empty() ? std::string{} : a.name() + "+" + b.name();
  return LieAlgebra(n, std::move(c), std::move(name));
}

}  // namespace rbolab
