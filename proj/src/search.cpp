#include "rbolab/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include <Eigen/Cholesky>

#include "rbolab/errors.hpp"
#include "rbolab/random.hpp"

namespace rbolab {

void SearchConfig::validate() const {
  if (restarts < 1) throw InputError("SearchConfig: restarts must be >= 1");
  if (max_iters < 1) throw InputError("SearchConfig: max_iters must be >= 1");
  if (!(residual_tol > 0.0)) throw InputError("SearchConfig: residual_tol must be positive");
  if (!(cluster_eps > residual_tol)) {
    throw InputError("SearchConfig: cluster_eps must exceed residual_tol");
  }
  if (!(init_radius > 0.0)) throw InputError("SearchConfig: init_radius must be positive");
}

std::string to_string(ClusterLabel label) {
  switch (label) {
    case ClusterLabel::Zero:
      return "ZERO";
    case ClusterLabel::MinusId:
      return "MINUS_ID";
    case ClusterLabel::Other:
      return "OTHER";
  }
  return "OTHER";
}

Vector flatten(const LinearOperator& B) {
  const int n = B.dim();
  Vector out(static_cast<Eigen::Index>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(r * n + c) = B.matrix()(r, c);
  return out;
}

LinearOperator unflatten(const Vector& bflat, int dim) {
  detail::require_dim(static_cast<std::size_t>(bflat.size()),
                      static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), "unflatten");
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = bflat(r * dim + c);
  return LinearOperator(std::move(m));
}

Vector residual_system(const LieAlgebra& L, const Vector& bflat) {
  const int n = L.dim();
  const LinearOperator B = unflatten(bflat, n);
  Vector out(static_cast<Eigen::Index>(n) * n * (n - 1) / 2);
  Eigen::Index row = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out.segment(row, n) = rbo_residual(L, B, Vector::Unit(n, i), Vector::Unit(n, j));
      row += n;
    }
  }
  return out;
}

Matrix residual_jacobian(const LieAlgebra& L, const Vector& bflat) {
  const int n = L.dim();
  const Matrix b = unflatten(bflat, n).matrix();
  std::vector<Matrix> ads;
  ads.reserve(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) ads.push_back(ad(L, Vector::Unit(n, a)));
  auto adm = [&](int a) -> const Matrix& { return ads[static_cast<std::size_t>(a)]; };

  Matrix jac = Matrix::Zero(static_cast<Eigen::Index>(n) * n * (n - 1) / 2,
                            static_cast<Eigen::Index>(n) * n);
  Eigen::Index row = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vector bi = b.col(i);
      const Vector bj = b.col(j);
      // w = [b_i, e_j] + [e_i, b_j] + [e_i, e_j]
      const Vector w = -adm(j) * bi + adm(i) * bj + L.basis_bracket(i, j);
      for (int a = 0; a < n; ++a) {
        // Perturbing B(a, i) moves b_i along e_a.
        jac.block(row, a * n + i, n, 1) += adm(a) * bj - b * adm(a).col(j);
        // Perturbing B(a, j) moves b_j along e_a.
        jac.block(row, a * n + j, n, 1) += -adm(a) * bi + b * adm(a).col(i);
        // -B w picks up -w_c e_a from B(a, c).
        for (int c = 0; c < n; ++c) jac(row + a, a * n + c) -= w(c);
      }
      row += n;
    }
  }
  return jac;
}

std::optional<LinearOperator> solve_from(const LieAlgebra& L, const LinearOperator& B0,
                                         const SearchConfig& cfg) {
  detail::require_dim(static_cast<std::size_t>(B0.dim()), static_cast<std::size_t>(L.dim()),
                      "solve_from");
  const int n = L.dim();
  const Eigen::Index unknowns = static_cast<Eigen::Index>(n) * n;
  Vector x = flatten(B0);
  Vector r = residual_system(L, x);
  double damping = 1e-3;
  const double stop = cfg.residual_tol / 10.0;

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    if (r.size() == 0 || r.cwiseAbs().maxCoeff() <= stop) break;
    const Matrix jac = residual_jacobian(L, x);
    const Matrix normal = jac.transpose() * jac;
    const Vector grad = jac.transpose() * r;
    const Vector step =
        (normal + damping * Matrix::Identity(unknowns, unknowns)).ldlt().solve(-grad);
    const Vector trial = x + step;
    const Vector trial_r = residual_system(L, trial);
    if (trial_r.allFinite() && trial_r.squaredNorm() < r.squaredNorm()) {
      x = trial;
      r = trial_r;
      damping = std::max(damping / 10.0, 1e-15);
    } else {
      damping *= 10.0;
      if (damping > 1e12) break;
    }
  }
  if (!x.allFinite()) return std::nullopt;
  LinearOperator B = unflatten(x, n);
  if (!is_rbo(L, B, cfg.residual_tol).is_rbo) return std::nullopt;
  return B;
}

std::vector<SolutionCluster> search_all(const LieAlgebra& L, const SearchConfig& cfg) {
  cfg.validate();
  const int n = L.dim();
  std::vector<std::optional<LinearOperator>> found(static_cast<std::size_t>(cfg.restarts));

  auto run_one = [&](int r) {
    Rng rng(cfg.seed + static_cast<std::uint64_t>(r));
    std::uniform_real_distribution<double> uniform(-cfg.init_radius, cfg.init_radius);
    Matrix m(n, n);
    // Row-major fill so the draw order matches the flattening.
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) m(a, b) = uniform(rng);
    found[static_cast<std::size_t>(r)] = solve_from(L, LinearOperator(std::move(m)), cfg);
  };

  unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(cfg.restarts));
  if (workers <= 1) {
    for (int r = 0; r < cfg.restarts; ++r) run_one(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int r = next++; r < cfg.restarts; r = next++) run_one(r);
      });
    }
  }

  std::vector<SolutionCluster> clusters;
  const LinearOperator zero = LinearOperator::zero(n);
  const LinearOperator minus_id = LinearOperator::minus_identity(n);
  for (const auto& sol : found) {
    if (!sol) continue;
    auto it = std::find_if(clusters.begin(), clusters.end(), [&](const SolutionCluster& c) {
      return c.representative.distance(*sol) <= cfg.cluster_eps;
    });
    if (it != clusters.end()) {
      ++it->hits;
      continue;
    }
    SolutionCluster c{*sol, is_rbo(L, *sol, cfg.residual_tol).max_residual, 1, ClusterLabel::Other};
    if (sol->distance(zero) <= cfg.cluster_eps) {
      c.label = ClusterLabel::Zero;
    } else if (sol->distance(minus_id) <= cfg.cluster_eps) {
      c.label = ClusterLabel::MinusId;
    }
    clusters.push_back(std::move(c));
  }
  std::stable_sort(clusters.begin(), clusters.end(),
                   [](const SolutionCluster& a, const SolutionCluster& b) { return a.hits > b.hits; });
  return clusters;
}

Classification classify_compact_simple(const LieAlgebra& L, const SearchConfig& cfg) {
  if (!is_negative_definite(killing_form(L), kEigenTol)) {
    throw PreconditionError("Killing form not negative definite");
  }
  if (!is_simple_heuristic(L, 16, cfg.seed, kIdentityTol)) {
    throw PreconditionError("algebra is not simple");
  }
  Classification out;
  out.clusters = search_all(L, cfg);
  out.only_trivial = std::all_of(out.clusters.begin(), out.clusters.end(), [](const SolutionCluster& c) {
    return c.label != ClusterLabel::Other;
  });
  return out;
}

}  // namespace rbolab
