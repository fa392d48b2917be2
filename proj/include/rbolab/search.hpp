#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rbolab/lie_algebra.hpp"
#include "rbolab/rbo.hpp"

namespace rbolab {

struct SearchConfig {
  int restarts = 200;
  std::uint64_t seed = 0;
  int max_iters = 500;
  double residual_tol = 1e-8;
  double cluster_eps = 1e-4;
  double init_radius = 2.0;
  /// Worker threads for the restarts (0 = hardware concurrency).  Results do
  /// not depend on it.
  unsigned threads = 0;

  /// Throws InputError when the field invariants are violated.
  void validate() const;
};

enum class ClusterLabel { Zero, MinusId, Other };

std::string to_string(ClusterLabel label);

struct SolutionCluster {
  LinearOperator representative;
  double residual = 0.0;
  int hits = 0;
  ClusterLabel label = ClusterLabel::Other;
};

/// Row-major flattening: Bflat[r * n + c] = B(r, c).
Vector flatten(const LinearOperator& B);
LinearOperator unflatten(const Vector& bflat, int dim);

/// Stacked rbo_residual(L, B, e_i, e_j) for i < j in lexicographic order;
/// length n * n(n-1)/2.
Vector residual_system(const LieAlgebra& L, const Vector& bflat);

/// Exact Jacobian of residual_system with respect to Bflat.
Matrix residual_jacobian(const LieAlgebra& L, const Vector& bflat);

/// Levenberg-Marquardt from B0.  Returns an operator only if it passes is_rbo
/// at cfg.residual_tol.
std::optional<LinearOperator> solve_from(const LieAlgebra& L, const LinearOperator& B0,
                                         const SearchConfig& cfg);

/// Random-restart enumeration of the solution set.  Restart r starts from a
/// uniform matrix in [-init_radius, init_radius]^{n^2} drawn with seed
/// cfg.seed + r.  Solutions are merged greedily in restart order; clusters are
/// returned by hits, descending (ties keep discovery order).
///
/// The search is heuristic: an empty OTHER set means no counterexample was
/// found within the budget, not a proof.
std::vector<SolutionCluster> search_all(const LieAlgebra& L, const SearchConfig& cfg);

struct Classification {
  bool only_trivial = false;  ///< every cluster is ZERO or MINUS_ID
  std::vector<SolutionCluster> clusters;
};

/// Checks the compact-simple hypotheses (negative definite Killing form,
/// simplicity) and throws PreconditionError naming the failed one; then runs
/// search_all.
Classification classify_compact_simple(const LieAlgebra& L, const SearchConfig& cfg);

}  // namespace rbolab
