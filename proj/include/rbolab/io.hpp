#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rbolab/lie_algebra.hpp"
#include "rbolab/rbo.hpp"
#include "rbolab/search.hpp"

namespace rbolab::io {

using json = nlohmann::json;

/// Algebra file: {"name", "dim", "c": [[i, j, [coefficients]], ...]}, i < j
/// rows only.  The text writer prints every coefficient with 17 significant
/// digits so reading it back is bit-exact.
std::string write_algebra(const LieAlgebra& L);
json algebra_to_json(const LieAlgebra& L);

/// Parses and validates an algebra file (row indices, lengths, duplicates and
/// Jacobi residual <= 1e-10).  Errors are InputError naming the field.
LieAlgebra read_algebra(const std::string& text);
LieAlgebra algebra_from_json(const json& j);

/// Operator file: {"dim": n, "matrix": [[row], ...]}.  Extra keys are ignored.
json operator_to_json(const LinearOperator& B);
LinearOperator operator_from_json(const json& j);

/// Subspace file: {"dim_ambient": n, "basis": [[vector], ...]}; the vectors
/// are orthonormalized on load.
json subspace_to_json(const Subspace& S);
Subspace subspace_from_json(const json& j);

json to_json(const RboReport& r);
json to_json(const DecompositionReport& r);
json clusters_to_json(const std::string& algebra, const std::vector<SolutionCluster>& clusters);

/// Fields named as in SearchConfig; missing keys keep their defaults,
/// unknown keys are rejected.
SearchConfig config_from_json(const json& j, SearchConfig base = {});

}  // namespace rbolab::io
