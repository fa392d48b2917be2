#include "rbolab/io.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "rbolab/errors.hpp"

namespace rbolab::io {

namespace {

std::string format17(double v) {
  if (!std::isfinite(v)) throw InputError("write_algebra: non-finite structure constant");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field \"") + key + "\"");
  return *it;
}

int positive_int(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() <= 0 || v.get<long long>() > 4096) {
    throw InputError(std::string("field \"") + key + "\" must be a positive integer");
  }
  return v.get<int>();
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw InputError("field \"" + where + "\" must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw InputError("field \"" + where + "\" must be finite");
  return d;
}

json matrix_rows(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string write_algebra(const LieAlgebra& L) {
  const int n = L.dim();
  std::string out = "{\n  \"name\": " + json(L.name()).dump() + ",\n  \"dim\": " + std::to_string(n) +
                    ",\n  \"c\": [";
  bool first = true;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out += first ? "\n    [" : ",\n    [";
      first = false;
      out += std::to_string(i) + ", " + std::to_string(j) + ", [";
      for (int k = 0; k < n; ++k) {
        if (k) out += ", ";
        out += format17(L.c(i, j, k));
      }
      out += "]]";
    }
  }
  out += first ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

json algebra_to_json(const LieAlgebra& L) { return json::parse(write_algebra(L)); }

LieAlgebra algebra_from_json(const json& j) {
  std::string name;
  if (j.is_object() && j.contains("name")) {
    if (!j["name"].is_string()) throw InputError("field \"name\" must be a string");
    name = j["name"].get<std::string>();
  }
  const int n = positive_int(j, "dim");
  const json& rows = field(j, "c");
  if (!rows.is_array()) throw InputError("field \"c\" must be an array");
  std::vector<double> c(static_cast<std::size_t>(n) * n * n, 0.0);
  std::set<std::pair<int, int>> seen;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string where = "c[" + std::to_string(r) + "]";
    const json& row = rows[r];
    if (!row.is_array() || row.size() != 3 || !row[0].is_number_integer() ||
        !row[1].is_number_integer() || !row[2].is_array()) {
      throw InputError("field \"" + where + "\" must be [i, j, [coefficients]]");
    }
    const long long i = row[0].get<long long>();
    const long long jj = row[1].get<long long>();
    if (i < 0 || jj >= n || i >= jj) {
      throw InputError("field \"" + where + "\" needs 0 <= i < j < dim");
    }
    if (!seen.emplace(static_cast<int>(i), static_cast<int>(jj)).second) {
      throw InputError("field \"" + where + "\" repeats the pair (" + std::to_string(i) + ", " +
                       std::to_string(jj) + ")");
    }
    if (row[2].size() != static_cast<std::size_t>(n)) {
      throw InputError("field \"" + where + "\" must list dim coefficients");
    }
    for (int k = 0; k < n; ++k) {
      c[(static_cast<std::size_t>(i) * n + static_cast<std::size_t>(jj)) * n + k] =
          number(row[2][static_cast<std::size_t>(k)], where);
    }
  }
  LieAlgebra L(n, std::move(c), std::move(name));
  const double jac = jacobi_residual(L);
  if (jac > kBuilderJacobiTol) {
    throw InputError("field \"c\" violates the Jacobi identity (residual " + format17(jac) + ")");
  }
  return L;
}

LieAlgebra read_algebra(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("algebra file is not valid JSON: ") + e.what());
  }
  return algebra_from_json(j);
}

json operator_to_json(const LinearOperator& B) {
  return {{"dim", B.dim()}, {"matrix", matrix_rows(B.matrix())}};
}

LinearOperator operator_from_json(const json& j) {
  const int n = positive_int(j, "dim");
  const json& rows = field(j, "matrix");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n)) {
    throw InputError("field \"matrix\" must be an array of dim rows");
  }
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    const std::string where = "matrix[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
      throw InputError("field \"" + where + "\" must have dim entries");
    }
    for (int c = 0; c < n; ++c) m(r, c) = number(row[static_cast<std::size_t>(c)], where);
  }
  return LinearOperator(std::move(m));
}

json subspace_to_json(const Subspace& S) {
  json basis = json::array();
  for (Eigen::Index k = 0; k < S.basis().cols(); ++k) {
    json v = json::array();
    for (Eigen::Index r = 0; r < S.basis().rows(); ++r) v.push_back(S.basis()(r, k));
    basis.push_back(std::move(v));
  }
  return {{"dim_ambient", S.ambient()}, {"basis", std::move(basis)}};
}

Subspace subspace_from_json(const json& j) {
  const int n = positive_int(j, "dim_ambient");
  const json& basis = field(j, "basis");
  if (!basis.is_array()) throw InputError("field \"basis\" must be an array");
  Matrix span(n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const std::string where = "basis[" + std::to_string(k) + "]";
    if (!basis[k].is_array() || basis[k].size() != static_cast<std::size_t>(n)) {
      throw InputError("field \"" + where + "\" must have dim_ambient entries");
    }
    for (int r = 0; r < n; ++r) {
      span(r, static_cast<Eigen::Index>(k)) = number(basis[k][static_cast<std::size_t>(r)], where);
    }
  }
  return Subspace::from_span(span);
}

json to_json(const RboReport& r) {
  return {{"max_residual", r.max_residual},
          {"is_rbo", r.is_rbo},
          {"worst_pair", {r.worst_pair.first, r.worst_pair.second}}};
}

json to_json(const DecompositionReport& r) {
  return {{"dim_im_B", r.dim_im_B},
          {"dim_im_Bprime", r.dim_im_Bprime},
          {"dim_sum", r.dim_sum},
          {"dim_intersection", r.dim_intersection},
          {"is_full_sum", r.is_full_sum}};
}

json clusters_to_json(const std::string& algebra, const std::vector<SolutionCluster>& clusters) {
  json list = json::array();
  for (const auto& c : clusters) {
    list.push_back({{"label", to_string(c.label)},
                    {"residual", c.residual},
                    {"hits", c.hits},
                    {"matrix", matrix_rows(c.representative.matrix())}});
  }
  return {{"algebra", algebra}, {"clusters", std::move(list)}};
}

SearchConfig config_from_json(const json& j, SearchConfig cfg) {
  if (!j.is_object()) throw InputError("search config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    auto as_int = [&](const char* what) {
      if (!value.is_number_integer()) {
        throw InputError(std::string("field \"") + what + "\" must be an integer");
      }
      return value.get<long long>();
    };
    if (key == "restarts") {
      cfg.restarts = static_cast<int>(as_int("restarts"));
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw InputError("field \"seed\" must be a nonnegative integer");
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "max_iters") {
      cfg.max_iters = static_cast<int>(as_int("max_iters"));
    } else if (key == "residual_tol") {
      cfg.residual_tol = number(value, key);
    } else if (key == "cluster_eps") {
      cfg.cluster_eps = number(value, key);
    } else if (key == "init_radius") {
      cfg.init_radius = number(value, key);
    } else if (key == "threads") {
      const long long t = as_int("threads");
      if (t < 0) throw InputError("field \"threads\" must be nonnegative");
      cfg.threads = static_cast<unsigned>(t);
    } else {
      throw InputError("unknown search config field \"" + key + "\"");
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace rbolab::io
