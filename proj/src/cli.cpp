#include "rbolab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "rbolab/errors.hpp"
#include "rbolab/group.hpp"
#include "rbolab/io.hpp"
#include "rbolab/rbo.hpp"
#include "rbolab/search.hpp"

namespace rbolab::cli {

namespace {

using io::json;

constexpr const char* kSearchNote =
    "random-restart enumeration; absence of OTHER clusters means no counterexample was found "
    "within the restart budget, not a proof";

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(origin + " is not valid JSON: " + e.what());
  }
}

// A value that is either inline JSON or a path to a JSON file.
json json_argument(const std::string& value, const std::string& flag) {
  if (!value.empty() && (value.front() == '{' || value.front() == '[')) {
    return parse_json(value, flag);
  }
  return parse_json(slurp(value), "\"" + value + "\"");
}

LieAlgebra load_algebra(const std::string& arg) {
  if (arg.empty()) throw InputError("--algebra is required");
  if (arg.front() == '@') return io::read_algebra(slurp(arg.substr(1)));
  return builtin_algebra(arg);
}

LinearOperator load_operator(const std::string& arg, int dim) {
  if (arg.empty()) throw InputError("--operator is required");
  if (arg == "zero") return LinearOperator::zero(dim);
  if (arg == "minus_id") return LinearOperator::minus_identity(dim);
  if (arg == "identity") return LinearOperator::identity(dim);
  LinearOperator B = io::operator_from_json(json_argument(arg, "--operator"));
  if (B.dim() != dim) {
    throw InputError("field \"dim\" of the operator (" + std::to_string(B.dim()) +
                     ") does not match the algebra dimension (" + std::to_string(dim) + ")");
  }
  return B;
}

GroupOperator group_operator(const std::string& name) {
  if (name == "trivial") return GroupOperator::trivial();
  if (name == "inverse") return GroupOperator::inverse();
  if (name == "identity") {
    return GroupOperator::custom("identity", [](const GroupElement& g) { return g; });
  }
  if (name == "tilde-trivial") return tilde_operator(GroupOperator::trivial());
  if (name == "tilde-inverse") return tilde_operator(GroupOperator::inverse());
  throw InputError("unknown group operator \"" + name +
                   "\" (expected trivial, inverse, identity, tilde-trivial, tilde-inverse)");
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

struct Options {
  std::string algebra;
  std::string op;
  double tol = 1e-8;
  int restarts = 200;
  std::uint64_t seed = 0;
  double init_radius = 2.0;
  double cluster_eps = 1e-4;
  int max_iters = 500;
  unsigned threads = 0;
  std::string config;
  std::string group = "su2";
  int pairs = 10000;
  double step = kDefaultStep;
  std::string s1;
  std::string s2;
};

SearchConfig search_config(const Options& o, const CLI::App& sub) {
  SearchConfig cfg;
  if (!o.config.empty()) cfg = io::config_from_json(json_argument(o.config, "--config"));
  auto given = [&](const char* flag) { return sub.count(flag) > 0; };
  if (given("--restarts")) cfg.restarts = o.restarts;
  if (given("--seed")) cfg.seed = o.seed;
  if (given("--init-radius")) cfg.init_radius = o.init_radius;
  if (given("--cluster-eps")) cfg.cluster_eps = o.cluster_eps;
  if (given("--tol")) cfg.residual_tol = o.tol;
  if (given("--max-iters")) cfg.max_iters = o.max_iters;
  if (given("--threads")) cfg.threads = o.threads;
  cfg.validate();
  return cfg;
}

std::string registry_text() {
  std::string s;
  for (const auto& n : builtin_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"so3", "so4", "so5", "su2", "su3", "sl2R", "so3+so3"};
  return names;
}

LieAlgebra builtin_algebra(const std::string& name) {
  if (name == "so3") return build_so(3);
  if (name == "so4") return build_so(4);
  if (name == "so5") return build_so(5);
  if (name == "su2") return build_su(2);
  if (name == "su3") return build_su(3);
  if (name == "sl2R") return build_sl2R();
  if (name == "so3+so3") return direct_sum(build_so(3), build_so(3));
  throw InputError("unknown algebra \"" + name + "\"; builtins: " + registry_text());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rota-Baxter operators of weight 1 on real Lie algebras, plus a SU(2)/SO(3) "
               "group harness.\nBuiltin algebras: " +
               registry_text() + "; use @file.json for an algebra file."};
  app.name("rbolab");
  app.require_subcommand(1);
  Options o;

  auto add_algebra = [&](CLI::App* s) {
    s->add_option("--algebra", o.algebra, "builtin name or @file.json")->required();
  };
  auto add_operator = [&](CLI::App* s) {
    s->add_option("--operator", o.op, "operator JSON file, inline JSON, or zero|minus_id|identity")
        ->required();
  };
  auto add_tol = [&](CLI::App* s) { s->add_option("--tol", o.tol, "tolerance")->capture_default_str(); };
  auto add_search = [&](CLI::App* s) {
    s->add_option("--restarts", o.restarts, "random restarts")->capture_default_str();
    s->add_option("--seed", o.seed, "base seed; restart r uses seed + r")->capture_default_str();
    s->add_option("--init-radius", o.init_radius, "entrywise initialization range")
        ->capture_default_str();
    s->add_option("--cluster-eps", o.cluster_eps, "max-entry distance for merging solutions")
        ->capture_default_str();
    s->add_option("--max-iters", o.max_iters, "Levenberg-Marquardt iteration cap")->capture_default_str();
    s->add_option("--threads", o.threads, "worker threads (0 = all cores)")->capture_default_str();
    s->add_option("--config", o.config, "search config JSON (file or inline); flags override it");
    s->add_option("--tol", o.tol, "residual tolerance for accepting a solution")->capture_default_str();
  };

  auto* info = app.add_subcommand("algebra-info", "Jacobi, Killing form, rank and simplicity diagnostics");
  add_algebra(info);
  info->add_option("--seed", o.seed, "seed for randomized diagnostics")->capture_default_str();
  auto* verify = app.add_subcommand("verify", "check the weight-1 Rota-Baxter identity");
  add_algebra(verify);
  add_operator(verify);
  add_tol(verify);
  auto* deform = app.add_subcommand("deform", "structure constants of the deformed bracket");
  add_algebra(deform);
  add_operator(deform);
  add_tol(deform);
  auto* comp = app.add_subcommand("companion", "the companion operator -I - B");
  add_algebra(comp);
  add_operator(comp);
  add_tol(comp);
  auto* decomp = app.add_subcommand("decompose", "image decomposition of B and its companion");
  add_algebra(decomp);
  add_operator(decomp);
  add_tol(decomp);
  auto* split = app.add_subcommand("split", "minus the projection onto S2 along S1");
  add_algebra(split);
  split->add_option("--s1", o.s1, "subspace JSON (file or inline)")->required();
  split->add_option("--s2", o.s2, "subspace JSON (file or inline)")->required();
  add_tol(split);
  auto* search = app.add_subcommand("search", "random-restart enumeration of Rota-Baxter operators");
  add_algebra(search);
  add_search(search);
  auto* classify = app.add_subcommand("classify", "search on a compact simple algebra");
  add_algebra(classify);
  add_search(classify);
  auto* group = app.add_subcommand("group-check", "group-level axiom and tangent map on SU(2)/SO(3)");
  group->add_option("--group", o.group, "su2 or so3")->check(CLI::IsMember({"su2", "so3"}))->capture_default_str();
  group->add_option("--operator", o.op, "trivial, inverse, identity, tilde-trivial, tilde-inverse")
      ->required();
  group->add_option("--pairs", o.pairs, "random pairs for the axiom check")->capture_default_str();
  group->add_option("--seed", o.seed, "sampling seed")->capture_default_str();
  group->add_option("--step", o.step, "finite-difference step")->capture_default_str();
  add_tol(group);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kInputError;
  }

  try {
    json result;
    int code = kOk;
    if (*info) {
      const LieAlgebra L = load_algebra(o.algebra);
      const Matrix K = killing_form(L);
      result = {{"name", L.name()},
                {"dim", L.dim()},
                {"jacobi_residual", jacobi_residual(L)},
                {"killing_form", matrix_json(K)},
                {"killing_negative_definite", is_negative_definite(K, kEigenTol)},
                {"rank", rank_estimate(L, 32, o.seed)},
                {"simple", is_simple_heuristic(L, 16, o.seed, kIdentityTol)},
                {"algebra", io::algebra_to_json(L)}};
    } else if (*verify) {
      const LieAlgebra L = load_algebra(o.algebra);
      const RboReport r = is_rbo(L, load_operator(o.op, L.dim()), o.tol);
      result = io::to_json(r);
      if (!r.is_rbo) code = kVerificationFailed;
    } else if (*deform) {
      const LieAlgebra L = load_algebra(o.algebra);
      const LieAlgebra D = deformed_algebra(L, load_operator(o.op, L.dim()));
      const double jac = jacobi_residual(D);
      result = {{"algebra", io::algebra_to_json(D)},
                {"jacobi_residual", jac},
                {"is_lie_algebra", jac <= o.tol}};
    } else if (*comp) {
      const LieAlgebra L = load_algebra(o.algebra);
      const LinearOperator C = companion(load_operator(o.op, L.dim()));
      result = io::operator_to_json(C);
      result["rbo"] = io::to_json(is_rbo(L, C, o.tol));
    } else if (*decomp) {
      const LieAlgebra L = load_algebra(o.algebra);
      result = io::to_json(decomposition_report(L, load_operator(o.op, L.dim()), o.tol));
    } else if (*split) {
      const LieAlgebra L = load_algebra(o.algebra);
      const Subspace S1 = io::subspace_from_json(json_argument(o.s1, "--s1"));
      const Subspace S2 = io::subspace_from_json(json_argument(o.s2, "--s2"));
      const LinearOperator B = splitting_rbo(L, S1, S2, o.tol);
      result = io::operator_to_json(B);
      result["rbo"] = io::to_json(is_rbo(L, B, o.tol));
    } else if (*search) {
      const LieAlgebra L = load_algebra(o.algebra);
      const SearchConfig cfg = search_config(o, *search);
      result = io::clusters_to_json(L.name(), search_all(L, cfg));
      result["restarts"] = cfg.restarts;
      result["certified"] = false;
      result["note"] = kSearchNote;
    } else if (*classify) {
      const LieAlgebra L = load_algebra(o.algebra);
      const SearchConfig cfg = search_config(o, *classify);
      const Classification c = classify_compact_simple(L, cfg);
      result = io::clusters_to_json(L.name(), c.clusters);
      result["only_trivial"] = c.only_trivial;
      result["restarts"] = cfg.restarts;
      result["certified"] = false;
      result["note"] = kSearchNote;
      if (!c.only_trivial) code = kVerificationFailed;
    } else if (*group) {
      if (o.pairs < 1) throw InputError("--pairs must be >= 1");
      const Group which = o.group == "su2" ? Group::SU2 : Group::SO3;
      const GroupOperator B = group_operator(o.op);
      const double defect = max_group_defect(B, which, o.pairs, o.seed);
      const Eigen::Matrix3d t = tangent_matrix(B, which, o.step);
      result = {{"group", o.group},
                {"operator", o.op},
                {"pairs", o.pairs},
                {"max_defect", defect},
                {"tangent_matrix", matrix_json(t)},
                {"tangent_is_rbo", is_rbo(group_algebra(which), LinearOperator(t), o.tol).is_rbo}};
      if (defect > o.tol) code = kVerificationFailed;
    }
    out << result.dump(2) << '\n';
    return code;
  } catch (const InputError& e) {
    err << "rbolab: " << e.what() << '\n';
    return kInputError;
  } catch (const PreconditionError& e) {
    err << "rbolab: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "rbolab: internal error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace rbolab::cli
