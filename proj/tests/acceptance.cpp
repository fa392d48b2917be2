// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rbolab/cli.hpp"
#include "rbolab/group.hpp"
#include "rbolab/io.hpp"
#include "rbolab/random.hpp"
#include "rbolab/search.hpp"
#include "schema_check.hpp"

using namespace rbolab;
using nlohmann::json;

namespace {

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const json& output_schema() {
  static const json s = schema::load(RBOLAB_SCHEMA_PATH);
  return s;
}

struct CliResult {
  int code;
  json out;
  std::string err;
  double seconds;
};

// Runs the CLI in-process; stdout must parse and validate whenever the command produced any.
CliResult cli(const std::vector<std::string>& args, Check& c) {
  std::ostringstream out, err;
  const auto t0 = std::chrono::steady_clock::now();
  const int code = cli::run(args, out, err);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json parsed;
  if (!out.str().empty()) {
    parsed = json::parse(out.str());
    const std::string problem = schema::check(output_schema(), output_schema(), parsed);
    c.expect(problem.empty(), args.front() + " output schema: " + problem);
  }
  return {code, parsed, err.str(), secs};
}

LinearOperator matrix_operator(const json& rows) {
  const int n = static_cast<int>(rows.size());
  Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) m(r, k) = rows[r][k].get<double>();
  return LinearOperator(m);
}

void criterion_compact_search(Check& c) {
  for (const std::string alg : {"so3", "su2"}) {
    const CliResult r =
        cli({"search", "--algebra", alg, "--restarts", "200", "--seed", "7", "--init-radius", "2"}, c);
    c.expect(r.code == 0, alg + " exit code");
    const json& clusters = r.out["clusters"];
    std::vector<std::string> labels;
    double worst = 0.0;
    for (const auto& cl : clusters) {
      labels.push_back(cl["label"].get<std::string>());
      worst = std::max(worst, cl["residual"].get<double>());
    }
    std::sort(labels.begin(), labels.end());
    c.expect(labels == std::vector<std::string>{"MINUS_ID", "ZERO"}, alg + " clusters are exactly ZERO, MINUS_ID");
    c.expect(worst <= 1e-8, alg + " residual <= 1e-8");
    c.expect(r.seconds < 60.0, alg + " runtime < 60 s");
    c.note(alg + ": " + std::to_string(clusters.size()) + " clusters, max residual " + fmt(worst) + ", " +
           fmt(r.seconds) + " s");
  }
}

void criterion_noncompact(Check& c) {
  const CliResult r = cli({"search", "--algebra", "sl2R", "--restarts", "200", "--seed", "7"}, c);
  c.expect(r.code == 0, "search exit code");
  const LieAlgebra sl2 = build_sl2R();
  int verified_other = 0;
  for (const auto& cl : r.out["clusters"]) {
    if (cl["label"] == "OTHER" && is_rbo(sl2, matrix_operator(cl["matrix"]), 1e-8).is_rbo) ++verified_other;
  }
  c.expect(verified_other >= 1, "at least one verified OTHER cluster");
  const std::string iwasawa = io::operator_to_json(fixtures::iwasawa_operator()).dump();
  const CliResult v = cli({"verify", "--algebra", "sl2R", "--operator", iwasawa, "--tol", "1e-12"}, c);
  const double res = v.out["max_residual"].get<double>();
  c.expect(v.code == 0 && res <= 1e-12, "Iwasawa operator residual <= 1e-12");
  c.note(std::to_string(verified_other) + " verified OTHER clusters; Iwasawa residual " + fmt(res));
}

void criterion_semisimple(Check& c) {
  const json first = io::subspace_to_json(Subspace::coordinate(6, {0, 1, 2}));
  const json second = io::subspace_to_json(Subspace::coordinate(6, {3, 4, 5}));
  const CliResult s = cli({"split", "--algebra", "so3+so3", "--s1", second.dump(), "--s2", first.dump()}, c);
  c.expect(s.code == 0, "split exit code");
  json op = s.out;
  op.erase("rbo");
  const CliResult v = cli({"verify", "--algebra", "so3+so3", "--operator", op.dump(), "--tol", "1e-12"}, c);
  const double res = v.out["max_residual"].get<double>();
  c.expect(v.code == 0 && res <= 1e-12, "split operator residual <= 1e-12");
  const CliResult k = cli({"classify", "--algebra", "so3+so3"}, c);
  c.expect(k.code == 2, "classify exits 2");
  c.expect(k.err.find("not simple") != std::string::npos, "classify names the simplicity hypothesis");
  c.note("split residual " + fmt(res) + "; classify exit " + std::to_string(k.code));
}

void criterion_compactness(Check& c) {
  const Matrix K = killing_form(build_so(3));
  const double dev = (K + 2.0 * Matrix::Identity(3, 3)).cwiseAbs().maxCoeff();
  c.expect(dev <= 1e-12, "Killing(so3) = -2 I");
  c.expect((K - oracle::killing_epsilon()).cwiseAbs().maxCoeff() <= 1e-12, "Killing(so3) matches epsilon oracle");
  for (const LieAlgebra& L : {build_so(3), build_so(5), build_su(2), build_su(3), build_sl2R()}) {
    const bool neg = is_negative_definite(killing_form(L), kEigenTol);
    const bool want = L.name() != "sl2R";
    c.expect(neg == want, L.name() + " negative definite = " + (want ? "true" : "false"));
    c.expect((killing_form(L) - oracle::killing_brute_force(L)).cwiseAbs().maxCoeff() <= 1e-12,
             L.name() + " Killing form matches brute-force oracle");
  }
  const std::pair<LieAlgebra, int> ranks[] = {{build_so(3), 1}, {build_su(3), 2}, {build_so(5), 2}};
  std::string summary;
  for (const auto& [L, want] : ranks) {
    const int got = rank_estimate(L, 32, 0);
    c.expect(got == want, L.name() + " rank");
    c.expect(oracle::generic_nullity(L, 8, 3) == want, L.name() + " rank oracle");
    summary += L.name() + "->" + std::to_string(got) + " ";
  }
  c.note("Killing deviation " + fmt(dev) + "; ranks " + summary);
}

void criterion_identities(Check& c) {
  const auto samples = fixtures::random_rbos(120, 2024);
  double worst_comp = 0.0, worst_jac = 0.0, worst_restrict = 0.0;
  int full = 0;
  for (const auto& s : samples) {
    c.expect(is_rbo(s.algebra, s.op, 1e-9).is_rbo, "sample is a verified RBO");
    worst_comp = std::max(worst_comp, is_rbo(s.algebra, companion(s.op)).max_residual);
    worst_jac = std::max(worst_jac, jacobi_residual(deformed_algebra(s.algebra, s.op)));
    if (decomposition_report(s.algebra, s.op).is_full_sum) ++full;
    const Restriction r = restrict(s.algebra, s.op, image_subspace(s.op));
    worst_restrict = std::max(worst_restrict, is_rbo(r.algebra, r.op).max_residual);
  }
  c.expect(worst_comp <= kIdentityTol, "companion closure");
  c.expect(worst_jac <= 1e-9, "deformed Jacobi <= 1e-9");
  c.expect(full == static_cast<int>(samples.size()), "full-sum decomposition");
  c.expect(worst_restrict <= kIdentityTol, "restriction to the image");

  // Automorphism covariance on so3: conjugation by rotations keeps 0 and -I
  // fixed operators and preserves the residual norm of arbitrary operators.
  const LieAlgebra so3 = build_so(3);
  std::mt19937_64 rng(77);
  Rng grng(78);
  double worst_cov = 0.0;
  for (int s = 0; s < 100; ++s) {
    const Matrix R = fixtures::random_rotation(rng);
    Matrix B(3, 3);
    for (int k = 0; k < 3; ++k) B.col(k) = gaussian_vector(3, grng);
    const double before = residual_system(so3, flatten(LinearOperator(B))).norm();
    const double after = residual_system(so3, flatten(LinearOperator(R * B * R.transpose()))).norm();
    worst_cov = std::max(worst_cov, std::abs(before - after) / std::max(1.0, before));
    for (const LinearOperator& fixed : {LinearOperator::zero(3), LinearOperator::minus_identity(3)}) {
      const LinearOperator conj(R * fixed.matrix() * R.transpose());
      worst_cov = std::max(worst_cov, is_rbo(so3, conj).max_residual);
      worst_cov = std::max(worst_cov, conj.distance(fixed));
    }
  }
  c.expect(worst_cov <= 1e-12, "automorphism covariance on so3");
  c.note(std::to_string(samples.size()) + " samples: companion " + fmt(worst_comp) + ", Jacobi " + fmt(worst_jac) +
         ", restriction " + fmt(worst_restrict) + ", covariance " + fmt(worst_cov));
}

void criterion_group_axiom(Check& c) {
  double inv = 0.0, triv = 0.0, assoc = 0.0, tilde = 0.0;
  for (Group g : {Group::SU2, Group::SO3}) {
    triv = std::max(triv, max_group_defect(GroupOperator::trivial(), g, 10000, 101));
    inv = std::max(inv, max_group_defect(GroupOperator::inverse(), g, 10000, 101));
    const auto s = sample_group(g, 3000, 102);
    for (const GroupOperator& B : {GroupOperator::trivial(), GroupOperator::inverse()}) {
      auto star = [&](const GroupElement& a, const GroupElement& b) { return star_multiply(B, a, b).value; };
      for (std::size_t k = 0; k + 2 < s.size(); k += 3) {
        assoc = std::max(assoc, distance(star(star(s[k], s[k + 1]), s[k + 2]), star(s[k], star(s[k + 1], s[k + 2]))));
      }
    }
    const GroupOperator t = tilde_operator(GroupOperator::inverse());
    for (const auto& e : s) tilde = std::max(tilde, distance(t(e), GroupElement::identity(g)));
  }
  c.expect(triv == 0.0, "TRIVIAL defect exactly 0");
  c.expect(inv <= 1e-12, "INVERSE defect <= 1e-12");
  c.expect(assoc <= 1e-11, "star associativity <= 1e-11");
  c.expect(tilde <= 1e-12, "tilde(INVERSE) is the identity");
  c.note("10^4 pairs per group: TRIVIAL " + fmt(triv) + ", INVERSE " + fmt(inv) + "; associativity " + fmt(assoc) +
         "; tilde " + fmt(tilde));
}

void criterion_tangent(Check& c) {
  const Eigen::Matrix3d minus = -Eigen::Matrix3d::Identity();
  double worst = 0.0, ratio_lo = 1e300, ratio_hi = 0.0;
  const GroupOperator identity_map = GroupOperator::custom("identity", [](const GroupElement& g) { return g; });
  for (Group g : {Group::SU2, Group::SO3}) {
    worst = std::max(worst, tangent_matrix(GroupOperator::trivial(), g).cwiseAbs().maxCoeff());
    double err[3];
    for (int h = 0; h < 3; ++h) {
      err[h] = (tangent_matrix(GroupOperator::inverse(), g, kDefaultStep / (1 << h)) - minus).cwiseAbs().maxCoeff();
    }
    worst = std::max(worst, err[0]);
    for (int h = 0; h < 2; ++h) {
      ratio_lo = std::min(ratio_lo, err[h] / err[h + 1]);
      ratio_hi = std::max(ratio_hi, err[h] / err[h + 1]);
    }
    c.expect(tangent_is_algebra_rbo(GroupOperator::trivial(), g), to_string(g) + " TRIVIAL tangent is an RBO");
    c.expect(tangent_is_algebra_rbo(GroupOperator::inverse(), g), to_string(g) + " INVERSE tangent is an RBO");
    c.expect(!tangent_is_algebra_rbo(identity_map, g), to_string(g) + " identity tangent is not an RBO");
  }
  c.expect(worst <= 1e-8, "tangent error <= 1e-8 at step 1e-4");
  c.expect(ratio_lo >= 3.5 && ratio_hi <= 4.5, "convergence ratio in [3.5, 4.5]");
  c.note("max error " + fmt(worst) + "; ratios in [" + fmt(ratio_lo) + ", " + fmt(ratio_hi) + "]");
}

void criterion_jacobian(Check& c) {
  Rng rng(808);
  double worst = 0.0;
  for (const LieAlgebra& L : {build_so(3), build_sl2R(), direct_sum(build_so(3), build_so(3))}) {
    const int n2 = L.dim() * L.dim();
    for (int p = 0; p < 10; ++p) {
      const Vector x = gaussian_vector(n2, rng);
      const Matrix J = residual_jacobian(L, x);
      for (int k = 0; k < n2; ++k) {
        Vector xp = x, xm = x;
        xp(k) += 1e-5;
        xm(k) -= 1e-5;
        const Vector fd = (residual_system(L, xp) - residual_system(L, xm)) / 2e-5;
        worst = std::max(worst, (J.col(k) - fd).cwiseAbs().maxCoeff());
      }
    }
  }
  c.expect(worst <= 1e-6, "Jacobian agrees with central differences");
  c.note("max deviation " + fmt(worst));
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Check&)>> criteria[] = {
      {"compact simple search finds only 0 and -id (so3, su2)", criterion_compact_search},
      {"sl2R has further operators; Iwasawa splitting verifies", criterion_noncompact},
      {"so3+so3 factor splitting verifies; classify rejects it", criterion_semisimple},
      {"Killing form, definiteness and rank diagnostics", criterion_compactness},
      {"identity suites on random verified operators", criterion_identities},
      {"group axiom, star associativity, tilde(INVERSE)", criterion_group_axiom},
      {"tangent maps at the identity", criterion_tangent},
      {"analytic residual Jacobian", criterion_jacobian},
  };
  int failures = 0, index = 0;
  for (const auto& [title, body] : criteria) {
    ++index;
    Check c;
    try {
      body(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.notes.push_back(std::string("exception: ") + e.what());
    }
    if (!c.ok) ++failures;
    std::printf("%s [%d] %s", c.ok ? "PASS" : "FAIL", index, title);
    for (const auto& n : c.notes) std::printf(" | %s", n.c_str());
    std::printf("\n");
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
