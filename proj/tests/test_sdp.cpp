#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "lasgap/gram.hpp"
#include "lasgap/graph.hpp"
#include "lasgap/lifted_sdp.hpp"
#include "lasgap/sdp/problem.hpp"
#include "lasgap/sdp/sdpa.hpp"
#include "lasgap/sdp/solve.hpp"

using namespace lasgap;
using namespace lasgap::sdp;

namespace {

SdpProblem trace_problem(int size) {
  SdpProblem p;
  p.blocks.push_back({size, false});
  for (int i = 0; i < size; ++i) {
    SdpRow row;
    row.terms.push_back({0, i, i, 1.0});
    row.rhs = 1.0;
    p.constraints.push_back(row);
  }
  for (int i = 0; i < size; ++i) p.objective.push_back({0, i, i, 1.0});
  p.sense = Sense::minimize;
  return p;
}

double recompute_primal_residual(const SdpProblem& p, const SdpSolution& s) {
  double worst = 0.0;
  for (const auto& row : p.constraints) {
    double val = 0.0;
    for (const auto& t : row.terms) {
      const double xe = s.entry(t.block, t.i, t.j);
      val += t.coeff * (t.i == t.j ? xe : 2.0 * xe);
    }
    worst = std::max(worst, std::abs(val - row.rhs));
  }
  return worst;
}

}  // namespace

TEST_CASE("solve min trace with unit diagonal") {
  auto p = trace_problem(3);
  auto sol = solve(p, 1e-7, 200000);
  CHECK(sol.status == SolveStatus::converged);
  CHECK(sol.objective == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(sol.primal_residual <= 1e-7);
  for (double e : sol.min_eigenvalues) CHECK(e >= -1e-7);
}

TEST_CASE("reported residuals match independent recomputation") {
  auto p = trace_problem(4);
  p.objective.push_back({0, 0, 1, 1.0});
  auto sol = solve(p, 1e-7, 200000);
  double recomputed = recompute_primal_residual(p, sol);
  CHECK(std::abs(recomputed - sol.primal_residual) <=
        1e-14 * std::max(1.0, std::abs(recomputed)));
}

TEST_CASE("solve is deterministic") {
  auto p = trace_problem(5);
  p.objective.push_back({0, 1, 3, -2.0});
  auto a = solve(p, 1e-8, 200000);
  auto b = solve(p, 1e-8, 200000);
  CHECK(a.iterations == b.iterations);
  CHECK(a.objective == b.objective);
  CHECK(a.primal_residual == b.primal_residual);
}

TEST_CASE("infeasible toy is suspected") {
  SdpProblem p;
  p.blocks.push_back({1, false});
  SdpRow row;
  row.terms.push_back({0, 0, 0, 1.0});
  row.rhs = -1.0;
  p.constraints.push_back(row);
  SolveOptions opt;
  opt.tol = 1e-7;
  opt.max_iter = 2000;
  auto sol = solve(p, opt);
  CHECK(sol.status == SolveStatus::infeasible_suspected);
}

TEST_CASE("psi1 triangle family solves to the integral optimum") {
  auto fam = build_psi1(Graph::cycle(3), Rational(1, 3), 1);
  REQUIRE(fam.size() == 2);
  for (const auto& [tp, lifted] : fam) {
    auto p = to_sdp_problem(lifted);
    auto sol = solve(p, 1e-7, 200000);
    CHECK(sol.status == SolveStatus::converged);
    CHECK(std::abs(sol.objective - 2.0) <= 1e-6);
  }
}

TEST_CASE("psi1 single edge at half balance") {
  Graph edge(2);
  edge.add_edge(0, 1);
  auto fam = build_psi1(edge, Rational(49, 100), 1);
  REQUIRE(fam.size() == 1);
  auto sol = solve(to_sdp_problem(fam[0].second), 1e-7, 200000);
  CHECK(sol.status == SolveStatus::converged);
  CHECK(std::abs(sol.objective - 1.0) <= 1e-6);
}

TEST_CASE("psi2 small graphs") {
  Graph edge(2);
  edge.add_edge(0, 1);
  auto fam = build_psi2(edge, 1);
  REQUIRE(fam.size() == 1);
  auto sol = solve(to_sdp_problem(fam[0].second), 1e-7, 200000);
  CHECK(sol.status == SolveStatus::converged);
  CHECK(std::abs(sol.objective - 1.0) <= 1e-6);

  auto fam3 = build_psi2(Graph::path(3), 1);
  REQUIRE(fam3.size() == 1);
  auto sol3 = solve(to_sdp_problem(fam3[0].second), 1e-7, 200000);
  CHECK(sol3.status == SolveStatus::converged);
  CHECK(sol3.objective <= 0.5 + 1e-6);
}

TEST_CASE("balanced min cut on 4-cycle via hard equality plus certificate route") {
  Graph c4 = Graph::cycle(4);
  BinaryProgram prog;
  prog.n = 4;
  std::vector<std::pair<uint32_t, uint32_t>> edges(c4.edges.begin(), c4.edges.end());
  prog.objective = MultilinearPoly::cut_polynomial(4, edges);
  prog.constraint = MultilinearPoly::balance_polynomial(4, Rational(2));
  prog.sense = Sense::minimize;

  auto lifted = build_lifted_sdp(prog, 2);
  add_moment_equalities(lifted, prog.constraint, "balance ");
  auto p = to_sdp_problem(lifted);
  auto sol = solve(p, 1e-7, 200000);
  CHECK(sol.status == SolveStatus::converged);
  // brute force over the 2^4 assignments with exactly two ones: min cut = 2
  CHECK(std::abs(sol.objective - 2.0) <= 1e-5);

  auto y = extract_moments(lifted, sol);
  auto gram = gram_from_moments(y, 1, 1e-5);
  auto cert = certify_lift(gram, prog.constraint, 1e-3);
  CHECK(cert.accepted);
  CHECK(std::abs(cert.delta) <= 1e-3);
}

TEST_CASE("rank-1 feasible point bounds the solved minimum") {
  // feasibility region contains the balanced cut x = (1,0,1,0) of the 4-cycle
  auto fam = build_psi1(Graph::cycle(4), Rational(1, 2), 1);
  REQUIRE(fam.size() == 1);
  auto p = to_sdp_problem(fam[0].second);
  const double tol = 1e-7;
  auto sol = solve(p, tol, 200000);
  CHECK(sol.status == SolveStatus::converged);
  // the rank-1 point (1,0,1,0) has objective 4; the relaxation stays below it
  CHECK(sol.objective <= 4.0 + 10 * tol);
}

TEST_CASE("psd projection") {
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(3, 3);
  CHECK((psd_project(id) - id).norm() == doctest::Approx(0.0).epsilon(1e-14));

  Eigen::MatrixXd d(2, 2);
  d << 1, 0, 0, -1;
  Eigen::MatrixXd want(2, 2);
  want << 1, 0, 0, 0;
  CHECK((psd_project(d) - want).norm() <= 1e-12);

  Eigen::MatrixXd nonsym(2, 2);
  nonsym << 1, 2, 3, 4;
  CHECK_THROWS(psd_project(nonsym));

  // sampled optimality: projection is no farther than random PSD matrices
  Eigen::MatrixXd a(4, 4);
  std::mt19937_64 gen(123);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      a(i, j) = unif(gen);
      a(j, i) = a(i, j);
    }
  }
  Eigen::MatrixXd proj = psd_project(a);
  double best = (a - proj).norm();
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd b(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) b(i, j) = unif(gen);
    }
    Eigen::MatrixXd psd = b * b.transpose();
    CHECK(best <= (a - psd).norm() + 1e-12);
  }
}

TEST_CASE("sdpa export format for the smallest problem") {
  SdpProblem p;
  p.blocks.push_back({1, false});
  SdpRow row;
  row.terms.push_back({0, 0, 0, 1.0});
  row.rhs = 1.0;
  p.constraints.push_back(row);
  p.objective.push_back({0, 0, 0, 1.0});
  std::string text = export_sdpa_string(p);

  std::istringstream lines(text);
  std::vector<std::string> all;
  std::string line;
  while (std::getline(lines, line)) all.push_back(line);
  REQUIRE(all.size() == 6);
  CHECK(all[0] == "1");
  CHECK(all[1] == "1");
  CHECK(all[2] == "1");
  // entry lines: objective (constraint 0) then the single constraint
  CHECK(all[4].substr(0, 8) == "0 1 1 1 ");
  CHECK(all[5].substr(0, 8) == "1 1 1 1 ");
}

TEST_CASE("sdpa round-trip is identity on canonical forms") {
  auto fam = build_psi1([] {
    Graph edge(2);
    edge.add_edge(0, 1);
    return edge;
  }(), Rational(49, 100), 1);
  REQUIRE(fam.size() == 1);
  auto p = to_sdp_problem(fam[0].second);
  auto back = parse_sdpa_string(export_sdpa_string(p));
  CHECK(canonical_equal(p, back));

  auto trace = trace_problem(3);
  trace.sense = Sense::maximize;
  auto back2 = parse_sdpa_string(export_sdpa_string(trace));
  CHECK(canonical_equal(trace, back2));
}

TEST_CASE("sdpa export rejects malformed problems") {
  SdpProblem p;
  p.blocks.push_back({2, false});
  SdpRow row;
  row.rhs = 1.0;
  p.constraints.push_back(row);  // empty row
  std::ostringstream sink;
  CHECK_THROWS(export_sdpa(p, sink));

  SdpProblem q;
  q.blocks.push_back({2, true});
  SdpRow r2;
  r2.terms.push_back({0, 0, 1, 1.0});  // off-diagonal entry in diagonal block
  r2.rhs = 0.0;
  q.constraints.push_back(r2);
  std::ostringstream sink2;
  CHECK_THROWS(export_sdpa(q, sink2));
}

TEST_CASE("diagonal blocks participate in solves") {
  // min x + y s.t. x - y = 1 with (x, y) on the diagonal of a 2-entry diag block
  SdpProblem p;
  p.blocks.push_back({2, true});
  SdpRow row;
  row.terms.push_back({0, 0, 0, 1.0});
  row.terms.push_back({0, 1, 1, -1.0});
  row.rhs = 1.0;
  p.constraints.push_back(row);
  p.objective.push_back({0, 0, 0, 1.0});
  p.objective.push_back({0, 1, 1, 1.0});
  auto sol = solve(p, 1e-8, 100000);
  CHECK(sol.status == SolveStatus::converged);
  CHECK(std::abs(sol.objective - 1.0) <= 1e-6);
  CHECK(sol.diag_blocks[0](0) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(sol.diag_blocks[0](1) == doctest::Approx(0.0).epsilon(1e-5));
}
