#include <doctest.h>

#include <cmath>
#include <vector>

#include <nlohmann/json.hpp>

#include "lasgap/gram.hpp"
#include "lasgap/graph.hpp"
#include "lasgap/lifted_sdp.hpp"
#include "lasgap/moments.hpp"
#include "lasgap/poly.hpp"
#include "lasgap/prng.hpp"
#include "lasgap/rational.hpp"
#include "lasgap/subset.hpp"

using namespace lasgap;

TEST_CASE("rational parsing and formatting") {
  CHECK(to_fraction_string(Rational(3, 6)) == "1/2");
  CHECK(to_fraction_string(Rational(-4, 2)) == "-2");
  CHECK(parse_fraction("7/3") == Rational(7, 3));
  CHECK(parse_fraction("-7") == Rational(-7));
  CHECK(!parse_fraction("1/0").has_value());
  CHECK(!parse_fraction("a/b").has_value());
  CHECK(!parse_fraction("").has_value());
  CHECK(ceil_ll(Rational(9, 2)) == 5);
  CHECK(floor_ll(Rational(9, 2)) == 4);
  CHECK(ceil_ll(Rational(-9, 2)) == -4);
  CHECK(floor_ll(Rational(-9, 2)) == -5);
  CHECK(ceil_ll(Rational(4)) == 4);
}

TEST_CASE("rng determinism and bounds") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    uint64_t va = a.below(97);
    CHECK(va == b.below(97));
    CHECK(va < 97);
  }
  Rng c(7);
  std::vector<int> counts(8, 0);
  for (int i = 0; i < 80000; ++i) ++counts[static_cast<size_t>(c.below(8))];
  for (int k = 0; k < 8; ++k) {
    CHECK(counts[static_cast<size_t>(k)] > 9200);
    CHECK(counts[static_cast<size_t>(k)] < 10800);
  }
  CHECK_THROWS(Rng(1).below(0));
  auto sample = Rng(3).sample_distinct(10, 3);
  CHECK(sample.size() == 3);
  CHECK(sample[0] < sample[1]);
  CHECK(sample[1] < sample[2]);
}

TEST_CASE("subset canonicalization") {
  CHECK(SubsetKey::canonical({2, 0, 2}, 3).vars() == std::vector<uint32_t>{0, 2});
  CHECK(SubsetKey::canonical({}, 3).empty());
  CHECK(SubsetKey::canonical({5, 1, 3}, 6).vars() == std::vector<uint32_t>{1, 3, 5});
  CHECK_THROWS(SubsetKey::canonical({3}, 3));
  SubsetKey k = SubsetKey::canonical({1, 3, 5}, 6);
  CHECK(SubsetKey::canonical(k.vars(), 6) == k);
}

TEST_CASE("subset enumeration order and counts") {
  auto s31 = enumerate_subsets(3, 1);
  REQUIRE(s31.size() == 4);
  CHECK(s31[0].empty());
  CHECK(s31[1].vars() == std::vector<uint32_t>{0});
  CHECK(s31[2].vars() == std::vector<uint32_t>{1});
  CHECK(s31[3].vars() == std::vector<uint32_t>{2});

  auto s42 = enumerate_subsets(4, 2);
  CHECK(s42.size() == 11);
  CHECK(subset_count(4, 2) == 11);
  for (size_t i = 1; i < s42.size(); ++i) {
    CHECK(s42[i - 1] < s42[i]);
  }

  auto s22 = enumerate_subsets(2, 2);
  REQUIRE(s22.size() == 4);
  CHECK(s22[3].vars() == std::vector<uint32_t>{0, 1});

  CHECK(enumerate_subsets(10, 3).size() == subset_count(10, 3));
}

TEST_CASE("poly evaluation") {
  MultilinearPoly p(2);
  p.add_term(SubsetKey::canonical({0, 1}, 2), Rational(2));
  CHECK(eval_poly(p, {1, 1}) == Rational(2));
  CHECK(eval_poly(p, {1, 0}) == Rational(0));

  MultilinearPoly zero(5);
  CHECK(eval_poly(zero, {1, 1, 1, 1, 1}) == Rational(0));

  auto path3 = MultilinearPoly::cut_polynomial(3, {{0, 1}, {1, 2}});
  CHECK(eval_poly(path3, {1, 0, 1}) == Rational(2));
  CHECK(eval_poly(path3, {0, 0, 0}) == Rational(0));
  CHECK(eval_poly(path3, {0, 1, 1}) == Rational(1));

  CHECK_THROWS(eval_poly(path3, {1, 0}));
}

TEST_CASE("cut term matches inequality indicator on all four pairs") {
  auto single = MultilinearPoly::cut_polynomial(2, {{0, 1}});
  for (uint8_t a : {0, 1}) {
    for (uint8_t b : {0, 1}) {
      CHECK(eval_poly(single, {a, b}) == Rational(a != b ? 1 : 0));
    }
  }
}

TEST_CASE("eval linearity over exhaustive points") {
  Rng rng(11);
  const uint32_t n = 6;
  MultilinearPoly p(n), q(n);
  for (int t = 0; t < 8; ++t) {
    p.add_term(SubsetKey::canonical(rng.sample_distinct(n, 2), n),
               Rational(static_cast<long long>(rng.below(9)) - 4));
    q.add_term(SubsetKey::canonical(rng.sample_distinct(n, 3), n),
               Rational(static_cast<long long>(rng.below(9)) - 4));
  }
  MultilinearPoly combo = Rational(3) * p + Rational(-2) * q;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<uint8_t> x(n);
    for (uint32_t v = 0; v < n; ++v) x[v] = (mask >> v) & 1;
    CHECK(eval_poly(combo, x) ==
          Rational(3) * eval_poly(p, x) - Rational(2) * eval_poly(q, x));
  }
}

TEST_CASE("poly multiply reduces idempotently") {
  MultilinearPoly s(2);
  s.add_term(SubsetKey::singleton(0), Rational(1));
  s.add_term(SubsetKey::singleton(1), Rational(1));
  MultilinearPoly sq = s.multiply(s);
  CHECK(sq.coeff(SubsetKey::singleton(0)) == Rational(1));
  CHECK(sq.coeff(SubsetKey::singleton(1)) == Rational(1));
  CHECK(sq.coeff(SubsetKey::canonical({0, 1}, 2)) == Rational(2));
  CHECK(sq.degree() == 2);
}

TEST_CASE("poly json round-trip") {
  auto p = MultilinearPoly::cut_polynomial(3, {{0, 1}, {1, 2}});
  p.add_term(SubsetKey::empty_set(), Rational(-5, 3));
  auto j = poly_to_json(p);
  CHECK(j.at("n") == 3);
  CHECK(poly_from_json(j) == p);
  bool found = false;
  for (const auto& t : j.at("terms")) {
    if (t.at("coeff") == "-5/3") found = true;
  }
  CHECK(found);
}

TEST_CASE("rank1 lift values") {
  auto zeros = rank1_lift({0, 0, 0}, 1);
  CHECK(zeros.at(SubsetKey::empty_set()) == Rational(1));
  CHECK(zeros.at(SubsetKey::singleton(1)) == Rational(0));

  auto ones = rank1_lift({1, 1}, 1);
  for (const auto& [k, v] : ones.values) CHECK(v == Rational(1));

  auto mixed = rank1_lift({1, 0, 1}, 2);
  CHECK(mixed.at(SubsetKey::canonical({0, 2}, 3)) == Rational(1));
  CHECK(mixed.at(SubsetKey::canonical({0, 1}, 3)) == Rational(0));
  mixed.validate();
  CHECK(mixed.values.size() == subset_count(3, 4));
}

TEST_CASE("moment matrix shapes and entries") {
  auto y = rank1_lift({1, 0}, 1);
  auto m = moment_matrix(y, 1);
  REQUIRE(m.basis.size() == 3);
  std::vector<std::vector<int>> expect = {{1, 1, 0}, {1, 1, 0}, {0, 0, 0}};
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = 0; j < 3; ++j) {
      CHECK(m.entries[i][j] == Rational(expect[i][j]));
    }
  }

  MomentVector trivial;
  trivial.n = 0;
  trivial.round = 1;
  trivial.values.emplace(SubsetKey::empty_set(), Rational(1));
  auto m0 = moment_matrix(trivial, 0);
  REQUIRE(m0.basis.size() == 1);
  CHECK(m0.entries[0][0] == Rational(1));

  auto avg = convex_combination({{Rational(1, 2), rank1_lift({0, 0}, 1)},
                                 {Rational(1, 2), rank1_lift({1, 1}, 1)}});
  auto ma = moment_matrix(avg, 1);
  Rational half(1, 2);
  CHECK(ma.entries[0][0] == Rational(1));
  CHECK(ma.entries[0][1] == half);
  CHECK(ma.entries[1][1] == half);
  CHECK(ma.entries[1][2] == half);
  CHECK(ma.entries[2][2] == half);
}

TEST_CASE("moment matrix union consistency on random averages") {
  Rng rng(5);
  const uint32_t n = 5;
  std::vector<std::pair<Rational, MomentVector>> parts;
  for (int i = 0; i < 4; ++i) {
    std::vector<uint8_t> x(n);
    for (auto& b : x) b = rng.next_bit() ? 1 : 0;
    parts.emplace_back(Rational(1, 4), rank1_lift(x, 2));
  }
  auto y = convex_combination(parts);
  auto m = moment_matrix(y, 2);
  for (size_t i = 0; i < m.basis.size(); ++i) {
    for (size_t j = 0; j < m.basis.size(); ++j) {
      CHECK(m.entries[i][j] == y.at(m.basis[i].union_with(m.basis[j])));
    }
  }
}

TEST_CASE("shift operator") {
  auto y = rank1_lift({1}, 1);
  MultilinearPoly p = MultilinearPoly::variable(1, 0);
  auto shifted = shift(p, y, 2 * y.round - p.degree());
  CHECK(shifted.at(SubsetKey::empty_set()) == Rational(1));

  MultilinearPoly one = MultilinearPoly::constant(1, Rational(1));
  auto ident = shift(one, y, 2 * y.round);
  for (const auto& [k, v] : ident) CHECK(v == y.at(k));

  // balance shift vanishes when the cut size matches the target
  const uint32_t n = 4;
  std::vector<uint8_t> x = {1, 0, 1, 0};
  auto y2 = rank1_lift(x, 2);
  auto bal = MultilinearPoly::balance_polynomial(n, Rational(2));
  auto sh = shift(bal, y2, 2 * y2.round - 1);
  for (const auto& [k, v] : sh) CHECK(v == Rational(0));
}

TEST_CASE("build_lifted_sdp shapes") {
  BinaryProgram prog;
  prog.n = 1;
  prog.objective = MultilinearPoly::variable(1, 0);
  prog.constraint = MultilinearPoly::constant(1, Rational(1));
  prog.sense = Sense::minimize;
  auto sdp = build_lifted_sdp(prog, 1);
  REQUIRE(sdp.blocks.size() == 2);
  CHECK(sdp.blocks[0].dim() == 2);
  CHECK(sdp.blocks[1].dim() == 2);
  CHECK(sdp.objective.at(SubsetKey::singleton(0)) == Rational(1));

  CHECK_THROWS(build_lifted_sdp(prog, 0));
}

TEST_CASE("psi1 family grids") {
  auto triangle = Graph::cycle(3);
  auto family = build_psi1(triangle, Rational(1, 3), 1);
  REQUIRE(family.size() == 2);
  CHECK(family[0].first == Rational(1, 3));
  CHECK(family[1].first == Rational(2, 3));
  CHECK(family[0].second.blocks[0].dim() == 4);

  Graph edge(2);
  edge.add_edge(0, 1);
  auto f2 = build_psi1(edge, Rational(1, 2) - Rational(1, 100), 1);
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].first == Rational(1, 2));

  // tau = 2/5 on a triangle: k must satisfy 6/5 <= k <= 9/5, no integer fits
  CHECK_THROWS(build_psi1(triangle, Rational(2, 5), 1));
}

TEST_CASE("psi2 family grids and scaling") {
  Graph edge(2);
  edge.add_edge(0, 1);
  auto fam = build_psi2(edge, 1);
  REQUIRE(fam.size() == 1);
  CHECK(fam[0].first == Rational(1, 2));
  // objective = (y_0 + y_1 - 2 y_01) / (1 * 1)
  CHECK(fam[0].second.objective.at(SubsetKey::singleton(0)) == Rational(1));

  auto path3 = Graph::path(3);
  auto fam3 = build_psi2(path3, 1);
  REQUIRE(fam3.size() == 1);
  CHECK(fam3[0].first == Rational(1, 3));
  CHECK(fam3[0].second.objective.at(SubsetKey::singleton(1)) == Rational(2, 2));
}

TEST_CASE("rank1 lifts satisfy lifted SDP constraints exactly") {
  for (uint32_t n : {2u, 3u, 4u, 5u}) {
    Graph g = n == 2 ? Graph::path(2) : Graph::cycle(n);
    const uint32_t r = n <= 3 ? 3 : 2;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<uint8_t> x(n);
      uint32_t size_a = 0;
      for (uint32_t v = 0; v < n; ++v) {
        x[v] = (mask >> v) & 1;
        size_a += x[v];
      }
      auto y = rank1_lift(x, r);
      if (size_a >= 1 && size_a <= n - 1) {
        auto fam = build_psi1(g, Rational(1, n), r);
        bool found = false;
        for (const auto& [tp, sdp] : fam) {
          if (tp != Rational(size_a, n)) continue;
          found = true;
          auto rep = check_moments(sdp, y);
          CHECK(rep.max_equality_violation == Rational(0));
          CHECK(rep.min_nonneg >= Rational(0));
          for (double e : rep.block_min_eigs) CHECK(e >= -1e-9);
          long long crossings = 0;
          for (const auto& [u, v] : g.edges) crossings += (x[u] != x[v]) ? 1 : 0;
          CHECK(rep.objective == Rational(crossings));
        }
        CHECK(found);
      }
    }
  }
}

TEST_CASE("gram factorization basics") {
  auto ones = gram_from_moments(rank1_lift({1, 1}, 1), 1, 1e-9);
  for (size_t i = 0; i < ones.basis.size(); ++i) {
    for (size_t j = 0; j < ones.basis.size(); ++j) {
      CHECK(ones.vectors.col(static_cast<Eigen::Index>(i))
                .dot(ones.vectors.col(static_cast<Eigen::Index>(j))) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  // orthonormal vectors from an identity Gram matrix
  auto basis = enumerate_subsets(2, 1);
  auto ident = gram_from_matrix(basis, Eigen::MatrixXd::Identity(3, 3), 1e-9);
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      CHECK(ident.vectors.col(i).dot(ident.vectors.col(j)) ==
            doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
    }
  }

  auto avg = convex_combination({{Rational(1, 2), rank1_lift({1, 1, 0, 0}, 2)},
                                 {Rational(1, 2), rank1_lift({0, 1, 1, 0}, 2)}});
  auto g = gram_from_moments(avg, 2, 1e-9);
  for (size_t i = 0; i < g.basis.size(); ++i) {
    for (size_t j = i; j < g.basis.size(); ++j) {
      double ip = g.vectors.col(static_cast<Eigen::Index>(i))
                      .dot(g.vectors.col(static_cast<Eigen::Index>(j)));
      double want = to_double(avg.at(g.basis[i].union_with(g.basis[j])));
      CHECK(std::abs(ip - want) <= 1e-10);
    }
  }

  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(3, 3);
  bad(2, 2) = -1.0;
  CHECK_THROWS(gram_from_matrix(basis, bad, 1e-9));
}

TEST_CASE("verify_vector_constraints flags injected faults") {
  auto g = gram_from_moments(rank1_lift({1, 0, 1}, 2), 2, 1e-9);
  auto clean_report = verify_vector_constraints(g, 1e-8);
  CHECK(clean_report.total_violations == 0);
  CHECK(clean_report.empty_norm_deviation <= 1e-10);

  GramSolution tampered = g;
  int idx = tampered.index_of(SubsetKey::singleton(0));
  REQUIRE(idx >= 0);
  tampered.vectors.col(idx) *= -1.0;
  auto bad_report = verify_vector_constraints(tampered, 1e-8);
  CHECK(bad_report.total_violations > 0);
  bool names_vector = false;
  for (const auto& v : bad_report.violations) {
    if (v.a == SubsetKey::singleton(0) || v.b == SubsetKey::singleton(0)) {
      names_vector = true;
    }
  }
  CHECK(names_vector);
}

TEST_CASE("certify_lift on exact data") {
  auto g = gram_from_moments(rank1_lift({1, 0, 1, 1}, 2), 2, 1e-9);

  MultilinearPoly zero(4);
  auto z = certify_lift(g, zero, 1e-9);
  CHECK(z.delta == 0.0);
  CHECK(z.residual == 0.0);
  CHECK(z.accepted);

  Rng rng(9);
  MultilinearPoly q(4);
  for (int t = 0; t < 5; ++t) {
    q.add_term(SubsetKey::canonical(rng.sample_distinct(4, 2), 4),
               Rational(static_cast<long long>(rng.below(7)) - 3));
  }
  // Factoring the moment matrix through a double eigendecomposition leaves
  // sqrt(machine epsilon) noise in directions whose eigenvalue is zero, so
  // the achievable residual floor is around 1e-7.
  auto cert = certify_lift(g, q, 1e-6);
  CHECK(cert.residual <= 1e-6);
  CHECK(cert.delta ==
        doctest::Approx(to_double(eval_poly(q, {1, 0, 1, 1}))).epsilon(1e-10));

  MultilinearPoly too_big(4);
  too_big.add_term(SubsetKey::canonical({0, 1, 2}, 4), Rational(1));
  CHECK_THROWS(certify_lift(g, too_big, 1e-9));
}

TEST_CASE("convex combination validation") {
  CHECK_THROWS(convex_combination({}));
  CHECK_THROWS(convex_combination({{Rational(1, 2), rank1_lift({1}, 1)}}));
  CHECK_THROWS(convex_combination({{Rational(-1), rank1_lift({1}, 1)},
                                   {Rational(2), rank1_lift({0}, 1)}}));
}
