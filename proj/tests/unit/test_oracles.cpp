#include <doctest.h>

#include "catiso/errors.hpp"
#include "catiso/oracles.hpp"
#include "testkit.hpp"

using namespace catiso;

namespace {

Graph four_cycle() { return Graph{4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {}}; }

Digraph chain3() { return Digraph{3, {{0, 1}, {1, 2}}}; }

Weights random_weights(testkit::Rng& rng, std::size_t m, std::size_t top) {
  Weights w(m);
  for (auto& x : w) x = static_cast<std::int64_t>(testkit::uniform(rng, 0, top));
  return w;
}

}  // namespace

TEST_SUITE("poly") {
  TEST_CASE("arithmetic") {
    const auto p = Polynomial::monomial(2, 3) + Polynomial(BigInt(1));
    const auto q = Polynomial::monomial(1) - Polynomial(BigInt(2));
    const auto pq = p * q;
    CHECK(pq.coefficient(3) == 3);
    CHECK(pq.coefficient(2) == -6);
    CHECK(pq.coefficient(1) == 1);
    CHECK(pq.coefficient(0) == -2);
    CHECK(pq / q == p);
    CHECK_THROWS_AS(p / q, CorruptionError);
    CHECK((p - p).is_zero());
    CHECK(p.degree() == 2);
    CHECK(p.min_degree() == 0);
    CHECK(p.evaluate(2) == 13);
    CHECK(Polynomial::from_dense({0, 0, 5}) == Polynomial::monomial(2, 5));
  }

  TEST_CASE("interpolation recovers random integer polynomials") {
    testkit::Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<BigInt> coeff(testkit::uniform(rng, 1, 9));
      for (auto& c : coeff) c = static_cast<long>(testkit::uniform(rng, 0, 40)) - 20;
      const auto p = Polynomial::from_dense(coeff);
      std::vector<BigInt> values;
      for (std::size_t y = 1; y <= coeff.size(); ++y) values.push_back(p.evaluate(BigInt(y)));
      CHECK(interpolate_integer_polynomial(values) == p);
    }
  }

  TEST_CASE("bareiss on integers") {
    std::vector<std::vector<BigInt>> a = {{2, 0, 1}, {1, 3, 2}, {1, 1, 2}};
    CHECK(bareiss_determinant(a) == BigInt(6));
    std::vector<std::vector<BigInt>> swap = {{0, 1}, {1, 0}};
    CHECK(bareiss_determinant(swap) == BigInt(-1));
    std::vector<std::vector<BigInt>> singular = {{1, 2}, {2, 4}};
    CHECK(bareiss_determinant(singular) == BigInt(0));
  }
}

TEST_SUITE("oracles") {
  TEST_CASE("perfect matchings of a 4-cycle") {
    const auto r = matching_relation(four_cycle());
    CHECK(enumerate_witnesses(r) == std::vector<Mask>{0b0101, 0b1010});
    CHECK(format_witness(0b0101, 4) == "1010");
  }

  TEST_CASE("arborescences of a chain") {
    const auto g = chain3();
    CHECK(enumerate_witnesses(arborescence_relation(g, 0)) == std::vector<Mask>{0b11});
    CHECK(enumerate_witnesses(arborescence_relation(g, 1)).empty());
    CHECK(matrix_tree_count(g, {2, 3}, 0) == Polynomial::monomial(5));
    CHECK(matrix_tree_count(g, {2, 3}, 0, DetMethod::Bareiss) == Polynomial::monomial(5));
    CHECK(matrix_tree_count(g, {2, 3}, 2).is_zero());
    CHECK(matrix_tree_count(g, {2, 3}, 2, DetMethod::Bareiss).is_zero());
  }

  TEST_CASE("validation") {
    CHECK_THROWS(validate(Graph{2, {{0, 2}}, {}}));
    CHECK_THROWS(validate(Digraph{2, {{1, 1}}}));
    Graph colored = four_cycle();
    colored.red = {true, false, false, false};
    CHECK_THROWS_AS(exact_matching_relation(colored, 2), PreconditionError);
    CHECK(enumerate_witnesses(exact_matching_relation(colored, 1)) == std::vector<Mask>{0b0101});
    CHECK(enumerate_witnesses(exact_matching_relation(colored, 0)) == std::vector<Mask>{0b1010});
    CHECK_THROWS_AS(arborescence_relation(chain3(), 3), PreconditionError);
  }

  TEST_CASE("relations agree with naive filters") {
    testkit::Rng rng(21);
    for (int trial = 0; trial < 60; ++trial) {
      const auto g = testkit::random_graph(rng, 2 * testkit::uniform(rng, 1, 3), 0.6, true);
      if (g.edges.size() > 14) continue;
      const auto pm = matching_relation(g);
      for (Mask y = 0; y < (Mask{1} << g.edges.size()); ++y) CHECK(pm.accepts(y) == testkit::is_pm_naive(g, y));

      const auto d = testkit::random_digraph(rng, testkit::uniform(rng, 2, 5), 0.5);
      if (d.arcs.size() > 14) continue;
      const auto arb = arborescence_relation(d, 0);
      CHECK(enumerate_witnesses(arb) == testkit::arborescences_by_parents(d, 0));
    }
    const auto k2 = k_subset_relation(4, 2);
    CHECK(enumerate_witnesses(k2).size() == 6);
  }

  TEST_CASE("matrix-tree coefficients count arborescences by weight") {
    testkit::Rng rng(8);
    for (int trial = 0; trial < 80; ++trial) {
      const auto d = testkit::random_digraph(rng, testkit::uniform(rng, 2, 5), 0.5);
      if (d.arcs.size() > 14) continue;
      const auto w = random_weights(rng, d.arcs.size(), 4);
      Polynomial expected;
      for (Mask y : testkit::arborescences_by_parents(d, 0)) {
        expected += Polynomial::monomial(static_cast<std::uint64_t>(testkit::mask_weight(y, w)));
      }
      const auto by_interp = matrix_tree_count(d, w, 0, DetMethod::Interpolation);
      const auto by_bareiss = matrix_tree_count(d, w, 0, DetMethod::Bareiss);
      CHECK(by_interp == expected);
      CHECK(by_bareiss == expected);
    }
  }

  TEST_CASE("counting oracle decides like the brute-force oracle") {
    testkit::Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
      const auto d = testkit::random_digraph(rng, testkit::uniform(rng, 2, 5), 0.55);
      if (d.arcs.empty() || d.arcs.size() > 12) continue;
      const auto m = static_cast<unsigned>(d.arcs.size());
      BruteForceOracle brute(arborescence_relation(d, 0));
      CountingOracle counting(m, [&](const Weights& w) { return matrix_tree_count(d, w, 0); });
      for (int k = 0; k < 5; ++k) {
        const auto w = random_weights(rng, m, 5);
        for (std::int64_t w0 = -1; w0 <= 5 * static_cast<std::int64_t>(m) + 1; ++w0) {
          CHECK(brute.query(w, w0) == counting.query(w, w0));
        }
      }
    }
  }

  TEST_CASE("degenerate relations") {
    BruteForceOracle empty(Relation{"none", 3, [](Mask) { return false; }});
    BruteForceOracle full(Relation{"all", 3, [](Mask) { return true; }});
    const Weights w = {4, 1, 7};
    for (std::int64_t w0 = -2; w0 <= 13; ++w0) {
      CHECK_FALSE(empty.query(w, w0));
      CHECK(full.query(w, w0) == (w0 >= 0));
    }
    CHECK(empty.queries() == 16);
  }

  TEST_CASE("monotonicity wrapper catches a non-monotone oracle") {
    struct Flaky : WeightedDecisionOracle {
      unsigned m() const override { return 1; }
      bool answer(const Weights&, std::int64_t w0) override { return w0 % 2 == 0; }
    } flaky;
    MonotonicityChecked checked(flaky, 1);
    CHECK_FALSE(checked.query({1}, 1));
    CHECK_THROWS_AS(checked.query({1}, 2), CorruptionError);
  }
}
