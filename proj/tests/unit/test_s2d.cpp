#include <doctest.h>

#include "catiso/errors.hpp"
#include "catiso/s2d.hpp"
#include "testkit.hpp"

using namespace catiso;

namespace {

Relation exactly(unsigned m, unsigned k) { return k_subset_relation(m, k); }

Relation only(unsigned m, std::vector<Mask> accepted) {
  return {"fixed", m, [accepted](Mask y) { return std::find(accepted.begin(), accepted.end(), y) != accepted.end(); }};
}

// Tie-free random weights are not needed: these draw from a small range on purpose.
Weights random_weights(testkit::Rng& rng, unsigned m, std::int64_t hi) {
  Weights w(m);
  for (auto& x : w) x = static_cast<std::int64_t>(testkit::uniform(rng, 1, static_cast<std::size_t>(hi)));
  return w;
}

}  // namespace

TEST_SUITE("s2d") {
  TEST_CASE("layout") {
    const auto layout = weight_tape_layout(8, 16);
    CHECK(layout.unit_bits == 3);
    CHECK(layout.entry_bits() == 6);
    CHECK(layout.block_bits() == 48);
    CHECK(layout.compressed_bits() == 45);
    CHECK(layout.max_entry() == 64);
    CHECK(default_weight_count(8) == 16);
    CHECK(weight_tape_layout(1, 1).unit_bits == 1);
    CHECK_THROWS_AS(weight_tape_layout(0, 4), ConfigError);
    CHECK_THROWS_AS(weight_tape_layout(25, 4), LimitError);
  }

  TEST_CASE("weights encode as raw + 1") {
    const auto layout = weight_tape_layout(4, 1);
    const Weights w = {1, 16, 7, 3};
    const Bits bits = encode_weights(layout, w);
    CHECK(format_bits(bits) == "0000" "1111" "0110" "0010");
    CHECK(decode_weights(layout, bits) == w);
    CHECK(decode_weights(layout, Bits(16, false)) == Weights(4, 1));
    CHECK_THROWS_AS(encode_weights(layout, {0, 1, 1, 1}), PreconditionError);
    CHECK_THROWS_AS(encode_weights(layout, {17, 1, 1, 1}), PreconditionError);
  }

  TEST_CASE("compressed form round trip") {
    const auto layout = weight_tape_layout(4, 1);
    const auto cw = compress_weight({5, 6, 7, 8}, 2);
    CHECK(cw.remaining == Weights{5, 6, 8});
    const Bits payload = encode_compressed(layout, cw);
    CHECK(payload.size() == layout.compressed_bits());
    const auto back = decode_compressed(layout, payload);
    CHECK(back.i0 == 2);
    CHECK(back.remaining == cw.remaining);
  }

  TEST_CASE("find_wmin examples") {
    BruteForceOracle none(only(3, {}));
    CHECK_FALSE(find_wmin(none, {1, 2, 3}).has_value());
    BruteForceOracle two(exactly(3, 2));
    CHECK(find_wmin(two, {1, 2, 3}) == 3);
    CHECK(find_wmin(two, {0, 0, 0}) == 0);
    CHECK(search_cap({1, 2, 3}) == 27);
    CHECK(search_cap({100, 2, 3}) == 105);
  }

  TEST_CASE("find_threshold examples") {
    BruteForceOracle one(exactly(3, 1));
    CHECK(find_threshold(one, {1, 1, 2}, 1) == std::optional<std::size_t>(0));
    CHECK_FALSE(find_threshold(one, {1, 2, 3}, 1).has_value());
    BruteForceOracle single(only(3, {0b101}));
    testkit::Rng rng(1);
    for (int i = 0; i < 20; ++i) {
      const auto w = random_weights(rng, 3, 4);
      CHECK_FALSE(find_threshold(single, w, *find_wmin(single, w)).has_value());
    }
  }

  TEST_CASE("extract_witness examples") {
    const auto r = only(3, {0b101, 0b110});
    BruteForceOracle oracle(r);
    // Element order: bit e is element e+1, so {1,3} is mask 0b101, printed "101".
    const Weights w = {1, 5, 1};
    const auto y = extract_witness(oracle, r, w, 2);
    CHECK(y == 0b101);
    CHECK(format_witness(y, 3) == "101");
    const auto all = only(4, {0b1111});
    BruteForceOracle all_oracle(all);
    CHECK(extract_witness(all_oracle, all, {3, 1, 4, 1}, 9) == 0b1111);
  }

  TEST_CASE("recompute example") {
    BruteForceOracle one(exactly(3, 1));
    const auto cw = compress_weight({1, 1, 2}, 0);
    CHECK(recompute(one, cw) == Weights{1, 1, 2});
  }

  TEST_CASE("recompute round trip on random non-isolating cases") {
    testkit::Rng rng(77);
    int done = 0;
    while (done < 300) {
      const unsigned m = static_cast<unsigned>(testkit::uniform(rng, 2, 7));
      const auto r = exactly(m, static_cast<unsigned>(testkit::uniform(rng, 1, m - 1)));
      BruteForceOracle oracle(r);
      const auto w = random_weights(rng, m, 3);
      const auto wmin = *find_wmin(oracle, w);
      const auto i0 = find_threshold(oracle, w, wmin);
      if (!i0) continue;
      ++done;
      CHECK(recompute(oracle, compress_weight(w, *i0)) == w);
    }
  }

  TEST_CASE("combined weight") {
    CHECK(combined_weight({1, 2}, {0, 0}, 2) == Weights{1024, 2048});
    CHECK(combined_weight({0, 0}, {3, 4}, 2) == Weights{3, 4});
    CHECK(combined_weight({1, 0, 2}, {5, 6, 0}, 3) == Weights{59049 + 5, 6, 2 * 59049});
    CHECK_THROWS_AS(combined_weight({1}, {1, 2}, 2), PreconditionError);
  }

  TEST_CASE("unsatisfiable instance rejects without compression") {
    const auto r = only(4, {});
    BruteForceOracle oracle(r);
    const auto layout = weight_tape_layout(4, 6);
    CatalyticTape tape = make_weight_tape(layout, TapeFill::random(3));
    const auto res = search_to_decision(r, oracle, tape, layout);
    CHECK(res.path == S2dPath::Reject);
    CHECK_FALSE(res.witness.has_value());
    CHECK(res.compressed.empty());
    CHECK(res.freed_bits == 0);
    CHECK(res.tape_restored);
  }

  TEST_CASE("constant tape on a tie-rich relation falls back") {
    const auto r = exactly(8, 2);
    BruteForceOracle oracle(r);
    const auto layout = weight_tape_layout(8, 16);
    CatalyticTape tape = make_weight_tape(layout, TapeFill::zeros());  // W == 1 everywhere
    const auto res = search_to_decision(r, oracle, tape, layout);
    CHECK(res.path == S2dPath::Fallback);
    CHECK(res.compressed.size() == 16);
    CHECK(res.freed_bits == 16 * 3);
    CHECK(res.witness == Mask{0b11});  // smallest mask among the ties
    CHECK(res.wmin == 2);
    CHECK(res.tape_restored);
  }

  TEST_CASE("random tapes isolate early") {
    const auto r = exactly(8, 4);
    BruteForceOracle oracle(r);
    const auto layout = weight_tape_layout(8, 16);
    int first = 0;
    int isolated = 0;
    const int runs = 200;
    for (int seed = 0; seed < runs; ++seed) {
      CatalyticTape tape = make_weight_tape(layout, TapeFill::random(static_cast<std::uint64_t>(seed)));
      const auto res = search_to_decision(r, oracle, tape, layout);
      CHECK(res.tape_restored);
      if (res.path == S2dPath::Isolated) ++isolated;
      if (res.isolating_index == std::optional<std::size_t>(0)) ++first;
    }
    CHECK(isolated == runs);
    CHECK(first >= runs * 85 / 100);
  }

  TEST_CASE("result is a brute-force minimum") {
    testkit::Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      const unsigned m = static_cast<unsigned>(testkit::uniform(rng, 1, 8));
      std::vector<Mask> accepted;
      for (Mask y = 0; y < (Mask{1} << m); ++y) {
        if (testkit::coin(rng, 0.3)) accepted.push_back(y);
      }
      const auto r = only(m, accepted);
      BruteForceOracle inner(r);
      MonotonicityChecked oracle(inner, 3);
      const auto layout = weight_tape_layout(m, default_weight_count(m));
      CatalyticTape tape = make_weight_tape(layout, TapeFill::random(static_cast<std::uint64_t>(trial)));
      const auto res = search_to_decision(r, oracle, tape, layout);
      CHECK(res.tape_restored);
      if (accepted.empty()) {
        CHECK(res.path == S2dPath::Reject);
        continue;
      }
      CHECK(oracle.checks() > 0);
      REQUIRE(res.witness.has_value());
      CHECK(r.accepts(*res.witness));
      const Weights w1 = decode_weights(layout, tape.read_block(res.isolating_index.value_or(0)));
      const auto best = testkit::brute_argmin(m, r.accepts, w1);
      CHECK(res.wmin == *best.weight);
      CHECK(testkit::mask_weight(*res.witness, w1) == *best.weight);
    }
  }

  TEST_CASE("input weights dominate the catalytic ones") {
    const auto r = exactly(3, 2);
    BruteForceOracle oracle(r);
    const auto layout = weight_tape_layout(3, default_weight_count(3));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      CatalyticTape tape = make_weight_tape(layout, TapeFill::random(seed));
      S2dOptions options;
      options.input_weights = Weights{1, 2, 3};
      const auto res = search_to_decision(r, oracle, tape, layout, options);
      CHECK(res.witness == Mask{0b011});
      CHECK(format_witness(*res.witness, 3) == "110");
      CHECK(res.tape_restored);
    }
  }

  TEST_CASE("geometry mismatch") {
    const auto r = exactly(3, 1);
    BruteForceOracle oracle(r);
    const auto layout = weight_tape_layout(3, 4);
    CatalyticTape tape = make_weight_tape(weight_tape_layout(3, 5), TapeFill::zeros());
    CHECK_THROWS_AS(search_to_decision(r, oracle, tape, layout), PreconditionError);
  }
}
