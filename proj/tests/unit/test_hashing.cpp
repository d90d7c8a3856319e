#include <doctest.h>

#include <set>

#include "catiso/errors.hpp"
#include "catiso/hashing.hpp"

using namespace catiso;

namespace {

// Direct count over every seed, written without the library's histogram.
std::uint64_t direct_hits(std::uint64_t p, std::uint64_t r, std::uint64_t u, std::uint64_t v, std::int64_t delta) {
  std::uint64_t hits = 0;
  for (std::uint64_t a = 1; a < p; ++a) {
    for (std::uint64_t b = 0; b < p; ++b) {
      const auto hu = static_cast<std::int64_t>((a * u + b) % p % r);
      const auto hv = static_cast<std::int64_t>((a * v + b) % p % r);
      if (hu == delta + hv) ++hits;
    }
  }
  return hits;
}

}  // namespace

TEST_SUITE("hashing") {
  TEST_CASE("primes") {
    CHECK(is_prime(2));
    CHECK(is_prime(17));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(561));
    CHECK(is_prime(2305843009213693951ULL));  // 2^61 - 1
    CHECK(next_prime(16) == 17);
    CHECK(next_prime(100) == 101);
    CHECK(next_prime(5) == 5);
  }

  TEST_CASE("family parameters") {
    CHECK(family_params(8, 16).p == 17);
    CHECK(family_params(5, 5).p == 5);
    CHECK(family_params(100, 64).p == 101);
    CHECK(family_params(8, 16).seed_bits == 10);
    CHECK_THROWS_AS(family_params(0, 16), PreconditionError);
    CHECK_THROWS_AS(family_params(4, 1), PreconditionError);
  }

  TEST_CASE("eval examples") {
    const auto params = family_params(17, 16);
    REQUIRE(params.p == 17);
    CHECK(eval(params, {1, 0}, 5) == 5);
    CHECK(eval(params, {1, 0}, 16) == 0);
    CHECK(eval(params, {3, 2}, 7) == 6);
    CHECK_THROWS_AS(eval(params, {1, 0}, 17), PreconditionError);
  }

  TEST_CASE("audit agrees with a direct count") {
    const auto params = family_params(8, 16);
    for (std::uint64_t u = 0; u < 8; ++u) {
      for (std::uint64_t v = 0; v < 8; ++v) {
        if (u == v) continue;
        for (std::int64_t delta = -16; delta <= 16; delta += 3) {
          const auto prob = shifted_collision_audit(params, u, v, delta);
          CHECK(prob.total == 17 * 16);
          CHECK(prob.hits == direct_hits(17, 16, u, v, delta));
        }
      }
    }
  }

  TEST_CASE("unreachable shift has probability zero") {
    const auto params = family_params(8, 16);
    CHECK(shifted_collision_audit(params, 1, 2, 16).hits == 0);
    CHECK(shifted_collision_audit(params, 1, 2, -16).hits == 0);
    CHECK_THROWS_AS(shifted_collision_audit(params, 3, 3, 0), PreconditionError);
  }

  TEST_CASE("doubled bound holds exhaustively for small families") {
    for (std::uint64_t m : {2, 5, 9, 16}) {
      for (std::uint64_t r : {2, 3, 7, 16, 31, 64}) {
        const auto params = family_params(m, r);
        for (std::uint64_t u = 0; u < m; ++u) {
          for (std::uint64_t v = 0; v < m; ++v) {
            if (u == v) continue;
            const auto hist = difference_histogram(params, u, v);
            const std::uint64_t total = params.p * (params.p - 1);
            for (auto hits : hist) CHECK(hits * r <= 2 * total);
          }
        }
      }
    }
  }

  TEST_CASE("probability comparison is exact") {
    Probability p{2, 64};
    CHECK(p.at_most(1, 32));
    CHECK_FALSE(p.at_most(1, 33));
    CHECK(p.value() == doctest::Approx(1.0 / 32));
  }

  TEST_CASE("seed decoding") {
    const auto params = family_params(8, 16);
    CHECK(seed_from_bits(params, Bits(params.seed_bits, false)) == HashSeed{1, 0});
    CHECK(seed_from_raw(params, 0) == HashSeed{1, 0});
    CHECK_THROWS_AS(seed_from_bits(params, Bits(3, false)), PreconditionError);
    // Raw and bit-vector decoders agree on every raw value.
    for (std::uint64_t raw = 0; raw < (1U << params.seed_bits); ++raw) {
      CHECK(seed_from_raw(params, raw) == seed_from_bits(params, bits_from_uint(raw, params.seed_bits)));
    }
  }

  TEST_CASE("encoding is injective and inverts decoding") {
    const auto params = family_params(8, 16);
    std::set<std::uint64_t> raws;
    for (std::uint64_t a = 1; a < params.p; ++a) {
      for (std::uint64_t b = 0; b < params.p; ++b) {
        const HashSeed seed{a, b};
        const auto raw = seed_to_raw(params, seed);
        CHECK(raws.insert(raw).second);
        CHECK(seed_from_raw(params, raw) == seed);
        CHECK(seed_from_bits(params, encode_seed(params, seed)) == seed);
      }
    }
    CHECK_THROWS_AS(seed_to_raw(params, {0, 1}), PreconditionError);
  }
}
