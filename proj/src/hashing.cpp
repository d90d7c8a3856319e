#include "catiso/hashing.hpp"

#include <string>

#include "catiso/errors.hpp"

namespace catiso {
namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % mod);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

unsigned half_bits(const HashFamilyParams& params) { return params.seed_bits / 2; }

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for all 64-bit n.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  while (!is_prime(n)) {
    if (n == UINT64_MAX) throw LimitError("no 64-bit prime above bound");
    ++n;
  }
  return n;
}

HashFamilyParams family_params(std::uint64_t m, std::uint64_t r) {
  if (m < 1) throw PreconditionError("hash domain must be non-empty");
  if (r < 2) throw PreconditionError("hash range must be at least 2");
  if (r > (std::uint64_t{1} << 62)) throw LimitError("hash range too large");
  HashFamilyParams params;
  params.m = m;
  params.r = r;
  params.p = next_prime(std::max(m, r));
  params.seed_bits = 2 * ceil_log2(params.p);
  if (params.seed_bits > 126) throw LimitError("seed does not fit the raw encoding");
  return params;
}

std::uint64_t eval(const HashFamilyParams& params, const HashSeed& seed, std::uint64_t x) {
  if (x >= params.m) {
    throw PreconditionError("hash argument " + std::to_string(x) + " outside domain [0," +
                            std::to_string(params.m) + ")");
  }
  u128 v = static_cast<u128>(seed.a) * x + seed.b;
  return static_cast<std::uint64_t>(v % params.p) % params.r;
}

bool Probability::at_most(std::uint64_t num, std::uint64_t den) const {
  return static_cast<u128>(hits) * den <= static_cast<u128>(num) * total;
}

std::vector<std::uint64_t> difference_histogram(const HashFamilyParams& params, std::uint64_t u,
                                                std::uint64_t v) {
  if (u == v) throw PreconditionError("shifted-collision audit needs u != v");
  if (u >= params.m || v >= params.m) throw PreconditionError("audit point outside domain");
  if (params.p > (1U << 16)) throw LimitError("exhaustive audit needs p <= 65536");
  std::vector<std::uint64_t> hist(2 * params.r - 1, 0);
  for (std::uint64_t a = 1; a < params.p; ++a) {
    const std::uint64_t au = a * u % params.p;
    const std::uint64_t av = a * v % params.p;
    for (std::uint64_t b = 0; b < params.p; ++b) {
      std::uint64_t hu = (au + b) % params.p % params.r;
      std::uint64_t hv = (av + b) % params.p % params.r;
      ++hist[hu + params.r - 1 - hv];
    }
  }
  return hist;
}

Probability shifted_collision_audit(const HashFamilyParams& params, std::uint64_t u, std::uint64_t v,
                                    std::int64_t delta) {
  auto hist = difference_histogram(params, u, v);
  Probability prob;
  prob.total = params.p * (params.p - 1);
  std::int64_t index = delta + static_cast<std::int64_t>(params.r) - 1;
  if (index >= 0 && index < static_cast<std::int64_t>(hist.size())) prob.hits = hist[static_cast<std::size_t>(index)];
  return prob;
}

HashSeed seed_from_raw(const HashFamilyParams& params, std::uint64_t raw) {
  const unsigned half = half_bits(params);
  if (half > 32) throw LimitError("seed halves wider than 32 bits need the bit-vector decoder");
  const std::uint64_t mask = (std::uint64_t{1} << half) - 1;
  HashSeed seed;
  seed.a = ((raw >> half) & mask) % params.p;
  seed.b = (raw & mask) % params.p;
  if (seed.a == 0) seed.a = 1;
  return seed;
}

HashSeed seed_from_bits(const HashFamilyParams& params, const Bits& raw) {
  if (raw.size() != params.seed_bits) {
    throw PreconditionError("seed encoding must be " + std::to_string(params.seed_bits) + " bits, got " +
                            std::to_string(raw.size()));
  }
  const unsigned half = half_bits(params);
  HashSeed seed;
  seed.a = bits_to_uint(raw, 0, half) % params.p;
  seed.b = bits_to_uint(raw, half, half) % params.p;
  if (seed.a == 0) seed.a = 1;
  return seed;
}

Bits encode_seed(const HashFamilyParams& params, const HashSeed& seed) {
  if (seed.a == 0 || seed.a >= params.p || seed.b >= params.p) throw PreconditionError("seed out of range");
  const unsigned half = half_bits(params);
  Bits out = bits_from_uint(seed.a, half);
  Bits low = bits_from_uint(seed.b, half);
  out.insert(out.end(), low.begin(), low.end());
  return out;
}

std::uint64_t seed_to_raw(const HashFamilyParams& params, const HashSeed& seed) {
  const unsigned half = half_bits(params);
  if (half > 32) throw LimitError("seed halves wider than 32 bits need the bit-vector encoder");
  if (seed.a == 0 || seed.a >= params.p || seed.b >= params.p) throw PreconditionError("seed out of range");
  return (seed.a << half) | seed.b;
}

}  // namespace catiso
