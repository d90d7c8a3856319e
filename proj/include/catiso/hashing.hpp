#pragma once

#include <cstdint>

#include "catiso/bits.hpp"

namespace catiso {

bool is_prime(std::uint64_t n);
// Smallest prime >= n (n >= 2).
std::uint64_t next_prime(std::uint64_t n);

// The affine family h_{a,b}(x) = ((a*x + b) mod p) mod r over domain [m].
struct HashFamilyParams {
  std::uint64_t m = 0;
  std::uint64_t r = 0;
  std::uint64_t p = 0;
  unsigned seed_bits = 0;  // a in the high half, b in the low half
};

struct HashSeed {
  std::uint64_t a = 1;
  std::uint64_t b = 0;

  friend bool operator==(const HashSeed&, const HashSeed&) = default;
  friend auto operator<=>(const HashSeed&, const HashSeed&) = default;
};

HashFamilyParams family_params(std::uint64_t m, std::uint64_t r);

std::uint64_t eval(const HashFamilyParams& params, const HashSeed& seed, std::uint64_t x);

struct Probability {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;

  double value() const { return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total); }
  // hits/total <= num/den, compared exactly.
  bool at_most(std::uint64_t num, std::uint64_t den) const;
};

// Fraction of all seeds (a in [1,p-1], b in [0,p-1]) with h(u) == delta + h(v).
Probability shifted_collision_audit(const HashFamilyParams& params, std::uint64_t u, std::uint64_t v,
                                    std::int64_t delta);

// Histogram over all seeds of h(u) - h(v), indexed by difference + (r-1).
std::vector<std::uint64_t> difference_histogram(const HashFamilyParams& params, std::uint64_t u,
                                                std::uint64_t v);

// Decodes the low seed_bits of `raw`: a = high half mod p (0 -> 1), b = low half mod p.
HashSeed seed_from_raw(const HashFamilyParams& params, std::uint64_t raw);
HashSeed seed_from_bits(const HashFamilyParams& params, const Bits& raw);
Bits encode_seed(const HashFamilyParams& params, const HashSeed& seed);
std::uint64_t seed_to_raw(const HashFamilyParams& params, const HashSeed& seed);

}  // namespace catiso
