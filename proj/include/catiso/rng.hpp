#pragma once

#include <cstdint>
#include <random>

namespace catiso {

// SplitMix64. Every run derives its randomness from one 64-bit seed:
// `split(k)` yields an independent child seed for stream k, so trial k of a
// batch can be replayed on its own.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t split(std::uint64_t stream) const {
    SplitMix64 child(state_ ^ (0xd1b54a32d192ed03ULL * (stream + 1)));
    return child.next();
  }

 private:
  std::uint64_t state_;
};

inline std::mt19937_64 make_engine(std::uint64_t seed) {
  return std::mt19937_64(SplitMix64(seed).next());
}

}  // namespace catiso
