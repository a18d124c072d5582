#pragma once

#include <array>
#include <cstdint>

namespace qec {

// splitmix64 step; also the finalizer used to key per-trial streams.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// xoshiro256++ seeded through splitmix64. Every sampling decision in the
// Monte Carlo driver comes from one of these, one stream per trial, so
// results do not depend on scheduling.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) {
      sm += 0x9e3779b97f4a7c15ULL;
      word = mix64(sm);
    }
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }
  std::array<std::uint64_t, 4> s_;
};

// Stream key for trial `trial` of cell `cell` under a master seed. Chained
// mixing keeps distinct coordinates from colliding in practice.
constexpr std::uint64_t trial_stream_seed(std::uint64_t master, std::uint64_t cell,
                                          std::uint64_t trial) {
  std::uint64_t h = mix64(master ^ 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ (cell + 0xd1b54a32d192ed03ULL));
  h = mix64(h ^ (trial + 0x8cb92ba72f3d8dd7ULL));
  return h;
}

}  // namespace qec
