#pragma once

#include <cstdint>
#include <cmath>
#include <initializer_list>

namespace pathweave {

// xoshiro256++ seeded through splitmix64. We roll our own generator and
// variate transforms because the distributions in <random> are not required
// to produce identical streams across standard library implementations, and
// reproducibility of seeded runs is part of the CLI contract.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

  bool bernoulli(double p) { return uniform01() < p; }

  double sign() { return (next_u64() & 1u) ? 1.0 : -1.0; }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  std::uint64_t state_[4];
};

// Deterministic stream derivation: mixes a base seed with an arbitrary list
// of coordinates (cell indices, replicate numbers, role tags). Streams with
// distinct coordinate lists are independent for practical purposes, and the
// derivation does not depend on thread scheduling.
inline std::uint64_t derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> coords) {
  std::uint64_t x = seed ^ 0xd1b54a32d192ed03ULL;
  std::uint64_t h = Rng::splitmix64(x);
  for (std::uint64_t c : coords) {
    x ^= c + 0x9e3779b97f4a7c15ULL + (x << 6) + (x >> 2);
    h ^= Rng::splitmix64(x);
    h = Rng::splitmix64(h);
  }
  return h;
}

}  // namespace pathweave
