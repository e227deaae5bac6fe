// Deterministic, splittable random number generation.
//
// All Monte Carlo code in this library draws from xoshiro256++ seeded through
// SplitMix64.  Substreams derived from (seed, stream) are independent of how
// many streams a caller ends up using, so replication r of an experiment is
// reproducible regardless of the total replication count or scheduling.

#pragma once

#include <cmath>
#include <cstdint>

namespace levytail {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

class Xoshiro256PlusPlus {
 public:
  explicit Xoshiro256PlusPlus(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : state_) word = sm.next();
  }

  // Independent generator for one replication / worker of a seeded run.
  static Xoshiro256PlusPlus substream(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 sm(seed ^ (0xD1B54A32D192ED03ull * (stream + 1)));
    return Xoshiro256PlusPlus(sm.next());
  }

  std::uint64_t next() {
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

  // Uniform on the open interval (0, 1); never returns 0 or 1, so inverse
  // transforms of unbounded quantiles stay finite.
  double uniform01() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential(double rate) { return -std::log(uniform01()) / rate; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace levytail
