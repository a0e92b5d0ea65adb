#pragma once

#include <cstdint>
#include <vector>

namespace itlinq {

// Deterministic, platform-independent generator (splitmix64 core).
// Every simulation draw goes through this class so that a (params, seed)
// pair reproduces bit-identical results on any conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01();

  double uniform(double lo, double hi);

  // Unbiased integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Exp(mean); mean defaults to 1.
  double exponential(double mean = 1.0);

  // Box-Muller, cosine branch only (no cached spare, keeps streams
  // position-independent).
  double gaussian(double mean, double sigma);

  // Fisher-Yates over 0..n-1, swapping from the top down.
  std::vector<int> permutation(int n);

  // Derived stream seed: mix64(master ^ mix64(index + golden)).
  // Used for per-trial substreams so parallel execution order cannot
  // change results.
  static std::uint64_t substream(std::uint64_t master, std::uint64_t index);

  // splitmix64 finalizer, exposed for hashing of config payloads.
  static std::uint64_t mix64(std::uint64_t z);

 private:
  std::uint64_t state_;
};

}  // namespace itlinq
