#include "itlinq/rng.hpp"

#include <cmath>
#include <numbers>

namespace itlinq {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Rng::mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Reject the low bias region: accept x >= 2^64 mod bound.
  const std::uint64_t threshold = (0ULL - bound) % bound;
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x >= threshold) return x % bound;
  }
}

double Rng::exponential(double mean) {
  return -mean * std::log(1.0 - uniform01());
}

double Rng::gaussian(double mean, double sigma) {
  const double u1 = 1.0 - uniform01();  // (0, 1], log-safe
  const double u2 = uniform01();
  return mean + sigma * std::sqrt(-2.0 * std::log(u1)) *
                    std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<int> Rng::permutation(int n) {
  std::vector<int> a(n);
  for (int i = 0; i < n; ++i) a[i] = i;
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(below(static_cast<std::uint64_t>(i) + 1));
    std::swap(a[i], a[j]);
  }
  return a;
}

std::uint64_t Rng::substream(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index + kGolden));
}

}  // namespace itlinq
