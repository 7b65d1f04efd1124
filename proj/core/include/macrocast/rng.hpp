#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace macrocast {

// Deterministic RNG used everywhere randomness appears. Draws are hand-rolled
// on top of mt19937_64 instead of <random> distributions so that streams are
// byte-stable across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // inclusive bounds, rejection sampling (no modulo bias)
  std::uint64_t uniform_u64(std::uint64_t bound);  // [0, bound)
  int uniform_int(int lo, int hi);

  // standard normal via Box-Muller, second value cached
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_u64(i));
      std::swap(v[i - 1], v[j]);
    }
  }

private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Counter-based derivation: one master seed fans out into independent
// per-trial / per-generation streams without order coupling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace macrocast
