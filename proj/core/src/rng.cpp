#include "macrocast/rng.hpp"

#include <cmath>

namespace macrocast {

std::uint64_t Rng::uniform_u64(std::uint64_t bound) {
  if (bound == 0) return 0;
  // reject the tail that would bias the modulo
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % bound;
}

int Rng::uniform_int(int lo, int hi) {
  return lo + static_cast<int>(uniform_u64(static_cast<std::uint64_t>(hi - lo) + 1));
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // u1 in (0,1] so log stays finite
  double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

namespace {
std::uint64_t splitmix_mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix_mix(master + 0x9E3779B97F4A7C15ULL * (stream + 1));
}

}  // namespace macrocast
