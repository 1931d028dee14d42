#pragma once
// Deterministic random stream. All stochastic inputs of a run are drawn from
// one RngStream seeded at run start, so identical seeds reproduce identical
// workloads bit for bit. The uniform mapping is fixed (raw 64-bit engine
// output scaled by 2^-53) instead of std::uniform_real_distribution, whose
// output is implementation-defined.

#include <cmath>
#include <cstdint>
#include <random>

namespace fogsim {

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(scramble(seed)) {}

  std::uint64_t raw() { return gen_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Exponential with the given rate (events per unit time).
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  // Uniform integer in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(gen_()) * n) >> 64);
  }

 private:
  // splitmix64 finalizer; keeps nearby seeds from producing correlated
  // mt19937_64 initial states.
  static std::uint64_t scramble(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 gen_;
};

}  // namespace fogsim
