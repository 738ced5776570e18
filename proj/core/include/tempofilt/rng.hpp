#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace tempofilt {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Deterministic random stream addressed by (seed, stream). mt19937_64 output
// is pinned by the standard, and the samplers below avoid
// std::uniform_*_distribution, whose algorithms are implementation-defined;
// the same (seed, stream) therefore draws the same sequence on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed),
        stream_(stream),
        engine_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform on [0, n)
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: empty range");
    const std::uint64_t mask = ~0ull >> std::countl_zero(n | 1);
    for (;;) {
      const std::uint64_t r = engine_() & mask;
      if (r < n) return r;
    }
  }

  // uniform on [0, 1), 53-bit resolution
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // uniform on [lo, hi)
  double range(double lo, double hi) { return lo + unit() * (hi - lo); }

  // Child stream that is independent of how much the parent has drawn.
  Rng derive(std::uint64_t salt) const {
    return Rng(seed_, splitmix64(stream_ * 0x9e3779b97f4a7c15ull + salt + 1));
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::uint64_t seed_, stream_;
  std::mt19937_64 engine_;
};

}  // namespace tempofilt
