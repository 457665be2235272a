#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace trilat {

/// Stream purposes used when deriving child seeds. Keeping them distinct
/// guarantees that e.g. topology generation and swarm initialization never
/// consume from the same stream even if their salts collide.
enum class StreamPurpose : std::uint64_t {
  TopologyGen = 0x01,
  SwarmInit = 0x02,
  IterationParticle = 0x03,
  Mutation = 0x04,
  InertiaDraw = 0x05,
  Trial = 0x06,
};

namespace detail {
// SplitMix64 finalizer; good avalanche, cheap, stable across platforms.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

/// Mixes a master seed with a list of salts into an independent child seed.
/// Equal (master, salts) always yield the same child; any change to either
/// yields an unrelated stream.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> salts) {
  std::uint64_t h = detail::splitmix64(master);
  for (std::uint64_t s : salts) {
    h = detail::splitmix64(h ^ detail::splitmix64(s));
  }
  return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t master, StreamPurpose purpose,
                                    std::initializer_list<std::uint64_t> salts = {}) {
  std::uint64_t h = derive_seed(master, {static_cast<std::uint64_t>(purpose)});
  for (std::uint64_t s : salts) {
    h = detail::splitmix64(h ^ detail::splitmix64(s));
  }
  return h;
}

/// Deterministic random stream. Draws are produced by fixed bit
/// manipulation of mt19937_64 output rather than std::distribution
/// objects, so sequences are identical across standard libraries.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n) {
    // Lemire's multiply-shift; bias is unmeasurable for n << 2^64.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(gen_()) * n) >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace trilat
