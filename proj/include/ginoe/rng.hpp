#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace ginoe {
namespace rng {

// Philox 4x32 with 10 rounds. Counter-based: every 128-bit counter value maps
// independently to 128 bits of output under a 64-bit key, so streams can be
// split by construction instead of by jumping ahead.
inline std::array<std::uint32_t, 4> philox4x32_10(
    std::array<std::uint32_t, 4> c, std::array<std::uint32_t, 2> k) {
  constexpr std::uint64_t M0 = 0xD2511F53ull;
  constexpr std::uint64_t M1 = 0xCD9E8D57ull;
  constexpr std::uint32_t W0 = 0x9E3779B9u;
  constexpr std::uint32_t W1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = M0 * c[0];
    const std::uint64_t p1 = M1 * c[2];
    const std::uint32_t hi0 = (std::uint32_t)(p0 >> 32);
    const std::uint32_t lo0 = (std::uint32_t)p0;
    const std::uint32_t hi1 = (std::uint32_t)(p1 >> 32);
    const std::uint32_t lo1 = (std::uint32_t)p1;
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += W0;
    k[1] += W1;
  }
  return c;
}

namespace detail {
// top 53 bits, shifted into (0, 1]; never returns 0 so log() stays finite
inline double u64_to_unit(std::uint64_t x) {
  return (double)((x >> 11) + 1u) * 0x1p-53;
}
}  // namespace detail

// A deterministic sequence of 64-bit words. The counter layout is
// {block_lo, block_hi, stream, domain}: `stream` separates samples drawn from
// the same seed, `domain` separates different uses of one stream (so matrix
// entries and thinning coins never share counters).
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint32_t stream, std::uint32_t domain)
      : key_{(std::uint32_t)seed, (std::uint32_t)(seed >> 32)},
        stream_(stream),
        domain_(domain) {}

  std::uint64_t next_u64() {
    if (has_pending_) {
      has_pending_ = false;
      return pending_;
    }
    const std::array<std::uint32_t, 4> ctr = {
        (std::uint32_t)block_, (std::uint32_t)(block_ >> 32), stream_, domain_};
    ++block_;
    const auto y = philox4x32_10(ctr, key_);
    pending_ = ((std::uint64_t)y[3] << 32) | y[2];
    has_pending_ = true;
    return ((std::uint64_t)y[1] << 32) | y[0];
  }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint32_t stream_;
  std::uint32_t domain_;
  std::uint64_t block_ = 0;
  std::uint64_t pending_ = 0;
  bool has_pending_ = false;
};

inline constexpr std::uint32_t domain_normal = 0;
inline constexpr std::uint32_t domain_uniform = 1;

class UniformStream {
 public:
  UniformStream(std::uint64_t seed, std::uint32_t stream)
      : cs_(seed, stream, domain_uniform) {}

  // (0, 1]
  double next() { return detail::u64_to_unit(cs_.next_u64()); }

 private:
  CounterStream cs_;
};

// Standard normals via Box-Muller on consecutive uniform pairs.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint32_t stream)
      : cs_(seed, stream, domain_normal) {}

  double next() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = detail::u64_to_unit(cs_.next_u64());
    const double u2 = detail::u64_to_unit(cs_.next_u64());
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

 private:
  CounterStream cs_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace rng
}  // namespace ginoe
