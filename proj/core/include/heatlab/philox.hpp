#pragma once

// Philox-4x32-10 counter-based generator (Salmon et al., SC 2011) plus a
// Gaussian stream keyed by (seed, stream id). A draw is a pure function of
// (seed, stream, index), so batches are reproducible no matter how work is
// scheduled across threads.

#include <array>
#include <cmath>
#include <cstdint>

namespace heatlab {

struct PhiloxBlock {
  std::array<std::uint32_t, 4> x;
};

inline PhiloxBlock philox4x32(std::array<std::uint32_t, 4> ctr,
                              std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;

  auto mulhilo = [](std::uint32_t a, std::uint32_t b, std::uint32_t& hi) {
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    return static_cast<std::uint32_t>(p);
  };

  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, hi1;
    std::uint32_t lo0 = mulhilo(kMul0, ctr[0], hi0);
    std::uint32_t lo1 = mulhilo(kMul1, ctr[2], hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return {ctr};
}

// Uniform in (0,1): 53-bit mantissa from two 32-bit words, never exactly 0.
inline double philox_uniform(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t index, std::uint32_t slot = 0) {
  const PhiloxBlock b = philox4x32(
      {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
       static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)},
      {static_cast<std::uint32_t>(seed) ^ (0x85EBCA6Bu * (slot + 1)),
       static_cast<std::uint32_t>(seed >> 32) + slot});
  const std::uint64_t bits =
      (static_cast<std::uint64_t>(b.x[0]) << 32) | b.x[1];
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal: Box-Muller on the two uniform halves of one block.
inline double philox_normal(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t index) {
  const PhiloxBlock b = philox4x32(
      {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
       static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)},
      {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
  const std::uint64_t u1bits =
      (static_cast<std::uint64_t>(b.x[0]) << 32) | b.x[1];
  const std::uint64_t u2bits =
      (static_cast<std::uint64_t>(b.x[2]) << 32) | b.x[3];
  const double u1 = (static_cast<double>(u1bits >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = (static_cast<double>(u2bits >> 11) + 0.5) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace heatlab
