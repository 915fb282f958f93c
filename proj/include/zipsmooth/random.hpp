// SPDX-License-Identifier: Apache-2.0

#ifndef ZIPSMOOTH_RANDOM_HPP
#define ZIPSMOOTH_RANDOM_HPP

#include <array>
#include <cstdint>

namespace zipsmooth {

// xoshiro256** seeded through splitmix64. Output is identical on every
// platform; `stream` selects an independent sequence via the 2^128 jump.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() noexcept;
  // Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;
  // Uniform in [0, bound), bound > 0, by 128-bit multiply-high.
  std::uint64_t below(std::uint64_t bound) noexcept;

  void jump() noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace zipsmooth

#endif
