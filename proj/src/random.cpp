// SPDX-License-Identifier: Apache-2.0

#include "zipsmooth/random.hpp"

namespace zipsmooth {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) noexcept {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed;
  for (auto& word : s_) word = splitmix64(x);
  for (std::uint64_t k = 0; k < stream; ++k) jump();
}

std::uint64_t Xoshiro256::next() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256::uniform() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t Xoshiro256::below(std::uint64_t bound) noexcept {
  // High word of the 128-bit product, from 32-bit limbs.
  const std::uint64_t x = next();
  const std::uint64_t x_lo = x & 0xffffffffULL, x_hi = x >> 32;
  const std::uint64_t b_lo = bound & 0xffffffffULL, b_hi = bound >> 32;
  const std::uint64_t lo_lo = x_lo * b_lo;
  const std::uint64_t hi_lo = x_hi * b_lo;
  const std::uint64_t lo_hi = x_lo * b_hi;
  const std::uint64_t cross =
      (lo_lo >> 32) + (hi_lo & 0xffffffffULL) + lo_hi;
  return x_hi * b_hi + (hi_lo >> 32) + (cross >> 32);
}

void Xoshiro256::jump() noexcept {
  static constexpr std::uint64_t kJump[] = {
      0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL, 0xa9582618e03fc9aaULL,
      0x39abdc4529b1661cULL};
  std::array<std::uint64_t, 4> acc{};
  for (std::uint64_t word : kJump) {
    for (int b = 0; b < 64; ++b) {
      if (word & (std::uint64_t{1} << b))
        for (int k = 0; k < 4; ++k) acc[k] ^= s_[k];
      next();
    }
  }
  s_ = acc;
}

}  // namespace zipsmooth
