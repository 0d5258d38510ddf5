#include "athermal/rng.hpp"

#include <cmath>

namespace athermal {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo32(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                      std::uint32_t& lo) {
  std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(prod >> 32);
  lo = static_cast<std::uint32_t>(prod);
}

inline std::array<std::uint32_t, 4> philox_round(
    std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo32(kPhiloxM0, ctr[0], hi0, lo0);
  mulhilo32(kPhiloxM1, ctr[2], hi1, lo1);
  return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    ctr = philox_round(ctr, key);
  }
  return ctr;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {}

std::uint32_t RandomStream::next_u32() {
  if (block_pos_ >= 4) {
    std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(counter_),
        static_cast<std::uint32_t>(counter_ >> 32),
        static_cast<std::uint32_t>(stream_),
        static_cast<std::uint32_t>(stream_ >> 32)};
    std::array<std::uint32_t, 2> key = {
        static_cast<std::uint32_t>(seed_),
        static_cast<std::uint32_t>(seed_ >> 32)};
    block_ = philox4x32(ctr, key);
    block_pos_ = 0;
    ++counter_;
  }
  return block_[block_pos_++];
}

std::uint64_t RandomStream::next_u64() {
  std::uint64_t hi = next_u32();
  std::uint64_t lo = next_u32();
  return (hi << 32) | lo;
}

double RandomStream::next_double() {
  // 53-bit mantissa mapped to (0,1]
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1p-53;
}

double RandomStream::next_normal() {
  if (have_spare_normal_) {
    have_spare_normal_ = false;
    return spare_normal_;
  }
  double u1 = next_double();
  double u2 = next_double();
  double r = std::sqrt(-2.0 * std::log(u1));
  double phi = 2.0 * M_PI * u2;
  spare_normal_ = r * std::sin(phi);
  have_spare_normal_ = true;
  return r * std::cos(phi);
}

double RandomStream::next_truncated_normal(double sigma, double lo,
                                           double hi) {
  if (sigma <= 0.0) return 0.0;
  for (;;) {
    double x = sigma * next_normal();
    if (x >= lo && x <= hi) return x;
  }
}

}  // namespace athermal
