#pragma once

#include <array>
#include <cstdint>

namespace athermal {

// Philox4x32-10 counter-based generator (Salmon et al., "Parallel random
// numbers: as easy as 1, 2, 3"). Chosen because trajectory streams must be
// reproducible across platforms and addressable by (seed, stream index)
// without sequential state.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

// One logical random stream: key = root seed, counter high half = stream id.
// Each stream yields 2^64 uint64 values independent of every other stream,
// so sample counts can grow without reshuffling earlier trajectories.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  // uniform on (0,1]; never returns 0 so log() is safe
  double next_double();
  // standard normal via Box-Muller (deterministic, no rejection)
  double next_normal();
  // normal(0, sigma) conditioned on [lo, hi] by rejection
  double next_truncated_normal(double sigma, double lo, double hi);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int block_pos_ = 4;  // exhausted
  bool have_spare_normal_ = false;
  double spare_normal_ = 0.0;

  std::uint32_t next_u32();
};

}  // namespace athermal
