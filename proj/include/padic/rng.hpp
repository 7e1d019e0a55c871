#pragma once

#include <array>
#include <cstdint>

namespace padic {

/// Counter-based Philox4x32-10 stream keyed by (seed, stream index).
///
/// The key holds the seed, the high counter words hold the stream index and
/// the low words the block counter, so a fixed (seed, stream) pair replays
/// bit-identically and distinct stream indices give statistically
/// independent sequences that workers may consume in parallel.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {
    key_ = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    ctr_[2] = static_cast<std::uint32_t>(stream);
    ctr_[3] = static_cast<std::uint32_t>(stream >> 32);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return out_[pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    return lo | (static_cast<std::uint64_t>(next_u32()) << 32);
  }

  /// Uniform in [0,1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Unbiased uniform in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  void refill();
  void bump_block() {
    ctr_[0] = static_cast<std::uint32_t>(++block_);
    ctr_[1] = static_cast<std::uint32_t>(block_ >> 32);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::array<std::uint32_t, 2> key_{};
  std::array<std::uint32_t, 4> ctr_{};
  std::array<std::uint32_t, 4> out_{};
  std::uint64_t block_ = 0;
  int pos_ = 4;
};

}  // namespace padic
