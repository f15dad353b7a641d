#pragma once

#include <array>
#include <cstdint>

// Philox4x32-10 counter-based generator. A (seed, stream) pair fully
// determines the sequence, so one stream per Monte Carlo trial makes every
// report independent of how trials are split across threads.

namespace dioph {

namespace philox_detail {

constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;
constexpr std::uint32_t kMulA = 0xD2511F53u;
constexpr std::uint32_t kMulB = 0xCD9E8D57u;

inline std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                          std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t(kMulA) * ctr[0];
    const std::uint64_t p1 = std::uint64_t(kMulB) * ctr[2];
    ctr = {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], std::uint32_t(p1),
           std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1], std::uint32_t(p0)};
    key[0] += kWeylA;
    key[1] += kWeylB;
  }
  return ctr;
}

}  // namespace philox_detail

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream)
      : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)}, stream_(stream) {}

  std::uint64_t next_bits() {
    if (avail_ == 0) refill();
    return buf_[--avail_];
  }

  // strictly inside (0,1): 53-bit mantissa centered on half-ulp multiples
  double next_uniform() {
    return (double((next_bits() >> 11)) + 0.5) * 0x1.0p-53;
  }

  // uniform on (-half_width, half_width)
  double next_symmetric(double half_width) {
    return (2.0 * next_uniform() - 1.0) * half_width;
  }

  int next_bit() { return int(next_bits() & 1u); }

 private:
  void refill() {
    const std::array<std::uint32_t, 4> ctr = {
        std::uint32_t(block_n_), std::uint32_t(block_n_ >> 32),
        std::uint32_t(stream_), std::uint32_t(stream_ >> 32)};
    const auto r = philox_detail::block(ctr, key_);
    buf_[1] = (std::uint64_t(r[1]) << 32) | r[0];
    buf_[0] = (std::uint64_t(r[3]) << 32) | r[2];
    avail_ = 2;
    ++block_n_;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_n_ = 0;
  std::array<std::uint64_t, 2> buf_{};
  int avail_ = 0;
};

}  // namespace dioph
