#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace lil {

/// Philox4x32-10 block function (Salmon et al. counter-based generator).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Random stream for one (master seed, path, step) triple. Draws are a pure
/// function of the triple and the draw index, so paths can be generated in
/// any order on any thread.
class StepStream {
 public:
  using result_type = std::uint32_t;

  StepStream(std::uint64_t master_seed, std::uint64_t path, std::uint64_t step)
      : key_{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32)},
        counter_{0u, static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(path),
                 static_cast<std::uint32_t>(path >> 32)},
        step_hi_(static_cast<std::uint32_t>(step >> 32)) {
    // High step bits fold into the key; steps beyond 2^32 are still distinct.
    key_[1] ^= step_hi_ * 0x9E3779B9u;
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (used_ == 4) refill();
    return block_[used_++];
  }

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform() {
    const std::uint64_t hi = (*this)();
    const std::uint64_t lo = (*this)();
    const std::uint64_t bits = ((hi << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

 private:
  void refill() {
    block_ = philox4x32(counter_, key_);
    ++counter_[0];
    used_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::uint32_t step_hi_;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
};

}  // namespace lil
