#pragma once

#include <array>
#include <cstdint>

namespace seqlab {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Every draw is a
// pure function of (seed, stream, counter), so replicates can be evaluated in
// any order, or concurrently, without changing results.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Stream identifiers are partitioned by the top two bits so that independent
// consumers never share a (seed, stream) pair.
namespace stream_domain {
inline constexpr std::uint64_t observation = 0;
inline constexpr std::uint64_t ball_sampler = std::uint64_t{1} << 62;
inline constexpr std::uint64_t quadratic_form = std::uint64_t{2} << 62;
inline constexpr std::uint64_t auxiliary = std::uint64_t{3} << 62;
}  // namespace stream_domain

class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream) noexcept
      : seed_(seed), stream_(stream) {}

  // Standard normal deviate number `index`. Indices 2i and 2i+1 are the two
  // Box-Muller outputs of one Philox block.
  double operator()(std::uint64_t index) const noexcept;

  // Uniform on (0, 1], 53-bit resolution.
  double uniform(std::uint64_t index) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  std::array<std::uint32_t, 4> block(std::uint64_t counter) const noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace seqlab
