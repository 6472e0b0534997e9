#include "seqlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace seqlab {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t p = std::uint64_t{a} * std::uint64_t{b};
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline double to_unit_open_closed(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = (std::uint64_t{hi} << 32) | lo;
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::array<std::uint32_t, 4> GaussianStream::block(
    std::uint64_t counter) const noexcept {
  return philox4x32({static_cast<std::uint32_t>(counter),
                     static_cast<std::uint32_t>(counter >> 32),
                     static_cast<std::uint32_t>(stream_),
                     static_cast<std::uint32_t>(stream_ >> 32)},
                    {static_cast<std::uint32_t>(seed_),
                     static_cast<std::uint32_t>(seed_ >> 32)});
}

double GaussianStream::operator()(std::uint64_t index) const noexcept {
  const auto b = block(index >> 1);
  const double u1 = to_unit_open_closed(b[0], b[1]);
  const double u2 = to_unit_open_closed(b[2], b[3]);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return (index & 1u) ? radius * std::sin(angle) : radius * std::cos(angle);
}

double GaussianStream::uniform(std::uint64_t index) const noexcept {
  const auto b = block(index >> 1);
  return (index & 1u) ? to_unit_open_closed(b[2], b[3])
                      : to_unit_open_closed(b[0], b[1]);
}

}  // namespace seqlab
