#ifndef QFB_RNG_HPP
#define QFB_RNG_HPP

#include <cstdint>
#include <utility>

namespace qfb::rng {

// Philox 2x64-10 counter-based generator. Output is a pure function of
// (key, counter), so any sample index can be generated independently:
// substream k is simply the counter lane k, and parallel and serial
// evaluation orders produce identical streams.
struct Philox2x64 {
  static constexpr std::uint64_t kMultiplier = 0xD2B74407B1CE6E93ull;
  static constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ull;

  static std::pair<std::uint64_t, std::uint64_t> block(std::uint64_t key,
                                                       std::uint64_t c0,
                                                       std::uint64_t c1) {
    for (int round = 0; round < 10; ++round) {
      const unsigned __int128 prod =
          static_cast<unsigned __int128>(kMultiplier) * c0;
      const std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
      const std::uint64_t lo = static_cast<std::uint64_t>(prod);
      c0 = hi ^ key ^ c1;
      c1 = lo;
      key += kWeyl;
    }
    return {c0, c1};
  }
};

// Uniform in the open interval (0, 1); never returns 0 or 1, so logs and
// Box-Muller transforms stay finite.
inline double to_unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace qfb::rng

#endif  // QFB_RNG_HPP
