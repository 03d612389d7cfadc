#ifndef REM_RNG_HPP
#define REM_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

// Counter-based random numbers (Philox4x32-10, Salmon et al. 2011).
// Every draw is a pure function of (seed, stream, counter), so results do
// not depend on scheduling, worker count or call order.

namespace rem {

// Immutable stream descriptor; cheap to copy across workers.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace detail

// One 128-bit Philox block. `counter` indexes the draw within the stream,
// `domain` separates independent uses of the same counter (energy draws,
// stable variates, ...).
inline std::array<std::uint32_t, 4> philox_block(const RngStream& s,
                                                 std::uint64_t counter,
                                                 std::uint64_t domain = 0) {
  constexpr std::uint32_t kWeylA = 0x9E3779B9u;
  constexpr std::uint32_t kWeylB = 0xBB67AE85u;
  constexpr std::uint32_t kMulA = 0xD2511F53u;
  constexpr std::uint32_t kMulB = 0xCD9E8D57u;

  std::uint64_t key64 = detail::splitmix64(s.seed ^ detail::splitmix64(s.stream));
  std::uint32_t k0 = static_cast<std::uint32_t>(key64);
  std::uint32_t k1 = static_cast<std::uint32_t>(key64 >> 32);

  std::uint32_t c0 = static_cast<std::uint32_t>(counter);
  std::uint32_t c1 = static_cast<std::uint32_t>(counter >> 32);
  std::uint32_t c2 = static_cast<std::uint32_t>(domain);
  std::uint32_t c3 = static_cast<std::uint32_t>(domain >> 32);

  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    detail::mulhilo(kMulA, c0, hi0, lo0);
    detail::mulhilo(kMulB, c2, hi1, lo1);
    std::uint32_t n0 = hi1 ^ c1 ^ k0;
    std::uint32_t n1 = lo1;
    std::uint32_t n2 = hi0 ^ c3 ^ k1;
    std::uint32_t n3 = lo0;
    c0 = n0; c1 = n1; c2 = n2; c3 = n3;
    k0 += kWeylA;
    k1 += kWeylB;
  }
  return {c0, c1, c2, c3};
}

// Uniform in (0,1] from the top 53 bits of a 64-bit word; never returns 0,
// so it is safe under log().
inline double u64_to_unit_pos(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
}

// Uniform in [0,1).
inline double u64_to_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

struct NormalPair {
  double z0, z1;
  bool bit0, bit1;  // independent fair bits riding on the same block
};

// Two standard normals (Box-Muller) plus two spare bits per Philox block.
inline NormalPair normal_pair(const RngStream& s, std::uint64_t pair_counter,
                              std::uint64_t domain = 0) {
  auto b = philox_block(s, pair_counter, domain);
  std::uint64_t w0 = (static_cast<std::uint64_t>(b[1]) << 32) | b[0];
  std::uint64_t w1 = (static_cast<std::uint64_t>(b[3]) << 32) | b[2];
  double u1 = u64_to_unit_pos(w0);
  double u2 = u64_to_unit(w1);
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 6.283185307179586477 * u2;
  NormalPair out;
  out.z0 = r * std::cos(theta);
  out.z1 = r * std::sin(theta);
  out.bit0 = (b[0] & 1u) != 0;
  out.bit1 = (b[0] & 2u) != 0;
  return out;
}

inline double uniform(const RngStream& s, std::uint64_t counter,
                      std::uint64_t domain = 0) {
  auto b = philox_block(s, counter, domain);
  return u64_to_unit_pos((static_cast<std::uint64_t>(b[1]) << 32) | b[0]);
}

}  // namespace rem

#endif
