#ifndef REM_SIMULATE_KERNEL_HPP
#define REM_SIMULATE_KERNEL_HPP

#include <cstdint>

#include "rem/model.hpp"
#include "rem/rng.hpp"

// Hot path of the Monte Carlo engine. Compiled in its own translation unit
// with aggressive vectorization flags; everything here is per-block local
// and merged deterministically by the caller.

namespace rem::detail {

inline constexpr std::uint64_t kBlockSize = 1 << 14;

struct BlockAccum {
  double max_log;       // max log-term in the block
  double sum_standard;  // sum of exp(x - max_log) over standard-branch terms
  double sum_shifted;
  std::uint64_t count_standard;
};

// Accumulate terms [begin, end) of one replica. Draw j depends only on
// (stream, j), so any block decomposition yields the same terms.
BlockAccum accumulate_block(const ModelParams& p, double beta, int n,
                            const RngStream& stream, std::uint64_t begin,
                            std::uint64_t end);

}  // namespace rem::detail

#endif
