#include "simulate_kernel.hpp"

#include <cmath>
#include <vector>

// This file is compiled with -ffast-math so the pass loops below vectorize
// through libmvec. No compensated summation lives here; block sums are
// short (<= kBlockSize terms) and the caller merges them carefully.

namespace rem::detail {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

BlockAccum accumulate_block(const ModelParams& p, double beta, int n,
                            const RngStream& stream, std::uint64_t begin,
                            std::uint64_t end) {
  if (begin >= end) return {-1e308, 0.0, 0.0, 0};
  const std::size_t count = static_cast<std::size_t>(end - begin);
  const std::uint64_t pair_begin = begin >> 1;
  const std::uint64_t pair_end = ((end - 1) >> 1) + 1;
  const std::size_t pairs = static_cast<std::size_t>(pair_end - pair_begin);

  thread_local std::vector<double> u1, u2, radius, zc, zs, x, flag, ex;
  u1.resize(pairs);
  u2.resize(pairs);
  radius.resize(pairs);
  zc.resize(pairs);
  zs.resize(pairs);
  x.resize(count);
  flag.resize(count);
  ex.resize(count);

  thread_local std::vector<unsigned char> bits;
  bits.resize(pairs);

  for (std::size_t i = 0; i < pairs; ++i) {
    auto b = philox_block(stream, pair_begin + i);
    std::uint64_t w0 = (static_cast<std::uint64_t>(b[1]) << 32) | b[0];
    std::uint64_t w1 = (static_cast<std::uint64_t>(b[3]) << 32) | b[2];
    u1[i] = u64_to_unit_pos(w0);
    u2[i] = u64_to_unit(w1);
    bits[i] = static_cast<unsigned char>(b[0] & 3u);
  }
  for (std::size_t i = 0; i < pairs; ++i)
    radius[i] = std::sqrt(-2.0 * std::log(u1[i]));
  for (std::size_t i = 0; i < pairs; ++i) zc[i] = std::cos(kTwoPi * u2[i]);
  for (std::size_t i = 0; i < pairs; ++i) zs[i] = std::sin(kTwoPi * u2[i]);

  const double sn = std::sqrt(static_cast<double>(n));
  const double coef_std = beta * sn;
  const double coef_shift = beta * p.sigma * sn;
  const double shift = beta * p.a * n;

  for (std::size_t j = 0; j < count; ++j) {
    std::uint64_t term = begin + j;
    std::size_t i = static_cast<std::size_t>((term >> 1) - pair_begin);
    bool odd = (term & 1) != 0;
    double z = odd ? zs[i] * radius[i] : zc[i] * radius[i];
    bool shifted = (bits[i] >> (odd ? 1 : 0)) & 1u;
    x[j] = shifted ? shift + coef_shift * z : coef_std * z;
    flag[j] = shifted ? 1.0 : 0.0;
  }

  double mx = x[0];
  for (std::size_t j = 1; j < count; ++j) mx = std::max(mx, x[j]);
  for (std::size_t j = 0; j < count; ++j) ex[j] = std::exp(x[j] - mx);

  double s_std = 0.0, s_shift = 0.0, n_shift = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    s_shift += ex[j] * flag[j];
    s_std += ex[j] * (1.0 - flag[j]);
    n_shift += flag[j];
  }

  BlockAccum out;
  out.max_log = mx;
  out.sum_standard = s_std;
  out.sum_shifted = s_shift;
  out.count_standard = count - static_cast<std::uint64_t>(n_shift);
  return out;
}

}  // namespace rem::detail
