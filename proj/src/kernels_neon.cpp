// aarch64 only; NEON is architecturally guaranteed there.

#include <arm_neon.h>

#include <bit>

#include "subsum/kernels.hpp"

namespace subsum::kernels::detail {
namespace {

inline std::uint64_t popcount_pair(uint64x2_t v) {
  return vaddlvq_u8(vcntq_u8(vreinterpretq_u8_u64(v)));
}

void shift_or(std::span<std::uint64_t> w, std::uint64_t shift) {
  const std::size_t n = w.size();
  const std::uint64_t q = shift / 64;
  const int r = static_cast<int>(shift % 64);
  if (q >= n) return;
  const int64x2_t left = vdupq_n_s64(r);
  const int64x2_t right = vdupq_n_s64(r == 0 ? -64 : r - 64);  // negative count shifts right
  std::uint64_t* data = w.data();
  std::size_t i = n;
  while (i >= q + 3) {
    std::size_t lo = i - 2;
    uint64x2_t cur = vld1q_u64(data + lo);
    uint64x2_t a = vld1q_u64(data + lo - q);
    uint64x2_t b = vld1q_u64(data + lo - q - 1);
    uint64x2_t v = vorrq_u64(vshlq_u64(a, left), r == 0 ? vdupq_n_u64(0) : vshlq_u64(b, right));
    vst1q_u64(data + lo, vorrq_u64(cur, v));
    i = lo;
  }
  for (; i-- > q;) {
    std::uint64_t v = data[i - q] << r;
    if (r != 0 && i >= q + 1) v |= data[i - q - 1] >> (64 - r);
    data[i] |= v;
  }
}

std::uint64_t popcount(std::span<const std::uint64_t> w) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= w.size(); i += 2) total += popcount_pair(vld1q_u64(w.data() + i));
  for (; i < w.size(); ++i) total += static_cast<std::uint64_t>(std::popcount(w[i]));
  return total;
}

std::uint64_t chain_starts(std::span<const std::uint64_t> w, std::uint64_t shift) {
  const std::size_t n = w.size();
  const std::uint64_t q = shift / 64;
  const int r = static_cast<int>(shift % 64);
  const std::uint64_t* data = w.data();
  std::uint64_t total = 0;
  std::size_t head = q + 1 < n ? static_cast<std::size_t>(q + 1) : n;
  for (std::size_t i = 0; i < head; ++i) {
    std::uint64_t shifted = i >= q ? data[i - q] << r : 0;
    total += static_cast<std::uint64_t>(std::popcount(data[i] & ~shifted));
  }
  const int64x2_t left = vdupq_n_s64(r);
  const int64x2_t right = vdupq_n_s64(r == 0 ? -64 : r - 64);
  std::size_t i = head;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t cur = vld1q_u64(data + i);
    uint64x2_t a = vld1q_u64(data + i - q);
    uint64x2_t b = vld1q_u64(data + i - q - 1);
    uint64x2_t shifted = vorrq_u64(vshlq_u64(a, left), r == 0 ? vdupq_n_u64(0) : vshlq_u64(b, right));
    total += popcount_pair(vbicq_u64(cur, shifted));
  }
  for (; i < n; ++i) {
    std::uint64_t shifted = data[i - q] << r;
    if (r != 0) shifted |= data[i - q - 1] >> (64 - r);
    total += static_cast<std::uint64_t>(std::popcount(data[i] & ~shifted));
  }
  return total;
}

}  // namespace

const KernelTable neon_table{Isa::Neon, &shift_or, &popcount, &chain_starts};

}  // namespace subsum::kernels::detail
