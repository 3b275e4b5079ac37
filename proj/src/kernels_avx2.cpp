// Compiled with -mavx2 -mpopcnt; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <bit>

#include "subsum/kernels.hpp"

namespace subsum::kernels::detail {
namespace {

// Mula's nibble-lookup popcount, four 64-bit lanes at a time.
inline __m256i popcount_lanes(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, low_mask);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline std::uint64_t horizontal_sum(__m256i acc) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

void shift_or(std::span<std::uint64_t> w, std::uint64_t shift) {
  const std::size_t n = w.size();
  const std::uint64_t q = shift / 64;
  const unsigned r = static_cast<unsigned>(shift % 64);
  if (q >= n) return;
  const __m128i left = _mm_cvtsi32_si128(static_cast<int>(r));
  const __m128i right = _mm_cvtsi32_si128(static_cast<int>(64 - r));  // 64 shifts to zero
  std::uint64_t* data = w.data();

  // Blocks [i-4, i) descending; sources lie at or below the block, so the
  // loads always see original words.
  std::size_t i = n;
  while (i >= q + 5) {
    std::size_t lo = i - 4;
    __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + lo));
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + lo - q));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + lo - q - 1));
    __m256i v = _mm256_or_si256(_mm256_sll_epi64(a, left), _mm256_srl_epi64(b, right));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(data + lo), _mm256_or_si256(cur, v));
    i = lo;
  }
  for (; i-- > q;) {
    std::uint64_t v = data[i - q] << r;
    if (r != 0 && i >= q + 1) v |= data[i - q - 1] >> (64 - r);
    data[i] |= v;
  }
}

std::uint64_t popcount(std::span<const std::uint64_t> w) {
  const std::size_t n = w.size();
  const std::uint64_t* data = w.data();
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i))));
  std::uint64_t total = horizontal_sum(acc);
  for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(data[i]));
  return total;
}

std::uint64_t chain_starts(std::span<const std::uint64_t> w, std::uint64_t shift) {
  const std::size_t n = w.size();
  const std::uint64_t q = shift / 64;
  const unsigned r = static_cast<unsigned>(shift % 64);
  const std::uint64_t* data = w.data();
  std::uint64_t total = 0;

  // Words below q+1 see a partial (or empty) shifted image.
  std::size_t head = static_cast<std::size_t>(std::min<std::uint64_t>(q + 1, n));
  for (std::size_t i = 0; i < head; ++i) {
    std::uint64_t shifted = i >= q ? data[i - q] << r : 0;
    total += static_cast<std::uint64_t>(std::popcount(data[i] & ~shifted));
  }

  const __m128i left = _mm_cvtsi32_si128(static_cast<int>(r));
  const __m128i right = _mm_cvtsi32_si128(static_cast<int>(64 - r));
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = head;
  for (; i + 4 <= n; i += 4) {
    __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i));
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i - q));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i - q - 1));
    __m256i shifted = _mm256_or_si256(_mm256_sll_epi64(a, left), _mm256_srl_epi64(b, right));
    acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_andnot_si256(shifted, cur)));
  }
  total += horizontal_sum(acc);
  for (; i < n; ++i) {
    std::uint64_t shifted = data[i - q] << r;
    if (r != 0) shifted |= data[i - q - 1] >> (64 - r);
    total += static_cast<std::uint64_t>(std::popcount(data[i] & ~shifted));
  }
  return total;
}

}  // namespace

const KernelTable avx2_table{Isa::Avx2, &shift_or, &popcount, &chain_starts};

}  // namespace subsum::kernels::detail
