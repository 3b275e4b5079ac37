#include <bit>

#include "subsum/kernels.hpp"

namespace subsum::kernels::detail {
namespace {

void shift_or(std::span<std::uint64_t> w, std::uint64_t shift) {
  const std::size_t n = w.size();
  const std::uint64_t q = shift / 64;
  const unsigned r = static_cast<unsigned>(shift % 64);
  if (q >= n) return;
  // Descending order: every source index is <= the destination, so reads see
  // the original words.
  for (std::size_t i = n; i-- > q;) {
    std::uint64_t v = w[i - q] << r;
    if (r != 0 && i >= q + 1) v |= w[i - q - 1] >> (64 - r);
    w[i] |= v;
  }
}

std::uint64_t popcount(std::span<const std::uint64_t> w) {
  std::uint64_t total = 0;
  for (auto x : w) total += static_cast<std::uint64_t>(std::popcount(x));
  return total;
}

std::uint64_t chain_starts(std::span<const std::uint64_t> w, std::uint64_t shift) {
  const std::size_t n = w.size();
  const std::uint64_t q = shift / 64;
  const unsigned r = static_cast<unsigned>(shift % 64);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t shifted = 0;
    if (i >= q) shifted = w[i - q] << r;
    if (r != 0 && i >= q + 1) shifted |= w[i - q - 1] >> (64 - r);
    total += static_cast<std::uint64_t>(std::popcount(w[i] & ~shifted));
  }
  return total;
}

}  // namespace

const KernelTable scalar_table{Isa::Scalar, &shift_or, &popcount, &chain_starts};

}  // namespace subsum::kernels::detail
