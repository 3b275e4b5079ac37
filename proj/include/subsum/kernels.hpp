#pragma once

// Word-parallel kernels behind the dense subset-sum engine. Bit k of a word
// array encodes membership of offset k. Each kernel has a scalar reference
// implementation and optional SIMD variants; the active variant is chosen
// once at runtime from the CPU's capabilities and can be overridden for
// equivalence testing (or with SUBSUM_KERNEL=scalar|avx2|neon).

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace subsum::kernels {

enum class Isa { Scalar, Avx2, Neon };

struct KernelTable {
  Isa isa;
  // words |= words << shift, truncated to words.size() words.
  void (*shift_or)(std::span<std::uint64_t> words, std::uint64_t shift);
  std::uint64_t (*popcount)(std::span<const std::uint64_t> words);
  // popcount(words & ~(words << shift)): members k with k - shift absent.
  std::uint64_t (*chain_starts)(std::span<const std::uint64_t> words, std::uint64_t shift);
};

std::string_view name(Isa isa);
bool supported(Isa isa);
std::vector<Isa> available();

const KernelTable& table(Isa isa);  // throws InvalidArgument when unsupported
const KernelTable& active();
void select(Isa isa);

// Scoped override used by tests and benchmarks.
class ScopedIsa {
 public:
  explicit ScopedIsa(Isa isa);
  ~ScopedIsa();
  ScopedIsa(const ScopedIsa&) = delete;
  ScopedIsa& operator=(const ScopedIsa&) = delete;

 private:
  Isa previous_;
};

namespace detail {
extern const KernelTable scalar_table;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable avx2_table;
#endif
#if defined(__aarch64__)
extern const KernelTable neon_table;
#endif
}  // namespace detail

}  // namespace subsum::kernels
