#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "ksum/numeric.hpp"

namespace ksum {

/// (master, stream) fully determine every value a generator ever produces.
/// Parallel trials take disjoint stream indices off a shared master seed.
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  Seed with_stream(std::uint64_t s) const { return Seed{master, s}; }
};

namespace detail {

inline std::uint64_t avalanche64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Counter-based splitmix64 generator keyed by (master, stream).
///
/// The word stream is part of the on-disk format: every sampler below
/// consumes words in a fixed, platform-independent order, so fixed seeds
/// give byte-identical instances everywhere. Range sampling is by
/// rejection; there is no modulo bias.
class Prng {
 public:
  explicit Prng(Seed s) {
    std::uint64_t a = detail::avalanche64(s.master + 0x243f6a8885a308d3ull);
    std::uint64_t b = detail::avalanche64(s.stream + 0x13198a2e03707344ull);
    state_ = detail::avalanche64(a ^ (b * 0x9e3779b97f4a7c15ull));
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    return detail::avalanche64(z);
  }

  /// Uniform in [0, n), n >= 1. Draws bit_length(n-1) bits per attempt and
  /// rejects values >= n.
  std::uint64_t below_u64(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("below_u64: n must be positive");
    if (n == 1) return 0;
    int bits = 64 - __builtin_clzll(n - 1);
    std::uint64_t mask = (bits == 64) ? ~0ull : ((1ull << bits) - 1);
    for (;;) {
      std::uint64_t w = next_u64() & mask;
      if (w < n) return w;
    }
  }

  /// Uniform in [0, n) for arbitrary-precision n. For n fitting 64 bits
  /// this consumes exactly the same words as below_u64, so small moduli can
  /// take the fast path with bit-identical results.
  Int below(const Int& n) {
    if (n <= 0) throw std::invalid_argument("below: n must be positive");
    if (n == 1) return 0;
    if (mpz_fits_ulong_p(n.get_mpz_t())) {
      return Int(below_u64(mpz_get_ui(n.get_mpz_t())));
    }
    const std::size_t bits = bit_length(n - 1);
    const std::size_t nwords = (bits + 63) / 64;
    const int top_bits = static_cast<int>(bits - 64 * (nwords - 1));
    const std::uint64_t top_mask = (top_bits == 64) ? ~0ull : ((1ull << top_bits) - 1);
    for (;;) {
      Int v = 0;
      for (std::size_t j = 0; j < nwords; ++j) {
        std::uint64_t w = next_u64();
        if (j + 1 == nwords) w &= top_mask;
        Int word(static_cast<unsigned long>(w));
        word <<= 64 * j;
        v |= word;
      }
      if (v < n) return v;
    }
  }

  /// Uniform in [-u, u].
  Int interval(const Int& u) {
    if (u < 1) throw std::invalid_argument("interval: u must be >= 1");
    return below(2 * u + 1) - u;
  }

  /// Uniform t-subset of [0, M), returned sorted ascending (Floyd's
  /// algorithm: one word per slot regardless of collisions).
  std::vector<std::uint32_t> subset(std::uint64_t M, std::uint64_t t) {
    if (t > M) throw std::invalid_argument("subset: t must be <= M");
    std::set<std::uint32_t> chosen;
    for (std::uint64_t i = M - t; i < M; ++i) {
      std::uint64_t j = below_u64(i + 1);
      if (!chosen.insert(static_cast<std::uint32_t>(j)).second)
        chosen.insert(static_cast<std::uint32_t>(i));
    }
    return std::vector<std::uint32_t>(chosen.begin(), chosen.end());
  }

 private:
  std::uint64_t state_ = 0;
};

}  // namespace ksum
