// Deterministic counter-based random streams.
//
// Every random decision in the engine draws from a stream keyed by
// (master seed, derivation path).  Child streams are derived from the
// parent's key, never from its draw position, so the sequence observed
// at any path is independent of call order and thread scheduling.
#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace veritas {

namespace detail {

// SplitMix64 finalizer: bijective 64-bit mix with good avalanche.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// FNV-1a over the label bytes; feeds the key derivation below.
inline std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace detail

class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed)
      : key_(detail::mix64(master_seed ^ 0x7665726974617321ull)), counter_(0) {}

  // Derive an independent child stream for (kind, id, index).  Derivation
  // uses only the key, so a stream may spawn children before, after, or
  // between its own draws without perturbing them.
  RngStream child(std::string_view kind, std::string_view id = {},
                  std::uint64_t index = 0) const {
    std::uint64_t k = key_;
    k = detail::mix64(k ^ detail::hash_label(kind));
    k = detail::mix64(k ^ detail::hash_label(id));
    k = detail::mix64(k ^ index);
    return RngStream(k, 0);
  }

  std::uint64_t next_u64() { return detail::mix64(key_ + ++counter_ * 0x9E3779B97F4A7C15ull); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_unit() < p; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Index in [0, n); n must be positive.
  std::size_t uniform_index(std::size_t n) {
    auto i = static_cast<std::size_t>(next_unit() * double(n));
    return i < n ? i : n - 1;
  }

  // Standard normal via Box-Muller; consumes exactly two draws.
  double gaussian() {
    double u1 = double((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1], log-safe
    double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  std::uint64_t key() const { return key_; }

 private:
  RngStream(std::uint64_t key, std::uint64_t counter) : key_(key), counter_(counter) {}

  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace veritas
