// SPDX-License-Identifier: Apache-2.0
#ifndef GEC_BLOOM_HPP
#define GEC_BLOOM_HPP

#include "gec/error.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string_view>
#include <utility>
#include <vector>

namespace gec {

namespace hash {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// MurmurHash64A (Austin Appleby), little-endian block reads.
inline std::uint64_t murmur64(std::string_view data, std::uint64_t seed) noexcept {
  constexpr std::uint64_t m = 0xC6A4A7935BD1E995ULL;
  constexpr int r = 47;
  std::uint64_t h = seed ^ (data.size() * m);
  const auto *p = reinterpret_cast<const unsigned char *>(data.data());
  std::size_t len = data.size();
  while (len >= 8) {
    std::uint64_t k = 0;
    for (int i = 7; i >= 0; --i)
      k = (k << 8) | p[i];
    k *= m;
    k ^= k >> r;
    k *= m;
    h ^= k;
    h *= m;
    p += 8;
    len -= 8;
  }
  switch (len) {
  case 7: h ^= std::uint64_t(p[6]) << 48; [[fallthrough]];
  case 6: h ^= std::uint64_t(p[5]) << 40; [[fallthrough]];
  case 5: h ^= std::uint64_t(p[4]) << 32; [[fallthrough]];
  case 4: h ^= std::uint64_t(p[3]) << 24; [[fallthrough]];
  case 3: h ^= std::uint64_t(p[2]) << 16; [[fallthrough]];
  case 2: h ^= std::uint64_t(p[1]) << 8; [[fallthrough]];
  case 1:
    h ^= std::uint64_t(p[0]);
    h *= m;
    break;
  default: break;
  }
  h ^= h >> r;
  h *= m;
  h ^= h >> r;
  return h;
}

/// FNV-1a, used as a container checksum.
inline std::uint64_t fnv1a(std::string_view data) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

} // namespace hash

struct BloomParams {
  std::uint64_t bits = 0;   // m
  std::uint32_t hashes = 7; // k
  std::uint64_t seed = 0x5A524D41ULL;

  friend bool operator==(const BloomParams &, const BloomParams &) = default;
};

/// Fixed-size Bloom filter with double hashing:
/// probe_i(w) = (h1(w) + i * h2(w)) mod m, i = 0..k-1.
class BloomFilter {
public:
  explicit BloomFilter(BloomParams params) : params_(params) {
    if (params_.bits == 0)
      throw ParameterError("bloom filter needs m > 0 bits");
    if (params_.hashes == 0)
      throw ParameterError("bloom filter needs k >= 1 hash functions");
    words_.assign((params_.bits + 63) / 64, 0);
  }

  /// Restores a filter from stored words. Bits beyond m must be zero.
  BloomFilter(BloomParams params, std::vector<std::uint64_t> words, std::uint64_t inserted)
      : BloomFilter(params) {
    if (words.size() != words_.size())
      throw FormatError("bloom bit array length does not match m");
    if (params_.bits % 64 != 0 && (words.back() >> (params_.bits % 64)) != 0)
      throw FormatError("bloom bit array has bits set beyond m");
    words_ = std::move(words);
    inserted_ = inserted;
  }

  void insert(std::string_view w) noexcept {
    const auto [h1, h2] = base_hashes(w);
    for (std::uint32_t i = 0; i < params_.hashes; ++i) {
      const std::uint64_t bit = (h1 + i * h2) % params_.bits;
      words_[bit / 64] |= std::uint64_t{1} << (bit % 64);
    }
    ++inserted_;
  }

  bool query(std::string_view w) const noexcept {
    const auto [h1, h2] = base_hashes(w);
    for (std::uint32_t i = 0; i < params_.hashes; ++i) {
      const std::uint64_t bit = (h1 + i * h2) % params_.bits;
      if (!(words_[bit / 64] >> (bit % 64) & 1))
        return false;
    }
    return true;
  }

  /// Theoretical false-positive rate (1 - e^(-kn/m))^k at the current load.
  double expected_false_positive_rate() const noexcept {
    const double k = params_.hashes;
    const double exponent = -k * static_cast<double>(inserted_) / static_cast<double>(params_.bits);
    return std::pow(1.0 - std::exp(exponent), k);
  }

  std::uint64_t popcount() const noexcept {
    std::uint64_t n = 0;
    for (auto w : words_)
      n += static_cast<std::uint64_t>(std::popcount(w));
    return n;
  }

  const BloomParams &params() const noexcept { return params_; }
  std::uint64_t inserted() const noexcept { return inserted_; }
  const std::vector<std::uint64_t> &words() const noexcept { return words_; }

  friend bool operator==(const BloomFilter &, const BloomFilter &) = default;

private:
  std::pair<std::uint64_t, std::uint64_t> base_hashes(std::string_view w) const noexcept {
    const std::uint64_t h1 = hash::murmur64(w, params_.seed);
    const std::uint64_t h2 = hash::murmur64(w, hash::splitmix64(params_.seed)) | 1;
    return {h1, h2};
  }

  BloomParams params_;
  std::vector<std::uint64_t> words_;
  std::uint64_t inserted_ = 0;
};

} // namespace gec

#endif // GEC_BLOOM_HPP
