#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace avqa {

/// 64-bit finalizer from SplitMix64.
std::uint64_t mix64(std::uint64_t x);

/// FNV-1a over the bytes of a label.
std::uint64_t hash_label(std::string_view label);

/// Order-sensitive combination of two 64-bit values.
std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b);

/**
 * Counter-based pseudo-random stream.
 *
 * Output k is mix64(key + k * golden), so the state is just (key, counter)
 * and a child stream depends only on the parent key and a label, never on
 * how many draws the parent has made. All sampling helpers are implemented
 * here rather than through <random> distributions so that sequences are
 * identical across standard libraries.
 */
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::string label = "root");

  [[nodiscard]] RngStream split(std::string_view label) const;

  result_type next();
  result_type operator()() { return next(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  /// Uniform on {0, ..., n-1}; n must be positive.
  std::size_t index(std::size_t n);
  /// Uniform on the closed range [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p);
  /// Inverse-CDF sample: -mean * ln(1 - u).
  double exponential(double mean);
  double normal();

  [[nodiscard]] std::uint64_t seed() const { return key_; }
  [[nodiscard]] const std::string& label() const { return label_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::string label_;
};

}  // namespace avqa
