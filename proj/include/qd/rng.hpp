#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace qd {

/// Deterministic random source. The generator is std::mt19937_64, whose
/// seeding and output sequence are fully specified by the C++ standard, so
/// the same seed yields the same stream on every platform. Gaussian variates
/// are produced by an explicit Box-Muller transform on top of the raw 64-bit
/// stream (std::normal_distribution is implementation-defined and would break
/// cross-platform reproducibility).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal variate.
  double gaussian();

  /// re + i*im with independent standard normal parts.
  std::complex<double> complex_gaussian();

  /// Probability vector of length n, flat-Dirichlet distributed
  /// (normalized i.i.d. exponentials).
  std::vector<double> dirichlet_flat(int n);

  /// Independent child stream determined only by (original seed, index).
  /// The parent's position does not matter, so parallel consumers derived
  /// from distinct indices always see the same streams.
  SeededRng derive(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  bool have_cached_gaussian_ = false;
  double cached_gaussian_ = 0.0;
};

}  // namespace qd
