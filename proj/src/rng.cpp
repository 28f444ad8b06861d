#include "qd/rng.hpp"

#include <cmath>

namespace qd {

namespace {

// splitmix64 finalizer, used to decorrelate derived seeds.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

std::uint64_t SeededRng::next_u64() { return gen_(); }

double SeededRng::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double SeededRng::gaussian() {
  if (have_cached_gaussian_) {
    have_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  cached_gaussian_ = r * std::sin(kTwoPi * u2);
  have_cached_gaussian_ = true;
  return r * std::cos(kTwoPi * u2);
}

std::complex<double> SeededRng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

std::vector<double> SeededRng::dirichlet_flat(int n) {
  std::vector<double> p(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (auto& x : p) {
    x = -std::log(1.0 - uniform());
    sum += x;
  }
  for (auto& x : p) x /= sum;
  return p;
}

SeededRng SeededRng::derive(std::uint64_t index) const {
  return SeededRng(mix64(seed_ ^ mix64(index + 1)));
}

}  // namespace qd
