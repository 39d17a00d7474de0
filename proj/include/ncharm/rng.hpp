#pragma once

// Deterministic random number generation for corpora. splitmix64 plus
// Box-Muller, so streams are bit-identical across platforms and standard
// libraries; std::normal_distribution is implementation-defined and is
// deliberately not used.

#include "ncharm/matrix.hpp"

#include <cstdint>

namespace ncharm {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in (0, 1]; never returns 0 so logs are safe.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  double gaussian() {
    const double u = uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(kTwoPi * v);
  }

  Complex complex_gaussian() {
    const double u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-std::log(u));
    return r * std::exp(Complex(0.0, kTwoPi * v));
  }

  Matrix gaussian_matrix(int d) {
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = complex_gaussian();
    return m;
  }

  /// Derived stream for item k; decorrelates parallel per-item work.
  Rng fork(std::uint64_t k) const {
    Rng r(state_ ^ (0xd1342543de82ef95ULL * (k + 1)));
    r.next_u64();
    return r;
  }

 private:
  std::uint64_t state_;
};

}  // namespace ncharm
