#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "wnr/matrix.hpp"

namespace wnr {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// Deterministic random source. Normal variates use Box-Muller on raw
/// mt19937_64 output so streams are reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : gen_(seed) {}

  double uniform() {  // in (0, 1]
    return (double(gen_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  cplx complex_normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(6.283185307179586 * u2), r * std::sin(6.283185307179586 * u2)};
  }

  std::uint64_t bits() { return gen_(); }

  /// Integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }

  ComplexMatrix matrix(int n) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = complex_normal();
    return m;
  }

  ComplexMatrix hermitian(int n) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) {
      m(i, i) = normal();
      for (int j = i + 1; j < n; ++j) {
        const cplx z = complex_normal();
        m(i, j) = z;
        m(j, i) = std::conj(z);
      }
    }
    return m;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace wnr
