#pragma once

// Shared generators for the test suites. Everything is driven by SplitMix64
// so test runs are reproducible.

#include <vector>

#include "entrosep/entrosep.hpp"

namespace test_helpers {

using entrosep::Complex;
using entrosep::ComplexMatrix;
using entrosep::SplitMix64;

inline ComplexMatrix random_hermitian(SplitMix64& rng, std::size_t n, double scale = 1.0) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = Complex{scale * rng.gaussian(), 0.0};
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex z{scale * rng.gaussian(), scale * rng.gaussian()};
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

// Haar-ish random unitary: Gram-Schmidt on a complex Gaussian matrix.
inline ComplexMatrix random_unitary(SplitMix64& rng, std::size_t n) {
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = Complex{rng.gaussian(), rng.gaussian()};
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      Complex overlap = 0.0;
      for (std::size_t r = 0; r < n; ++r) overlap += std::conj(g(r, prev)) * g(r, c);
      for (std::size_t r = 0; r < n; ++r) g(r, c) -= overlap * g(r, prev);
    }
    double norm2 = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm2 += std::norm(g(r, c));
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t r = 0; r < n; ++r) g(r, c) *= inv;
  }
  return g;
}

inline std::vector<Complex> random_ket(SplitMix64& rng, std::size_t n) {
  std::vector<Complex> psi(n);
  double norm2 = 0.0;
  for (auto& c : psi) {
    c = Complex{rng.gaussian(), rng.gaussian()};
    norm2 += std::norm(c);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& c : psi) c *= inv;
  return psi;
}

// Full-rank random density matrix: G G^H / Tr(G G^H).
inline entrosep::DensityMatrix random_density(SplitMix64& rng, std::vector<std::size_t> dims) {
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = Complex{rng.gaussian(), rng.gaussian()};
  ComplexMatrix w = g * g.adjoint();
  w *= Complex{1.0 / w.trace().real(), 0.0};
  return entrosep::DensityMatrix{std::move(w), std::move(dims)};
}

// Random point on the probability simplex, descending.
inline std::vector<double> random_simplex(SplitMix64& rng, std::size_t n) {
  std::vector<double> p(n);
  double sum = 0.0;
  for (auto& v : p) {
    v = -std::log(1.0 - rng.uniform());
    sum += v;
  }
  for (auto& v : p) v /= sum;
  std::sort(p.begin(), p.end(), std::greater<double>());
  return p;
}

}  // namespace test_helpers
