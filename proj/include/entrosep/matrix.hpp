#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "entrosep/errors.hpp"
#include "entrosep/tolerances.hpp"

namespace entrosep {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Small orders only (the states handled
/// here stay below ~2^10), so everything is O(n^3) without apology.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {
    if (rows == 0 || cols == 0) throw DomainError("matrix dimensions must be >= 1");
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  bool is_hermitian(double rel_tol = tol::kHermitian) const {
    if (rows_ != cols_) return false;
    const double scale = std::max(max_abs(), 1e-300);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > rel_tol * scale) return false;
    return true;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ComplexMatrix& operator*=(Complex c) {
    for (auto& z : data_) z *= c;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex c) { return a *= c; }
  friend ComplexMatrix operator*(Complex c, ComplexMatrix a) { return a *= c; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product shape mismatch");
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

 private:
  void require_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix shape mismatch");
  }

  std::size_t rows_, cols_;
  std::vector<Complex> data_;
};

/// Kronecker product: entry ((i*b.rows+k),(j*b.cols+l)) = a(i,j)*b(k,l).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending, ties kept in original order
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

/// Per-sweep diagnostics of the Jacobi iteration, for callers that want to
/// check norm preservation or convergence behaviour.
struct JacobiStats {
  int sweeps = 0;
  std::vector<double> frobenius_per_sweep;
  std::vector<double> offdiag_per_sweep;
};

namespace detail {

inline double offdiag_frobenius(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p + 1 < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.rows(); ++q) s += std::norm(a(p, q));
  return std::sqrt(2.0 * s);
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi with complex
/// 2x2 rotations. Sweeps run until the off-diagonal Frobenius norm drops
/// below tol::kOffDiagonal times the matrix Frobenius norm.
///
/// Throws NotHermitianError when the input fails the Hermiticity check and
/// NoConvergenceError when tol::kMaxSweeps sweeps are not enough.
inline EigenDecomposition eig_hermitian(const ComplexMatrix& a, JacobiStats* stats = nullptr) {
  if (a.rows() != a.cols()) throw NotHermitianError("matrix is not square");
  if (!a.is_hermitian()) throw NotHermitianError("matrix is not Hermitian within tolerance");

  const std::size_t n = a.rows();
  // Work on the exact Hermitian part; real diagonal from the start.
  ComplexMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      w(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));

  ComplexMatrix v = ComplexMatrix::identity(n);
  const double fro = w.frobenius_norm();
  const double stop = tol::kOffDiagonal * fro;

  bool converged = (n == 1) || detail::offdiag_frobenius(w) <= stop;
  int sweep = 0;
  while (!converged && sweep < tol::kMaxSweeps) {
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex gamma = w(p, q);
        const double ag = std::abs(gamma);
        if (ag <= stop / (static_cast<double>(n) * static_cast<double>(n))) continue;

        const double alpha = w(p, p).real();
        const double beta = w(q, q).real();
        const Complex phase = gamma / ag;
        const double theta = (beta - alpha) / (2.0 * ag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const Complex s = phase * (t * c);

        w(p, p) = alpha - t * ag;
        w(q, q) = beta + t * ag;
        w(p, q) = 0.0;
        w(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex wkp = w(k, p);
          const Complex wkq = w(k, q);
          w(k, p) = c * wkp - std::conj(s) * wkq;
          w(k, q) = s * wkp + c * wkq;
          w(p, k) = std::conj(w(k, p));
          w(q, k) = std::conj(w(k, q));
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - std::conj(s) * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    const double off = detail::offdiag_frobenius(w);
    if (stats != nullptr) {
      stats->frobenius_per_sweep.push_back(w.frobenius_norm());
      stats->offdiag_per_sweep.push_back(off);
    }
    converged = off <= stop;
  }
  if (stats != nullptr) stats->sweeps = sweep;
  if (!converged) throw NoConvergenceError("Jacobi iteration did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return w(i, i).real() > w(j, j).real(); });

  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = w(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

/// Spectral functional: f(A) = V f(Lambda) V^H for Hermitian A.
inline ComplexMatrix matrix_function(const ComplexMatrix& a,
                                     const std::function<double(double)>& scalar_fn) {
  const EigenDecomposition eig = eig_hermitian(a);
  const std::size_t n = a.rows();
  const ComplexMatrix& v = eig.eigenvectors;
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = scalar_fn(eig.eigenvalues[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = v(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(v(j, k));
    }
  }
  // Clean rounding noise off the result's Hermitian structure.
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = Complex{out(i, i).real(), 0.0};
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (out(i, j) + std::conj(out(j, i)));
      out(i, j) = avg;
      out(j, i) = std::conj(avg);
    }
  }
  return out;
}

}  // namespace entrosep
