#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <variant>
#include <vector>

#include "entrosep/matrix.hpp"

namespace entrosep {

// Composite index convention, used by every multipartite operation in this
// library: with subsystem dimensions (d_0, ..., d_{k-1}), basis index
//   i = i_0 * (d_1 * ... * d_{k-1}) + i_1 * (d_2 * ... * d_{k-1}) + ... + i_{k-1},
// i.e. subsystem 0 varies slowest. This matches kron(a, b) placing `a` on
// subsystem 0.

namespace detail {

inline std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

inline std::size_t product_of(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (std::size_t d : dims) p *= d;
  return p;
}

}  // namespace detail

/// Hermitian, PSD (up to numerical slack), unit-trace matrix together with
/// the subsystem factorisation of its index space.
struct DensityMatrix {
  ComplexMatrix matrix;
  std::vector<std::size_t> dims;

  std::size_t dimension() const { return matrix.rows(); }
  std::size_t subsystem_count() const { return dims.size(); }
};

/// Validates the DensityMatrix invariants (Hermitian, trace one, smallest
/// eigenvalue above -tol::kPsdClip) and returns the state.
inline DensityMatrix validated_density(ComplexMatrix matrix, std::vector<std::size_t> dims) {
  if (dims.empty()) throw BadSubsystemSetError("dims must contain at least one subsystem");
  for (std::size_t d : dims)
    if (d < 2) throw BadSubsystemSetError("subsystem dimensions must be >= 2");
  if (matrix.rows() != matrix.cols() || detail::product_of(dims) != matrix.rows())
    throw DomainError("product of dims must equal matrix order");
  if (!matrix.is_hermitian()) throw NotHermitianError("density matrix is not Hermitian");
  if (std::abs(matrix.trace() - Complex{1.0, 0.0}) > tol::kTraceOne)
    throw DomainError("density matrix trace differs from 1");
  const auto eig = eig_hermitian(matrix);
  if (eig.eigenvalues.back() < -tol::kPsdClip)
    throw DomainError("density matrix has an eigenvalue below -1e-8");
  return DensityMatrix{std::move(matrix), std::move(dims)};
}

/// Rank-one density |psi><psi| / <psi|psi>.
inline DensityMatrix pure_state(const std::vector<Complex>& amplitudes,
                                std::vector<std::size_t> dims) {
  if (detail::product_of(dims) != amplitudes.size())
    throw DomainError("amplitude count must equal the product of dims");
  double norm2 = 0.0;
  for (const Complex& c : amplitudes) norm2 += std::norm(c);
  if (norm2 <= 0.0) throw DomainError("cannot normalise the zero vector");
  ComplexMatrix m(amplitudes.size(), amplitudes.size());
  for (std::size_t i = 0; i < amplitudes.size(); ++i)
    for (std::size_t j = 0; j < amplitudes.size(); ++j)
      m(i, j) = amplitudes[i] * std::conj(amplitudes[j]) / norm2;
  return DensityMatrix{std::move(m), std::move(dims)};
}

// State families analysed by the criteria battery. The free parameter x is
// the weight of the entangled component in each mixture.

struct SingletPolarized {
  double x;  // x|S><S| + (1-x)|00><00|, S the two-qubit singlet
};

struct SingletProduct {
  double x;
  std::array<Complex, 2> u;  // x|S><S| + (1-x)|uv><uv|
  std::array<Complex, 2> v;
};

struct PsiMixture {
  double x;      // x|psi><psi| + (1-x)(|00><00|+|11><11|)/2
  Complex a, b;  // |psi> = a|01> + b|10>, |a|^2+|b|^2 = 1
};

struct BellDiagonal {
  std::array<double, 4> weights;  // mixture of the four Bell projectors
};

struct WernerPopescu {
  double x;  // x|S><S| + (1-x) I/4
};

struct GhzWerner {
  double x;  // x|GHZ><GHZ| + (1-x) I/d^n on n qudits of dimension d
  std::size_t d = 2;
  std::size_t n = 2;
};

using StateFamily =
    std::variant<SingletPolarized, SingletProduct, PsiMixture, BellDiagonal, WernerPopescu, GhzWerner>;

namespace detail {

inline void require_unit_interval(double x) {
  if (!(x >= -tol::kFamilyParams && x <= 1.0 + tol::kFamilyParams))
    throw InvalidFamilyParamsError("mixing parameter x must lie in [0,1]");
}

inline void require_unit_vector(const std::array<Complex, 2>& v, const char* name) {
  const double n2 = std::norm(v[0]) + std::norm(v[1]);
  if (std::abs(n2 - 1.0) > tol::kFamilyParams)
    throw InvalidFamilyParamsError(std::string(name) + " must be a unit vector");
}

// Two-qubit kets in the composite basis (00, 01, 10, 11).
inline std::vector<Complex> singlet_ket() {
  const double r = 1.0 / std::sqrt(2.0);
  return {0.0, r, -r, 0.0};
}

inline std::vector<Complex> bell_ket(int which) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (which) {
    case 0: return {0.0, r, -r, 0.0};
    case 1: return {0.0, r, r, 0.0};
    case 2: return {r, 0.0, 0.0, r};
    default: return {r, 0.0, 0.0, -r};
  }
}

inline ComplexMatrix projector(const std::vector<Complex>& psi) {
  ComplexMatrix p(psi.size(), psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j) p(i, j) = psi[i] * std::conj(psi[j]);
  return p;
}

inline ComplexMatrix mix(double x, const ComplexMatrix& entangled, const ComplexMatrix& rest) {
  ComplexMatrix m = entangled;
  m *= Complex{x, 0.0};
  ComplexMatrix r = rest;
  r *= Complex{1.0 - x, 0.0};
  m += r;
  return m;
}

}  // namespace detail

/// Builds the density matrix of a parametrised family. Throws
/// InvalidFamilyParamsError when the family invariants are violated.
inline DensityMatrix make_density(const StateFamily& family) {
  using namespace detail;
  return std::visit(
      [](const auto& fam) -> DensityMatrix {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, SingletPolarized>) {
          require_unit_interval(fam.x);
          const ComplexMatrix rho =
              mix(fam.x, projector(singlet_ket()), projector({1.0, 0.0, 0.0, 0.0}));
          return DensityMatrix{rho, {2, 2}};
        } else if constexpr (std::is_same_v<T, SingletProduct>) {
          require_unit_interval(fam.x);
          require_unit_vector(fam.u, "u");
          require_unit_vector(fam.v, "v");
          const std::vector<Complex> uv = {fam.u[0] * fam.v[0], fam.u[0] * fam.v[1],
                                           fam.u[1] * fam.v[0], fam.u[1] * fam.v[1]};
          const ComplexMatrix rho = mix(fam.x, projector(singlet_ket()), projector(uv));
          return DensityMatrix{rho, {2, 2}};
        } else if constexpr (std::is_same_v<T, PsiMixture>) {
          require_unit_interval(fam.x);
          if (std::abs(std::norm(fam.a) + std::norm(fam.b) - 1.0) > tol::kFamilyParams)
            throw InvalidFamilyParamsError("|a|^2 + |b|^2 must equal 1");
          ComplexMatrix rest = projector({1.0, 0.0, 0.0, 0.0});
          rest += projector({0.0, 0.0, 0.0, 1.0});
          rest *= Complex{0.5, 0.0};
          const ComplexMatrix rho = mix(fam.x, projector({0.0, fam.a, fam.b, 0.0}), rest);
          return DensityMatrix{rho, {2, 2}};
        } else if constexpr (std::is_same_v<T, BellDiagonal>) {
          double sum = 0.0;
          for (double w : fam.weights) {
            if (w < -tol::kFamilyParams)
              throw InvalidFamilyParamsError("Bell weights must be non-negative");
            sum += w;
          }
          if (std::abs(sum - 1.0) > tol::kFamilyParams)
            throw InvalidFamilyParamsError("Bell weights must sum to 1");
          ComplexMatrix rho(4, 4);
          for (int i = 0; i < 4; ++i) {
            ComplexMatrix p = projector(bell_ket(i));
            p *= Complex{fam.weights[static_cast<std::size_t>(i)], 0.0};
            rho += p;
          }
          return DensityMatrix{rho, {2, 2}};
        } else if constexpr (std::is_same_v<T, WernerPopescu>) {
          require_unit_interval(fam.x);
          ComplexMatrix id = ComplexMatrix::identity(4);
          id *= Complex{0.25, 0.0};
          const ComplexMatrix rho = mix(fam.x, projector(singlet_ket()), id);
          return DensityMatrix{rho, {2, 2}};
        } else {
          static_assert(std::is_same_v<T, GhzWerner>);
          require_unit_interval(fam.x);
          if (fam.d < 2) throw InvalidFamilyParamsError("local dimension d must be >= 2");
          if (fam.n < 2) throw InvalidFamilyParamsError("qudit count n must be >= 2");
          std::size_t total = 1;
          for (std::size_t i = 0; i < fam.n; ++i) total *= fam.d;
          std::vector<Complex> ghz(total, Complex{0.0, 0.0});
          // |k k ... k> sits at composite index k * (d^n - 1)/(d - 1).
          const std::size_t step = (total - 1) / (fam.d - 1);
          const double amp = 1.0 / std::sqrt(static_cast<double>(fam.d));
          for (std::size_t k = 0; k < fam.d; ++k) ghz[k * step] = amp;
          ComplexMatrix id = ComplexMatrix::identity(total);
          id *= Complex{1.0 / static_cast<double>(total), 0.0};
          const ComplexMatrix rho = mix(fam.x, projector(ghz), id);
          return DensityMatrix{rho, std::vector<std::size_t>(fam.n, fam.d)};
        }
      },
      family);
}

namespace detail {

inline void require_valid_subset(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
  if (keep.empty()) throw BadSubsystemSetError("subsystem set must be nonempty");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= rho.dims.size()) throw BadSubsystemSetError("subsystem index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw BadSubsystemSetError("subsystem indices must be strictly increasing");
  }
}

}  // namespace detail

/// Partial trace keeping the subsystems in `keep` (sorted, strict subset).
inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
  detail::require_valid_subset(rho, keep);
  if (keep.size() >= rho.dims.size())
    throw BadSubsystemSetError("subsystem set must be a strict subset");

  std::vector<std::size_t> traced;
  for (std::size_t k = 0; k < rho.dims.size(); ++k)
    if (std::find(keep.begin(), keep.end(), k) == keep.end()) traced.push_back(k);

  const auto strides = detail::strides_of(rho.dims);
  std::vector<std::size_t> keep_dims, traced_dims;
  for (std::size_t k : keep) keep_dims.push_back(rho.dims[k]);
  for (std::size_t k : traced) traced_dims.push_back(rho.dims[k]);
  const std::size_t dk = detail::product_of(keep_dims);
  const std::size_t dt = detail::product_of(traced_dims);

  // Offset of a flattened keep-index (resp. traced-index) inside the
  // original composite index.
  const auto offsets = [&](const std::vector<std::size_t>& subs,
                           const std::vector<std::size_t>& sub_dims, std::size_t count) {
    std::vector<std::size_t> off(count, 0);
    for (std::size_t flat = 0; flat < count; ++flat) {
      std::size_t rem = flat, acc = 0;
      for (std::size_t a = sub_dims.size(); a-- > 0;) {
        acc += (rem % sub_dims[a]) * strides[subs[a]];
        rem /= sub_dims[a];
      }
      off[flat] = acc;
    }
    return off;
  };
  const std::vector<std::size_t> keep_off = offsets(keep, keep_dims, dk);
  const std::vector<std::size_t> traced_off = offsets(traced, traced_dims, dt);

  ComplexMatrix out(dk, dk);
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < dt; ++t)
        acc += rho.matrix(keep_off[i] + traced_off[t], keep_off[j] + traced_off[t]);
      out(i, j) = acc;
    }
  return DensityMatrix{std::move(out), std::move(keep_dims)};
}

/// Partial transpose with respect to a set of subsystems. The result is
/// Hermitian and unit trace but in general not positive semidefinite.
inline ComplexMatrix partial_transpose(const DensityMatrix& rho,
                                       const std::vector<std::size_t>& subsystems) {
  detail::require_valid_subset(rho, subsystems);
  const auto strides = detail::strides_of(rho.dims);
  const std::size_t dim = rho.dimension();

  ComplexMatrix out(dim, dim);
  std::vector<std::size_t> ri(rho.dims.size()), ci(rho.dims.size());
  for (std::size_t r = 0; r < dim; ++r) {
    std::size_t rem = r;
    for (std::size_t k = 0; k < rho.dims.size(); ++k) {
      ri[k] = rem / strides[k];
      rem %= strides[k];
    }
    for (std::size_t c = 0; c < dim; ++c) {
      rem = c;
      for (std::size_t k = 0; k < rho.dims.size(); ++k) {
        ci[k] = rem / strides[k];
        rem %= strides[k];
      }
      std::size_t rr = 0, cc = 0;
      for (std::size_t k = 0; k < rho.dims.size(); ++k) {
        const bool swap = std::find(subsystems.begin(), subsystems.end(), k) != subsystems.end();
        rr += (swap ? ci[k] : ri[k]) * strides[k];
        cc += (swap ? ri[k] : ci[k]) * strides[k];
      }
      out(rr, cc) = rho.matrix(r, c);
    }
  }
  return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, std::size_t subsystem) {
  if (subsystem >= rho.dims.size()) throw BadSubsystemIndexError("subsystem index out of range");
  return partial_transpose(rho, std::vector<std::size_t>{subsystem});
}

/// rho_A (x) I_B - rho, where A is the given subsystem set. Non-negative for
/// every separable state.
inline ComplexMatrix reduction_operator(const DensityMatrix& rho,
                                        const std::vector<std::size_t>& subsystem_a) {
  detail::require_valid_subset(rho, subsystem_a);
  if (subsystem_a.size() >= rho.dims.size())
    throw BadSubsystemSetError("subsystem set must be a strict subset");
  const DensityMatrix reduced = partial_trace(rho, subsystem_a);
  const auto strides = detail::strides_of(rho.dims);

  std::vector<std::size_t> a_dims;
  for (std::size_t k : subsystem_a) a_dims.push_back(rho.dims[k]);
  const auto a_strides = detail::strides_of(a_dims);
  const std::size_t dim = rho.dimension();

  // Row index split into (index within A, index within the complement).
  const auto split = [&](std::size_t idx) {
    std::size_t a = 0, b = 0;
    for (std::size_t k = 0, ak = 0; k < rho.dims.size(); ++k) {
      const std::size_t comp = idx / strides[k];
      idx %= strides[k];
      if (ak < subsystem_a.size() && subsystem_a[ak] == k) {
        a += comp * a_strides[ak];
        ++ak;
      } else {
        b = b * rho.dims[k] + comp;
      }
    }
    return std::pair<std::size_t, std::size_t>{a, b};
  };

  ComplexMatrix out(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const auto [ra, rb] = split(r);
    for (std::size_t c = 0; c < dim; ++c) {
      const auto [ca, cb] = split(c);
      const Complex embedded = (rb == cb) ? reduced.matrix(ra, ca) : Complex{0.0, 0.0};
      out(r, c) = embedded - rho.matrix(r, c);
    }
  }
  return out;
}

inline ComplexMatrix reduction_operator(const DensityMatrix& rho, std::size_t subsystem) {
  if (rho.dims.size() != 2)
    throw BadSubsystemIndexError("single-index reduction requires a bipartite factorisation");
  if (subsystem >= 2) throw BadSubsystemIndexError("subsystem index out of range");
  return reduction_operator(rho, std::vector<std::size_t>{subsystem});
}

/// Reinterprets the first `split` subsystems as one factor and the rest as
/// the other. Pure dims bookkeeping; the matrix is untouched.
inline DensityMatrix regroup_bipartite(const DensityMatrix& rho, std::size_t split) {
  if (split == 0 || split >= rho.dims.size())
    throw BadSubsystemIndexError("split must leave subsystems on both sides");
  std::size_t da = 1, db = 1;
  for (std::size_t k = 0; k < rho.dims.size(); ++k) (k < split ? da : db) *= rho.dims[k];
  return DensityMatrix{rho.matrix, {da, db}};
}

/// SplitMix64: counter-based generator with the Steele-Lea-Flood update
/// rule. The 64-bit seed fully determines every draw.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller.
  double gaussian() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

 private:
  std::uint64_t state_;
};

/// Convex combination of `num_terms` random product states
/// sum_a w_a |psi_A^a><psi_A^a| (x) |psi_B^a><psi_B^a|,
/// separable by construction and fully determined by the seed.
inline DensityMatrix sample_separable(std::uint64_t seed, std::array<std::size_t, 2> dims,
                                      std::size_t num_terms) {
  if (num_terms < 1) throw DomainError("num_terms must be >= 1");
  if (dims[0] < 2 || dims[1] < 2) throw BadSubsystemSetError("subsystem dimensions must be >= 2");
  SplitMix64 rng(seed);

  const auto random_pure = [&](std::size_t d) {
    std::vector<Complex> psi(d);
    double n2 = 0.0;
    do {
      for (auto& c : psi) c = Complex{rng.gaussian(), rng.gaussian()};
      n2 = 0.0;
      for (const auto& c : psi) n2 += std::norm(c);
    } while (n2 <= 1e-30);
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& c : psi) c *= inv;
    return psi;
  };

  std::vector<double> weights(num_terms);
  double wsum = 0.0;
  for (auto& w : weights) {
    w = -std::log(1.0 - rng.uniform());
    wsum += w;
  }

  ComplexMatrix rho(dims[0] * dims[1], dims[0] * dims[1]);
  for (std::size_t t = 0; t < num_terms; ++t) {
    const auto a = detail::projector(random_pure(dims[0]));
    const auto b = detail::projector(random_pure(dims[1]));
    ComplexMatrix term = kron(a, b);
    term *= Complex{weights[t] / wsum, 0.0};
    rho += term;
  }
  return DensityMatrix{std::move(rho), {dims[0], dims[1]}};
}

}  // namespace entrosep
