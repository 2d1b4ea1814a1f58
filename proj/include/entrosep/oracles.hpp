#pragma once

// Closed-form critical values for the analysed state families. Everything
// here is scalar arithmetic on the family parameters -- no matrices, no
// eigensolver -- so these results are an independent cross-check of the
// numerical pipeline.

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string_view>

#include "entrosep/errors.hpp"

namespace entrosep::oracles {

namespace detail {
inline void require_unit_interval(double x, const char* name) {
  if (!(x >= -1e-12 && x <= 1.0 + 1e-12))
    throw DomainError(std::string(name) + " must lie in [0,1]");
}
}  // namespace detail

/// Smallest partial-transpose eigenvalue of x|S><S| + (1-x)|00><00|:
/// sigma_1 = (1 - x - sqrt(1 - 2x(1-x)))/2, which behaves as -x^2/4 + O(x^3)
/// near x = 0.
inline double sigma1_singlet_polarized(double x) {
  detail::require_unit_interval(x, "x");
  return 0.5 * (1.0 - x - std::sqrt(1.0 - 2.0 * x * (1.0 - x)));
}

struct SingletProductValues {
  double sigma1;  // smallest partial-transpose eigenvalue
  double z;       // spectral gap: eigenvalues of rho are (1 +- z)/2
  double x_c;     // largest-eigenvalue crossing, 2r/(1+2r)
};

/// Closed forms for x|S><S| + (1-x)|uv><uv| with overlap r = |<u|v>|^2.
inline SingletProductValues singlet_product_values(double x, double r) {
  detail::require_unit_interval(x, "x");
  detail::require_unit_interval(r, "r");
  return SingletProductValues{
      0.5 * (1.0 - x - std::sqrt(1.0 - 2.0 * x * (1.0 - x) * r)),
      std::sqrt(1.0 - 2.0 * x * (1.0 - x) * (1.0 + r)),
      2.0 * r / (1.0 + 2.0 * r),
  };
}

struct PsiMixtureValues {
  double x_e;           // entanglement onset, (1 + 2|ab|)^-1
  double x_c;           // largest-eigenvalue crossing, (2 - ||a|^2-|b|^2|)^-1
  double branch_onset;  // sigma1 branch is valid for x above this
  double abs_ab;

  /// sigma_1 = (1 - x(1 + 2|ab|))/2, valid only for x > branch_onset; below
  /// the onset the closed form does not apply and the numerical partial
  /// transpose is the only authority.
  double sigma1_branch(double x) const {
    detail::require_unit_interval(x, "x");
    if (x <= branch_onset) throw DomainError("sigma1 branch not valid below its onset");
    return 0.5 * (1.0 - x * (1.0 + 2.0 * abs_ab));
  }
};

/// Closed forms for x|psi><psi| + (1-x)(|00><00|+|11><11|)/2 with
/// |psi> = a|01> + b|10>.
inline PsiMixtureValues psi_mixture_values(std::complex<double> a, std::complex<double> b) {
  const double a2 = std::norm(a);
  const double b2 = std::norm(b);
  if (std::abs(a2 + b2 - 1.0) > 1e-12)
    throw InvalidFamilyParamsError("|a|^2 + |b|^2 must equal 1");
  const double ab = std::abs(a) * std::abs(b);
  const double delta = std::abs(a2 - b2);
  return PsiMixtureValues{
      1.0 / (1.0 + 2.0 * ab),
      1.0 / (2.0 - delta),
      1.0 / (2.0 * (1.0 + ab) - delta),
      ab,
  };
}

struct BellDiagonalValues {
  bool separable;                  // max q_i <= 1/2
  std::array<double, 4> ppt_eigs;  // 1/2 - q_i
};

inline BellDiagonalValues bell_diagonal_values(const std::array<double, 4>& weights) {
  double sum = 0.0, top = 0.0;
  for (double w : weights) {
    if (w < -1e-12) throw InvalidDistributionError("Bell weights must be non-negative");
    sum += w;
    top = std::max(top, w);
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InvalidDistributionError("Bell weights must sum to 1");
  BellDiagonalValues out{top <= 0.5 + 1e-12, {}};
  for (int i = 0; i < 4; ++i) out.ppt_eigs[static_cast<std::size_t>(i)] = 0.5 - weights[static_cast<std::size_t>(i)];
  return out;
}

struct WernerValues {
  double p1;   // (1 + 3x)/4
  double x_c;  // separability boundary 1/3
};

inline WernerValues werner_values(double x) {
  detail::require_unit_interval(x, "x");
  return WernerValues{(1.0 + 3.0 * x) / 4.0, 1.0 / 3.0};
}

enum class XrTag { kTsallis, kExpForm };

inline XrTag xr_tag_from_name(std::string_view name) {
  if (name == "tsallis") return XrTag::kTsallis;
  if (name == "exp") return XrTag::kExpForm;
  throw UnknownTagError("no x_r asymptote for entropy tag '" + std::string(name) + "'");
}

/// Large-q asymptote of the Werner-Popescu root: x_r ~ 1/3 + 2 gamma ln2/(3q)
/// with gamma = 1 for Tsallis and gamma = 2 for the exponential family.
inline double werner_xr_asymptote(double q, XrTag tag) {
  if (!(q > 0.0)) throw DomainError("q must be positive");
  const double gamma = tag == XrTag::kTsallis ? 1.0 : 2.0;
  return 1.0 / 3.0 + 2.0 * gamma * std::log(2.0) / (3.0 * q);
}

inline double werner_xr_asymptote(double q, std::string_view tag) {
  return werner_xr_asymptote(q, xr_tag_from_name(tag));
}

/// Separability threshold of the n-qudit GHZ-Werner state across the
/// (first m | rest) bipartition:
///   x_c^m = [1 + d^{n-1}(d-1)/(d^{n-m}-1)]^-1,
/// decreasing in m; m = n-1 gives the full-separability bound (1+d^{n-1})^-1.
inline double ghz_werner_xc(std::size_t d, std::size_t n, std::size_t m) {
  if (d < 2) throw DomainError("local dimension d must be >= 2");
  if (n < 2) throw DomainError("qudit count n must be >= 2");
  if (m < 1 || m > n - 1) throw DomainError("m must satisfy 1 <= m <= n-1");
  const double dd = static_cast<double>(d);
  return 1.0 / (1.0 + std::pow(dd, static_cast<double>(n - 1)) * (dd - 1.0) /
                          (std::pow(dd, static_cast<double>(n - m)) - 1.0));
}

/// Bundle of whichever closed-form thresholds apply to a family instance.
struct CriticalValues {
  std::optional<double> sigma1;
  std::optional<double> z;
  std::optional<double> x_c;
  std::optional<double> x_e;
  std::optional<double> x_r_asymptote;
  std::optional<double> gamma;
  std::optional<double> x_c_m;
};

}  // namespace entrosep::oracles
