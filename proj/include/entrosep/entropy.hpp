#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entrosep/states.hpp"

namespace entrosep {

/// Concave trace functional family: S_f(rho) = sum_i f(p_i) with
/// f(0) = f(1) = 0. The variants are
///   VonNeumann  f(p) = -k p ln p
///   Tsallis     f(p) = (p - p^q)/(q - 1), q > 0
///   ExpForm     f(p) = [p - (e^{qp}-1)/(e^q-1)]/q
///   GqForm      f(p) = k [p - g(p)] for a user-supplied convex increasing g
///               with g(0) = 0 and g(1) = 1
/// Removable singularities (Tsallis q -> 1, ExpForm q -> 0) switch to their
/// closed-form limits within tol::kQLimit.
///
/// These entropies are generally non-additive: on product states S_f is
/// sub- or super-additive according to the sign of [p f''(p)]', so Tsallis
/// is sub-additive for q > 1 and super-additive for q < 1, with the von
/// Neumann form ([p f''(p)]' = 0) as the additive boundary case.
class EntropicFunction {
 public:
  enum class Kind { kVonNeumann, kTsallis, kExpForm, kGqForm };

  static EntropicFunction von_neumann(double k = 1.0) {
    if (!(k > 0.0)) throw DomainError("von Neumann scale k must be positive");
    return EntropicFunction(Kind::kVonNeumann, k, 1.0, {});
  }

  static EntropicFunction tsallis(double q) {
    if (!(q > 0.0)) throw DomainError("Tsallis index q must be positive");
    return EntropicFunction(Kind::kTsallis, 1.0, q, {});
  }

  static EntropicFunction exp_form(double q) {
    if (!std::isfinite(q)) throw DomainError("ExpForm index q must be finite");
    return EntropicFunction(Kind::kExpForm, 1.0, q, {});
  }

  /// The supplied g is validated on construction: g(0) = 0, g(1) = 1 and
  /// midpoint concavity of k[p - g(p)] over all pairs of a 99-point interior
  /// grid. Invalid input throws DomainError.
  static EntropicFunction gq_form(std::function<double(double)> g, double k = 1.0) {
    if (!g) throw DomainError("GqForm requires a scalar function");
    if (!(k > 0.0)) throw DomainError("GqForm scale k must be positive");
    if (std::abs(g(0.0)) > 1e-12 || std::abs(g(1.0) - 1.0) > 1e-12)
      throw DomainError("GqForm requires g(0) = 0 and g(1) = 1");
    constexpr int kGrid = 99;
    std::array<double, kGrid> fv{};
    const auto f = [&](double p) { return k * (p - g(p)); };
    for (int i = 0; i < kGrid; ++i) fv[static_cast<std::size_t>(i)] = f((i + 1) / 100.0);
    for (int i = 0; i < kGrid; ++i)
      for (int j = i; j < kGrid; ++j) {
        const double mid = f(((i + 1) + (j + 1)) / 200.0);
        const double avg = 0.5 * (fv[static_cast<std::size_t>(i)] + fv[static_cast<std::size_t>(j)]);
        if (mid < avg - 1e-12) throw DomainError("GqForm: k[p - g(p)] fails midpoint concavity");
      }
    return EntropicFunction(Kind::kGqForm, k, 0.0, std::move(g));
  }

  Kind kind() const { return kind_; }
  double k() const { return k_; }
  double q() const { return q_; }

  /// Short identifier used in CSV output and reports.
  std::string name() const {
    switch (kind_) {
      case Kind::kVonNeumann: return "vn";
      case Kind::kTsallis: return "tsallis";
      case Kind::kExpForm: return "exp";
      default: return "gq";
    }
  }

  bool tsallis_is_von_neumann() const {
    return kind_ == Kind::kTsallis && std::abs(q_ - 1.0) <= tol::kQLimit;
  }
  bool exp_is_quadratic() const {
    return kind_ == Kind::kExpForm && std::abs(q_) <= tol::kQLimit;
  }

  double g(double p) const {
    switch (kind_) {
      case Kind::kVonNeumann: return p;  // q -> 1 limit of p^q
      case Kind::kTsallis:
        if (tsallis_is_von_neumann()) return p;
        return p > 0.0 ? std::exp(q_ * std::log(p)) : 0.0;
      case Kind::kExpForm: {
        if (exp_is_quadratic()) return p;  // q -> 0 limit
        if (q_ > 0.0) return std::exp(q_ * (p - 1.0)) * std::expm1(-q_ * p) / std::expm1(-q_);
        return std::expm1(q_ * p) / std::expm1(q_);
      }
      default: return g_(p);
    }
  }

 private:
  EntropicFunction(Kind kind, double k, double q, std::function<double(double)> g)
      : kind_(kind), k_(k), q_(q), g_(std::move(g)) {}

  Kind kind_;
  double k_;
  double q_;
  std::function<double(double)> g_;
};

/// Evaluates f at a probability. p may stray from [0,1] by 1e-12; anything
/// further out is a DomainError.
inline double f_eval(const EntropicFunction& f, double p) {
  if (!(p >= -1e-12 && p <= 1.0 + 1e-12)) throw DomainError("f_eval argument outside [0,1]");
  p = std::min(std::max(p, 0.0), 1.0);
  switch (f.kind()) {
    case EntropicFunction::Kind::kVonNeumann:
      return p <= 1e-300 ? 0.0 : -f.k() * p * std::log(p);
    case EntropicFunction::Kind::kTsallis: {
      if (f.tsallis_is_von_neumann()) return p <= 1e-300 ? 0.0 : -p * std::log(p);
      const double pq = p > 0.0 ? std::exp(f.q() * std::log(p)) : 0.0;
      return (p - pq) / (f.q() - 1.0);
    }
    case EntropicFunction::Kind::kExpForm: {
      if (f.exp_is_quadratic()) return 0.5 * p * (1.0 - p);
      return (p - f.g(p)) / f.q();
    }
    default:
      return f.k() * (p - f.g(p));
  }
}

/// Descending probability spectrum with partial sums and top-eigenvalue
/// multiplicity. Construction clips eigenvalues in [-tol::kPsdClip, 0) to 0,
/// snaps solver noise below tol::kZeroFloor to 0, rejects anything below
/// -tol::kPsdClip, and rescales so the probabilities sum to one.
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> eigenvalues) {
    if (eigenvalues.empty()) throw DomainError("spectrum must be nonempty");
    for (double& p : eigenvalues) {
      if (p < -tol::kPsdClip) throw DomainError("spectrum eigenvalue below -1e-8");
      if (p < tol::kZeroFloor) p = 0.0;
      if (p > 1.0) p = 1.0;
    }
    std::stable_sort(eigenvalues.begin(), eigenvalues.end(), std::greater<double>());
    double sum = 0.0;
    for (double p : eigenvalues) sum += p;
    if (!(sum > 0.0)) throw DomainError("spectrum sums to zero");
    if (std::abs(sum - 1.0) > tol::kSpectrumSum) throw DomainError("spectrum must sum to 1");
    for (double& p : eigenvalues) p /= sum;

    probs_ = std::move(eigenvalues);
    partial_sums_.resize(probs_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      acc += probs_[i];
      partial_sums_[i] = acc;
    }
    top_multiplicity_ = 1;
    while (top_multiplicity_ < probs_.size() &&
           probs_[0] - probs_[top_multiplicity_] <= tol::kTopDegeneracy)
      ++top_multiplicity_;
  }

  const std::vector<double>& probs() const { return probs_; }
  const std::vector<double>& partial_sums() const { return partial_sums_; }
  std::size_t top_multiplicity() const { return top_multiplicity_; }
  std::size_t size() const { return probs_.size(); }
  double p1() const { return probs_[0]; }

 private:
  std::vector<double> probs_;
  std::vector<double> partial_sums_;
  std::size_t top_multiplicity_;
};

inline Spectrum spectrum_of(const DensityMatrix& rho) {
  return Spectrum(eig_hermitian(rho.matrix).eigenvalues);
}

/// S_f = sum_i f(p_i).
inline double s_f(const Spectrum& spec, const EntropicFunction& f) {
  double acc = 0.0;
  for (double p : spec.probs()) acc += f_eval(f, p);
  return acc;
}

namespace detail {

// sum_i (p_i / scale)^q, skipping exact zeros.
inline double scaled_power_sum(const Spectrum& spec, double q, double scale) {
  double acc = 0.0;
  for (double p : spec.probs()) {
    if (p <= 0.0) continue;
    const double r = p / scale;
    acc += (r == 1.0) ? 1.0 : std::exp(q * std::log(r));
  }
  return acc;
}

// sum_i exp(q (p_i - shift)).
inline double shifted_exp_sum(const Spectrum& spec, double q, double shift) {
  double acc = 0.0;
  for (double p : spec.probs()) acc += std::exp(q * (p - shift));
  return acc;
}

inline double sum_squares(const Spectrum& spec) {
  double acc = 0.0;
  for (double p : spec.probs()) acc += p * p;
  return acc;
}

inline double von_neumann_sum(const Spectrum& spec, double k) {
  double acc = 0.0;
  for (double p : spec.probs())
    if (p > 0.0) acc -= k * p * std::log(p);
  return acc;
}

// Identical nonzero probabilities (zeros contribute f(0) = 0).
inline bool same_nonzero_probs(const Spectrum& a, const Spectrum& b) {
  std::size_t i = 0, j = 0;
  const auto &pa = a.probs(), &pb = b.probs();
  while (i < pa.size() && pa[i] > 0.0 && j < pb.size() && pb[j] > 0.0) {
    if (pa[i] != pb[j]) return false;
    ++i;
    ++j;
  }
  const bool a_done = i >= pa.size() || pa[i] == 0.0;
  const bool b_done = j >= pb.size() || pb[j] == 0.0;
  return a_done && b_done;
}

}  // namespace detail

/// S_f(rho) - S_f(rho_A) evaluated from the two spectra.
///
/// Both spectra are unit trace, so for the Tsallis and ExpForm families the
/// linear parts of f cancel exactly and the difference reduces to power /
/// exponential sums. Those are evaluated scaled by the larger top eigenvalue:
/// the subtraction then happens between O(1) quantities, which keeps the sign
/// of the result meaningful even at q ~ 500 where the raw values underflow
/// the noise floor of a direct S_f(rho) - S_f(rho_A) subtraction.
inline double conditional_s_f(const Spectrum& full, const Spectrum& reduced,
                              const EntropicFunction& f) {
  using Kind = EntropicFunction::Kind;
  // Coinciding spectra give an exact zero for every f; without the shortcut
  // rounding noise of order 1e-17 would assign the value an arbitrary sign.
  if (detail::same_nonzero_probs(full, reduced)) return 0.0;
  if (f.kind() == Kind::kVonNeumann || f.tsallis_is_von_neumann()) {
    const double k = f.kind() == Kind::kVonNeumann ? f.k() : 1.0;
    return detail::von_neumann_sum(full, k) - detail::von_neumann_sum(reduced, k);
  }
  if (f.exp_is_quadratic())
    return 0.5 * (detail::sum_squares(reduced) - detail::sum_squares(full));

  const double m = std::max(full.p1(), reduced.p1());
  if (f.kind() == Kind::kTsallis) {
    const double q = f.q();
    const double bracket =
        detail::scaled_power_sum(reduced, q, m) - detail::scaled_power_sum(full, q, m);
    const double prefactor = std::exp(q * std::log(m));
    const double signed_part = bracket / (q - 1.0);
    if (prefactor > 0.0) return prefactor * signed_part;
    // exp(q ln m) underflowed; keep the sign with a floor magnitude.
    return signed_part == 0.0 ? 0.0 : std::copysign(5e-300, signed_part);
  }
  if (f.kind() == Kind::kExpForm) {
    const double q = f.q();
    if (q > 0.0) {
      const double extra = (static_cast<double>(full.size()) - static_cast<double>(reduced.size())) *
                           std::exp(-q * m);
      const double d = detail::shifted_exp_sum(reduced, q, m) -
                       detail::shifted_exp_sum(full, q, m) + extra;
      const double prefactor = std::exp(-q * (1.0 - m));
      const double signed_part = d / (q * (-std::expm1(-q)));
      if (prefactor > 0.0) return prefactor * signed_part;
      return signed_part == 0.0 ? 0.0 : std::copysign(5e-300, signed_part);
    }
    // q < 0: e^{qp} <= 1 throughout, a direct difference is well conditioned.
    const double d = detail::shifted_exp_sum(reduced, q, 0.0) -
                     detail::shifted_exp_sum(full, q, 0.0) +
                     (static_cast<double>(full.size()) - static_cast<double>(reduced.size()));
    return d / (q * std::expm1(q));
  }
  return s_f(full, f) - s_f(reduced, f);
}

/// S_f^A(rho) = S_f(rho) - S_f(rho_A), rho_A the reduced state on
/// `subsystem_a`. Negative values certify entanglement.
inline double conditional_s_f(const DensityMatrix& rho, const std::vector<std::size_t>& subsystem_a,
                              const EntropicFunction& f) {
  return conditional_s_f(spectrum_of(rho), spectrum_of(partial_trace(rho, subsystem_a)), f);
}

/// Normalised conditional entropy S_f^A / Tr g_q(rho_A), defined for the
/// Tsallis family (g_q(p) = p^q, giving the q-conditional entropy S_q(B|A)),
/// the ExpForm family (g_q(p) = (e^{qp}-1)/(e^q-1)) and, as the q -> 1
/// Tsallis limit, von Neumann (denominator Tr rho_A = 1).
inline double normalized_conditional(const Spectrum& full, const Spectrum& reduced,
                                     const EntropicFunction& f) {
  using Kind = EntropicFunction::Kind;
  if (f.kind() == Kind::kGqForm)
    throw DomainError("normalised conditional is defined for Tsallis and ExpForm only");
  if (detail::same_nonzero_probs(full, reduced)) return 0.0;
  if (f.kind() == Kind::kVonNeumann || f.tsallis_is_von_neumann() || f.exp_is_quadratic())
    return conditional_s_f(full, reduced, f);  // denominator is Tr rho_A = 1

  const double q = f.q();
  const double m = std::max(full.p1(), reduced.p1());
  const double ma = reduced.p1();
  if (f.kind() == Kind::kTsallis) {
    // S_q(B|A) = [1 - Tr rho^q / Tr rho_A^q] / (q - 1) without under/overflow:
    // both power sums are scaled before the ratio is formed.
    const double denom_log = q * std::log(ma) + std::log(detail::scaled_power_sum(reduced, q, ma));
    if (denom_log < std::log(tol::kDenominatorFloor))
      throw DegenerateNormalizationError("Tr rho_A^q underflows");
    const double ratio = std::exp(q * (std::log(m) - std::log(ma))) *
                         detail::scaled_power_sum(full, q, m) /
                         detail::scaled_power_sum(reduced, q, ma);
    return (1.0 - ratio) / (q - 1.0);
  }
  // ExpForm: the common e^{qm} scale cancels between numerator and
  // denominator, leaving well-conditioned shifted sums.
  const double shift = q > 0.0 ? m : 0.0;
  const double na = static_cast<double>(reduced.size());
  const double n = static_cast<double>(full.size());
  const double denom =
      detail::shifted_exp_sum(reduced, q, shift) - na * std::exp(-q * shift);
  const double numer = detail::shifted_exp_sum(reduced, q, shift) -
                       detail::shifted_exp_sum(full, q, shift) + (n - na) * std::exp(-q * shift);
  if (!(std::abs(denom) > 0.0)) throw DegenerateNormalizationError("Tr g_q(rho_A) underflows");
  return numer / (q * denom);
}

inline double normalized_conditional(const DensityMatrix& rho,
                                     const std::vector<std::size_t>& subsystem_a,
                                     const EntropicFunction& f) {
  return normalized_conditional(spectrum_of(rho), spectrum_of(partial_trace(rho, subsystem_a)), f);
}

/// Renyi entropy S_alpha = ln(Tr rho^alpha) / (1 - alpha); the alpha -> 1
/// limit is the von Neumann entropy.
inline double renyi(const Spectrum& spec, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("Renyi order alpha must be positive");
  if (std::abs(alpha - 1.0) < tol::kQLimit) return detail::von_neumann_sum(spec, 1.0);
  const double m = spec.p1();
  return (alpha * std::log(m) + std::log(detail::scaled_power_sum(spec, alpha, m))) / (1.0 - alpha);
}

/// Classical conditional entropy sum_ij f(p_ij) - sum_i f(p_i) with
/// p_i = sum_j p_ij. Non-negative for every concave f with f(0) = 0.
inline double classical_conditional(const std::vector<std::vector<double>>& joint,
                                    const EntropicFunction& f) {
  if (joint.empty() || joint.front().empty())
    throw InvalidDistributionError("joint table must be nonempty");
  const std::size_t cols = joint.front().size();
  double total = 0.0;
  for (const auto& row : joint) {
    if (row.size() != cols) throw InvalidDistributionError("joint table rows differ in length");
    for (double p : row) {
      if (p < 0.0) throw InvalidDistributionError("joint probabilities must be non-negative");
      total += p;
    }
  }
  if (std::abs(total - 1.0) > tol::kFamilyParams)
    throw InvalidDistributionError("joint probabilities must sum to 1");

  double acc = 0.0;
  for (const auto& row : joint) {
    double marginal = 0.0;
    for (double p : row) {
      acc += f_eval(f, p);
      marginal += p;
    }
    acc -= f_eval(f, std::min(marginal, 1.0));
  }
  return acc;
}

}  // namespace entrosep
