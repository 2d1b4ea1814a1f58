#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "entrosep/entropy.hpp"

namespace entrosep {

/// Outcome of a majorization comparison between two spectra.
struct MajorizationVerdict {
  bool is_more_mixed = false;
  // Smallest i in 1..n-1 whose partial sum exceeds the reference, absent
  // when the state is more mixed.
  std::optional<std::size_t> first_violation_index;
  // min_i (S'_i - S_i): how far the tightest partial-sum comparison is from
  // flipping. Negative margins beyond the tolerance mean a violation.
  double margin = 0.0;
};

/// Is `spec` more mixed than (majorized by) `reference`? Spectra of unequal
/// length are zero-padded to the longer one. Each partial-sum comparison
/// carries a tol::kMajorization slack.
inline MajorizationVerdict majorization_compare(const Spectrum& spec, const Spectrum& reference) {
  const std::size_t n = std::max(spec.size(), reference.size());
  const auto partial = [n](const Spectrum& s, std::size_t i) {
    return i < s.size() ? s.partial_sums()[i] : s.partial_sums().back();
  };
  MajorizationVerdict verdict;
  verdict.margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double gap = partial(reference, i) - partial(spec, i);
    verdict.margin = std::min(verdict.margin, gap);
    if (gap < -tol::kMajorization && !verdict.first_violation_index)
      verdict.first_violation_index = i + 1;  // 1-based, as in S_1 <= S'_1
  }
  verdict.is_more_mixed = !verdict.first_violation_index.has_value();
  return verdict;
}

/// Disorder criterion: a separable state is more mixed than its reduction.
inline MajorizationVerdict disorder_criterion(const DensityMatrix& rho,
                                              const std::vector<std::size_t>& subsystem_a) {
  return majorization_compare(spectrum_of(rho), spectrum_of(partial_trace(rho, subsystem_a)));
}

struct LargestEigResult {
  double p1 = 0.0;
  double p1_a = 0.0;
  bool pass = false;  // p1 <= p1_a + tol; failure certifies entanglement
};

inline LargestEigResult largest_eig_test(const DensityMatrix& rho,
                                         const std::vector<std::size_t>& subsystem_a) {
  const double p1 = spectrum_of(rho).p1();
  const double p1_a = spectrum_of(partial_trace(rho, subsystem_a)).p1();
  return LargestEigResult{p1, p1_a, p1 <= p1_a + tol::kMajorization};
}

/// Smallest eigenvalue sigma_1 of the partial transpose. sigma_1 < -1e-8
/// certifies entanglement; for two qubits sigma_1 >= -1e-8 also certifies
/// separability.
inline double ppt_test(const DensityMatrix& rho, const std::vector<std::size_t>& subsystems) {
  const ComplexMatrix pt = partial_transpose(rho, subsystems);
  return eig_hermitian(pt).eigenvalues.back();
}

inline double ppt_test(const DensityMatrix& rho, std::size_t subsystem) {
  return ppt_test(rho, std::vector<std::size_t>{subsystem});
}

/// Entropic criterion value S_f^A(rho). Negative certifies entanglement;
/// non-negative is inconclusive.
inline double entropic_test(const DensityMatrix& rho, const std::vector<std::size_t>& subsystem_a,
                            const EntropicFunction& f) {
  return conditional_s_f(rho, subsystem_a, f);
}

/// The entropy battery used across figures and reports.
inline std::vector<EntropicFunction> default_battery() {
  std::vector<EntropicFunction> battery;
  battery.push_back(EntropicFunction::von_neumann(1.0));
  for (double q : {0.5, 1.0, 2.0, 5.0, 20.0, 100.0}) battery.push_back(EntropicFunction::tsallis(q));
  for (double q : {0.0, 1.0, 5.0, 20.0, 100.0}) battery.push_back(EntropicFunction::exp_form(q));
  return battery;
}

/// A family of states with x in [0,1] as the free mixing parameter.
using FamilyTemplate = std::function<StateFamily(double)>;

/// Root x_r of x -> S_f^A(state(x)) on [0,1]. A scan over
/// tol::kRootScanPoints equispaced points locates a strict sign change,
/// which bisection then narrows below tol::kRootStep. Throws
/// NoSignChangeError when the scan finds no strict sign change.
inline double find_entropic_root(const FamilyTemplate& family,
                                 const std::vector<std::size_t>& subsystem_a,
                                 const EntropicFunction& f) {
  const auto value_at = [&](double x) {
    return conditional_s_f(make_density(family(x)), subsystem_a, f);
  };
  const std::size_t points = tol::kRootScanPoints;
  std::vector<double> xs(points), vs(points);
  for (std::size_t i = 0; i < points; ++i) {
    xs[i] = static_cast<double>(i) / static_cast<double>(points - 1);
    vs[i] = value_at(xs[i]);
  }
  double lo = 0.0, hi = 0.0, lo_v = 0.0;
  bool bracketed = false;
  for (std::size_t i = 0; i + 1 < points; ++i) {
    if (vs[i] != 0.0 && vs[i + 1] != 0.0 && std::signbit(vs[i]) != std::signbit(vs[i + 1])) {
      lo = xs[i];
      hi = xs[i + 1];
      lo_v = vs[i];
      bracketed = true;
      break;
    }
    // Root exactly on an interior grid point, flanked by strict signs.
    if (i + 2 < points && vs[i] != 0.0 && vs[i + 1] == 0.0 && vs[i + 2] != 0.0 &&
        std::signbit(vs[i]) != std::signbit(vs[i + 2]))
      return xs[i + 1];
  }
  if (!bracketed) throw NoSignChangeError("S_f^A keeps one sign on the scanned grid");

  while (hi - lo > tol::kRootStep) {
    const double mid = 0.5 * (lo + hi);
    const double v = value_at(mid);
    if (v == 0.0) return mid;
    if (std::signbit(v) == std::signbit(lo_v)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct EntropicSign {
  std::string entropy;
  double q = 0.0;
  double value = 0.0;
  int sign = 0;  // -1 certifies entanglement, 0 within +-1e-10, +1 otherwise
};

struct CriteriaReport {
  double p1 = 0.0;
  double p1_a = 0.0;
  double p1_b = 0.0;
  bool largest_eig_pass = false;
  bool disorder_pass_a = false;
  bool disorder_pass_b = false;
  std::optional<std::size_t> first_violation_a;
  std::optional<std::size_t> first_violation_b;
  double ppt_min_eigenvalue = 0.0;   // sigma_1
  double reduction_min_eigenvalue = 0.0;
  std::vector<EntropicSign> entropic_signs;

  bool entangled_certified() const {
    if (ppt_min_eigenvalue < -tol::kPsdClip) return true;
    if (!disorder_pass_a || !disorder_pass_b) return true;
    for (const auto& s : entropic_signs)
      if (s.sign < 0) return true;
    return false;
  }
};

/// Runs the whole criteria battery against one bipartition. `subsystem_a`
/// names the A side; the complement is B.
inline CriteriaReport classify(const DensityMatrix& rho, const std::vector<std::size_t>& subsystem_a,
                               const std::vector<EntropicFunction>& battery) {
  std::vector<std::size_t> subsystem_b;
  for (std::size_t k = 0; k < rho.dims.size(); ++k)
    if (std::find(subsystem_a.begin(), subsystem_a.end(), k) == subsystem_a.end())
      subsystem_b.push_back(k);
  if (subsystem_b.empty()) throw BadSubsystemSetError("subsystem set must be a strict subset");

  const Spectrum full = spectrum_of(rho);
  const Spectrum spec_a = spectrum_of(partial_trace(rho, subsystem_a));
  const Spectrum spec_b = spectrum_of(partial_trace(rho, subsystem_b));

  CriteriaReport report;
  report.p1 = full.p1();
  report.p1_a = spec_a.p1();
  report.p1_b = spec_b.p1();
  report.largest_eig_pass = report.p1 <= report.p1_a + tol::kMajorization;

  const MajorizationVerdict va = majorization_compare(full, spec_a);
  const MajorizationVerdict vb = majorization_compare(full, spec_b);
  report.disorder_pass_a = va.is_more_mixed;
  report.disorder_pass_b = vb.is_more_mixed;
  report.first_violation_a = va.first_violation_index;
  report.first_violation_b = vb.first_violation_index;

  report.ppt_min_eigenvalue = ppt_test(rho, subsystem_a);
  report.reduction_min_eigenvalue = eig_hermitian(reduction_operator(rho, subsystem_a)).eigenvalues.back();

  for (const auto& f : battery) {
    const double value = conditional_s_f(full, spec_a, f);
    const int sign = value < -tol::kMajorization ? -1 : (value > tol::kMajorization ? 1 : 0);
    report.entropic_signs.push_back(EntropicSign{f.name(), f.q(), value, sign});
  }
  return report;
}

}  // namespace entrosep
