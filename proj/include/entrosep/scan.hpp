#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "entrosep/criteria.hpp"

namespace entrosep {

/// Parameter-scan configuration: a family template with free x, the x grid,
/// the entropy battery, and the A side of the bipartition.
struct ScanConfig {
  FamilyTemplate family;
  double x_start = 0.0;
  double x_stop = 1.0;
  std::size_t x_steps = 41;
  std::vector<EntropicFunction> battery = default_battery();
  std::vector<std::size_t> subsystem_a = {0};

  void validate() const {
    if (!family) throw ConfigError("scan needs a family with a free x parameter");
    if (!(x_start >= 0.0 && x_start < x_stop && x_stop <= 1.0))
      throw ConfigError("x grid must satisfy 0 <= start < stop <= 1");
    if (x_steps < 2) throw ConfigError("x grid needs at least 2 steps");
    if (battery.empty()) throw ConfigError("entropy battery is empty");
  }
};

struct ScanRow {
  double x;
  std::string entropy;
  double q;
  double p1;
  double p1a;
  double sigma1;
  double s_f;
  double s_fa;
  double sbar_fa;
  bool disorder_pass;
  std::size_t first_violation_index;  // 0 when the state is more mixed
};

/// Evaluates every (x, battery entry) pair. Rows come out sorted by
/// (x, entropy, q) and depend only on the configuration, so repeated runs
/// produce identical output.
inline std::vector<ScanRow> run_scan(const ScanConfig& config) {
  config.validate();
  std::vector<EntropicFunction> battery = config.battery;
  std::stable_sort(battery.begin(), battery.end(),
                   [](const EntropicFunction& a, const EntropicFunction& b) {
                     if (a.name() != b.name()) return a.name() < b.name();
                     return a.q() < b.q();
                   });

  std::vector<ScanRow> rows;
  rows.reserve(config.x_steps * battery.size());
  for (std::size_t i = 0; i < config.x_steps; ++i) {
    const double x = config.x_start + (config.x_stop - config.x_start) *
                                          static_cast<double>(i) /
                                          static_cast<double>(config.x_steps - 1);
    const DensityMatrix rho = make_density(config.family(x));
    const Spectrum full = spectrum_of(rho);
    const Spectrum reduced = spectrum_of(partial_trace(rho, config.subsystem_a));
    const double sigma1 = ppt_test(rho, config.subsystem_a);
    const MajorizationVerdict verdict = majorization_compare(full, reduced);

    for (const auto& f : battery) {
      ScanRow row;
      row.x = x;
      row.entropy = f.name();
      row.q = f.q();
      row.p1 = full.p1();
      row.p1a = reduced.p1();
      row.sigma1 = sigma1;
      row.s_f = s_f(full, f);
      row.s_fa = conditional_s_f(full, reduced, f);
      row.sbar_fa = normalized_conditional(full, reduced, f);
      row.disorder_pass = verdict.is_more_mixed;
      row.first_violation_index = verdict.first_violation_index.value_or(0);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

namespace detail {
inline std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}
}  // namespace detail

inline std::string csv_header() {
  return "x,entropy,q,p1,p1A,sigma1,S_f,S_fA,Sbar_fA,disorder_pass,first_violation_index";
}

/// Renders rows as CSV with 12 significant digits, '.' decimal point, one
/// header row. Byte-identical across runs with the same configuration.
inline std::string to_csv(const std::vector<ScanRow>& rows) {
  std::string out = csv_header();
  out += '\n';
  for (const ScanRow& r : rows) {
    out += detail::fmt12(r.x);
    out += ',';
    out += r.entropy;
    out += ',';
    out += detail::fmt12(r.q);
    out += ',';
    out += detail::fmt12(r.p1);
    out += ',';
    out += detail::fmt12(r.p1a);
    out += ',';
    out += detail::fmt12(r.sigma1);
    out += ',';
    out += detail::fmt12(r.s_f);
    out += ',';
    out += detail::fmt12(r.s_fa);
    out += ',';
    out += detail::fmt12(r.sbar_fa);
    out += ',';
    out += r.disorder_pass ? '1' : '0';
    out += ',';
    out += std::to_string(r.first_violation_index);
    out += '\n';
  }
  return out;
}

}  // namespace entrosep
