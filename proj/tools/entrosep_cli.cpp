// Command-line driver: parameter scans (CSV), classification of stored
// density matrices, and entropic root finding.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "entrosep/entrosep.hpp"

namespace {

using namespace entrosep;

struct FamilyFlags {
  std::string family;
  double a2 = 0.8;
  double r = 1.0;
  std::size_t d = 2;
  std::size_t n = 2;
  std::size_t m = 1;
};

void add_family_flags(CLI::App* cmd, FamilyFlags& flags) {
  cmd->add_option("--family", flags.family,
                  "singlet-polarized | singlet-product | psi-mixture | werner | ghz-werner")
      ->required();
  cmd->add_option("--a2", flags.a2, "|a|^2 of the psi-mixture family");
  cmd->add_option("--r", flags.r, "overlap |<u|v>|^2 of the singlet-product family");
  cmd->add_option("--d", flags.d, "local dimension of the ghz-werner family");
  cmd->add_option("--n", flags.n, "qudit count of the ghz-werner family");
  cmd->add_option("--m", flags.m, "ghz-werner bipartition keeps the first m qudits");
}

FamilyTemplate resolve_family(const FamilyFlags& flags) {
  if (flags.family == "singlet-polarized")
    return [](double x) { return StateFamily{SingletPolarized{x}}; };
  if (flags.family == "singlet-product") {
    if (flags.r < 0.0 || flags.r > 1.0) throw ConfigError("--r must lie in [0,1]");
    const double r = flags.r;
    return [r](double x) {
      return StateFamily{SingletProduct{x, {1.0, 0.0}, {std::sqrt(r), std::sqrt(1.0 - r)}}};
    };
  }
  if (flags.family == "psi-mixture") {
    if (flags.a2 < 0.0 || flags.a2 > 1.0) throw ConfigError("--a2 must lie in [0,1]");
    const double a2 = flags.a2;
    return [a2](double x) {
      return StateFamily{PsiMixture{x, std::sqrt(a2), std::sqrt(1.0 - a2)}};
    };
  }
  if (flags.family == "werner")
    return [](double x) { return StateFamily{WernerPopescu{x}}; };
  if (flags.family == "ghz-werner") {
    const std::size_t d = flags.d, n = flags.n;
    return [d, n](double x) { return StateFamily{GhzWerner{x, d, n}}; };
  }
  if (flags.family == "bell-diagonal")
    throw ConfigError("bell-diagonal has no free x parameter; scan/root need one");
  throw ConfigError("unknown family '" + flags.family + "'");
}

std::vector<std::size_t> parse_subsystem_csv(const std::string& subsystem_csv) {
  std::vector<std::size_t> out;
  std::istringstream iss(subsystem_csv);
  std::string token;
  while (std::getline(iss, token, ',')) {
    try {
      out.push_back(static_cast<std::size_t>(std::stoul(token)));
    } catch (const std::exception&) {
      throw ConfigError("--subsystem expects comma-separated indices");
    }
  }
  if (out.empty()) throw ConfigError("--subsystem expects comma-separated indices");
  return out;
}

std::vector<std::size_t> subsystem_for(const FamilyFlags& flags, const std::string& subsystem_csv) {
  if (!subsystem_csv.empty()) return parse_subsystem_csv(subsystem_csv);
  if (flags.family == "ghz-werner") {
    if (flags.m < 1 || flags.m >= flags.n) throw ConfigError("--m must satisfy 1 <= m <= n-1");
    std::vector<std::size_t> out(flags.m);
    for (std::size_t i = 0; i < flags.m; ++i) out[i] = i;
    return out;
  }
  return {0};
}

std::vector<EntropicFunction> resolve_battery(const std::vector<std::string>& entropies,
                                              const std::vector<double>& qs) {
  if (entropies.empty()) {
    if (!qs.empty()) throw ConfigError("--q given without --entropy");
    return default_battery();
  }
  std::vector<EntropicFunction> battery;
  for (const std::string& name : entropies) {
    if (name == "vn") {
      battery.push_back(EntropicFunction::von_neumann(1.0));
      continue;
    }
    if (name != "tsallis" && name != "exp")
      throw ConfigError("unknown entropy '" + name + "' (expected vn, tsallis or exp)");
    if (qs.empty()) throw ConfigError("--entropy " + name + " needs at least one --q");
    for (double q : qs)
      battery.push_back(name == "tsallis" ? EntropicFunction::tsallis(q)
                                          : EntropicFunction::exp_form(q));
  }
  return battery;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << text;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int run_scan_command(const FamilyFlags& flags, const std::string& subsystem_csv,
                     const std::vector<std::string>& entropies, const std::vector<double>& qs,
                     double x_start, double x_stop, std::size_t x_steps, const std::string& out) {
  ScanConfig config;
  config.family = resolve_family(flags);
  config.x_start = x_start;
  config.x_stop = x_stop;
  config.x_steps = x_steps;
  config.battery = resolve_battery(entropies, qs);
  config.subsystem_a = subsystem_for(flags, subsystem_csv);
  write_text(out, to_csv(run_scan(config)));
  return 0;
}

int run_root_command(const FamilyFlags& flags, const std::string& subsystem_csv,
                     const std::vector<std::string>& entropies, const std::vector<double>& qs) {
  const auto battery = resolve_battery(entropies, qs);
  if (battery.size() != 1)
    throw ConfigError("root needs exactly one entropy (one --entropy and at most one --q)");
  const EntropicFunction& f = battery.front();
  const FamilyTemplate family = resolve_family(flags);
  const auto subsystem = subsystem_for(flags, subsystem_csv);

  const double root = find_entropic_root(family, subsystem, f);
  char buf[160];
  if (flags.family == "werner" && f.name() != "vn") {
    const auto tag = f.name() == "tsallis" ? oracles::XrTag::kTsallis : oracles::XrTag::kExpForm;
    std::snprintf(buf, sizeof buf, "x_r %.10f  asymptote %.10f\n", root,
                  oracles::werner_xr_asymptote(f.q(), tag));
  } else {
    std::snprintf(buf, sizeof buf, "x_r %.10f\n", root);
  }
  std::cout << buf;
  return 0;
}

int run_classify_command(const std::string& file, std::optional<std::uint64_t> seed,
                         std::size_t sample_d, std::size_t sample_terms,
                         const std::string& subsystem_csv, const std::string& out) {
  DensityMatrix rho = [&] {
    if (seed.has_value()) return sample_separable(*seed, {sample_d, sample_d}, sample_terms);
    return read_density_file(file);
  }();

  const std::vector<std::size_t> subsystem =
      subsystem_csv.empty() ? std::vector<std::size_t>{0} : parse_subsystem_csv(subsystem_csv);
  const auto report = classify(rho, subsystem, default_battery());

  std::ostringstream human;
  human << "dims:";
  for (std::size_t d : rho.dims) human << ' ' << d;
  human << "\np1 " << fmt(report.p1) << "  p1A " << fmt(report.p1_a) << "  p1B "
        << fmt(report.p1_b) << '\n';
  human << "largest-eigenvalue test: " << (report.largest_eig_pass ? "pass" : "FAIL") << '\n';
  human << "disorder criterion vs A: " << (report.disorder_pass_a ? "pass" : "FAIL");
  if (report.first_violation_a) human << " (first violation i=" << *report.first_violation_a << ')';
  human << '\n';
  human << "disorder criterion vs B: " << (report.disorder_pass_b ? "pass" : "FAIL");
  if (report.first_violation_b) human << " (first violation i=" << *report.first_violation_b << ')';
  human << '\n';
  human << "ppt minimum eigenvalue " << fmt(report.ppt_min_eigenvalue) << '\n';
  human << "reduction minimum eigenvalue " << fmt(report.reduction_min_eigenvalue) << '\n';
  human << "entropic signs S_fA:\n";
  for (const auto& s : report.entropic_signs)
    human << "  " << s.entropy << " q=" << fmt(s.q) << ": " << fmt(s.value) << '\n';
  human << "verdict: "
        << (report.entangled_certified() ? "entangled (certified)" : "separability not excluded")
        << '\n';
  std::cout << human.str();

  std::ostringstream csv;
  csv << "key,value\n";
  csv << "p1," << fmt(report.p1) << '\n';
  csv << "p1A," << fmt(report.p1_a) << '\n';
  csv << "p1B," << fmt(report.p1_b) << '\n';
  csv << "largest_eig_pass," << (report.largest_eig_pass ? 1 : 0) << '\n';
  csv << "disorder_pass_A," << (report.disorder_pass_a ? 1 : 0) << '\n';
  csv << "disorder_pass_B," << (report.disorder_pass_b ? 1 : 0) << '\n';
  csv << "sigma1," << fmt(report.ppt_min_eigenvalue) << '\n';
  csv << "reduction_min_eigenvalue," << fmt(report.reduction_min_eigenvalue) << '\n';
  for (const auto& s : report.entropic_signs)
    csv << "sign_" << s.entropy << "_q" << fmt(s.q) << ',' << fmt(s.value) << '\n';
  csv << "entangled_certified," << (report.entangled_certified() ? 1 : 0) << '\n';
  if (!out.empty())
    write_text(out, csv.str());
  else
    std::cout << csv.str();

  return report.entangled_certified() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized entropic separability criteria for finite-dimensional states"};
  app.require_subcommand(1);

  FamilyFlags scan_flags;
  std::string scan_subsystem, scan_out;
  std::vector<std::string> scan_entropies;
  std::vector<double> scan_qs;
  double x_start = 0.0, x_stop = 1.0;
  std::size_t x_steps = 41;
  CLI::App* scan = app.add_subcommand("scan", "Sweep x and emit criteria columns as CSV");
  add_family_flags(scan, scan_flags);
  scan->add_option("--x-start", x_start, "first grid point (default 0)");
  scan->add_option("--x-stop", x_stop, "last grid point (default 1)");
  scan->add_option("--x-steps", x_steps, "grid size (default 41)");
  scan->add_option("--entropy", scan_entropies, "vn | tsallis | exp (repeatable)");
  scan->add_option("--q", scan_qs, "entropic index (repeatable, applies to each --entropy)");
  scan->add_option("--subsystem", scan_subsystem, "comma-separated indices of side A");
  scan->add_option("--out", scan_out, "output CSV path (stdout when omitted)");

  FamilyFlags root_flags;
  std::string root_subsystem;
  std::vector<std::string> root_entropies;
  std::vector<double> root_qs;
  CLI::App* root = app.add_subcommand("root", "Find the zero of S_f^A along x");
  add_family_flags(root, root_flags);
  root->add_option("--entropy", root_entropies, "vn | tsallis | exp");
  root->add_option("--q", root_qs, "entropic index");
  root->add_option("--subsystem", root_subsystem, "comma-separated indices of side A");

  std::string classify_file, classify_subsystem, classify_out;
  std::optional<std::uint64_t> classify_seed;
  std::size_t sample_d = 2, sample_terms = 4;
  CLI::App* cls = app.add_subcommand("classify", "Run the criteria battery on one state");
  cls->add_option("file", classify_file, "density-matrix text file");
  cls->add_option("--seed", classify_seed,
                  "classify a generated separable sample instead of a file");
  cls->add_option("--d", sample_d, "local dimension of the generated sample");
  cls->add_option("--terms", sample_terms, "product terms in the generated sample");
  cls->add_option("--subsystem", classify_subsystem, "comma-separated indices of side A");
  cls->add_option("--out", classify_out, "write the CSV report to this path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (scan->parsed())
      return run_scan_command(scan_flags, scan_subsystem, scan_entropies, scan_qs, x_start, x_stop,
                              x_steps, scan_out);
    if (root->parsed())
      return run_root_command(root_flags, root_subsystem, root_entropies, root_qs);
    if (cls->parsed()) {
      if (classify_file.empty() == !classify_seed.has_value()) {
        std::cerr << "classify needs exactly one of: a file path, or --seed\n";
        return 2;
      }
      return run_classify_command(classify_file, classify_seed, sample_d, sample_terms,
                                  classify_subsystem, classify_out);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NoSignChangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
