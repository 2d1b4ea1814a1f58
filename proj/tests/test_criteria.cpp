#include <catch2/catch_amalgamated.hpp>

#include "entrosep/entrosep.hpp"
#include "helpers.hpp"

using namespace entrosep;

namespace {

// Roots frozen from a 60-digit evaluation of the closed-form spectra.
constexpr double kWernerVnRoot = 0.747613833446358;
constexpr double kWernerTsallisQ20Root = 0.356843282553678;
constexpr double kWernerTsallisQ100Root = 0.337970366704479;
constexpr double kWernerExpQ20Root = 0.379445041314123;
constexpr double kPsiTsallisQ10Root = 0.714296391017583;

FamilyTemplate singlet_polarized_family() {
  return [](double x) { return StateFamily{SingletPolarized{x}}; };
}

FamilyTemplate werner_family() {
  return [](double x) { return StateFamily{WernerPopescu{x}}; };
}

FamilyTemplate psi_family(double a2) {
  return [a2](double x) {
    return StateFamily{PsiMixture{x, std::sqrt(a2), std::sqrt(1.0 - a2)}};
  };
}

FamilyTemplate singlet_product_family(double r) {
  return [r](double x) {
    return StateFamily{SingletProduct{x, {1.0, 0.0}, {std::sqrt(r), std::sqrt(1.0 - r)}}};
  };
}

}  // namespace

TEST_CASE("fully mixed four-level states are more mixed than any qubit") {
  const Spectrum mixed(std::vector<double>{0.25, 0.25, 0.25, 0.25});
  const Spectrum half(std::vector<double>{0.5, 0.5});
  const auto verdict = majorization_compare(mixed, half);
  REQUIRE(verdict.is_more_mixed);
  REQUIRE_FALSE(verdict.first_violation_index.has_value());
  REQUIRE(verdict.margin == Catch::Approx(0.25));
}

TEST_CASE("polarized singlet majorization flips between x=0.5 and x=0.8") {
  {
    const auto rho = make_density(SingletPolarized{0.5});
    const auto verdict = disorder_criterion(rho, {0});
    REQUIRE(verdict.is_more_mixed);
  }
  {
    const auto rho = make_density(SingletPolarized{0.8});
    const auto verdict = disorder_criterion(rho, {0});
    REQUIRE_FALSE(verdict.is_more_mixed);
    REQUIRE(verdict.first_violation_index == std::size_t{1});
    REQUIRE(verdict.margin == Catch::Approx(0.6 - 0.8).margin(1e-10));
  }
}

TEST_CASE("pure singlet fails disorder at the first partial sum") {
  const auto verdict = disorder_criterion(make_density(SingletPolarized{1.0}), {0});
  REQUIRE_FALSE(verdict.is_more_mixed);
  REQUIRE(verdict.first_violation_index == std::size_t{1});
}

TEST_CASE("entangled polarized singlet states below 2/3 still pass disorder") {
  const auto rho = make_density(SingletProduct{0.3, {1.0, 0.0}, {1.0, 0.0}});
  REQUIRE(ppt_test(rho, std::size_t{0}) < -1e-6);  // entangled for every x > 0
  REQUIRE(disorder_criterion(rho, {0}).is_more_mixed);
  REQUIRE(disorder_criterion(rho, {1}).is_more_mixed);
}

TEST_CASE("largest eigenvalue test on the polarized singlet family") {
  for (double x : {0.1, 0.5, 0.66}) REQUIRE(largest_eig_test(make_density(SingletPolarized{x}), {0}).pass);
  for (double x : {0.68, 0.9, 1.0})
    REQUIRE_FALSE(largest_eig_test(make_density(SingletPolarized{x}), {0}).pass);
}

TEST_CASE("largest eigenvalue test on the psi mixture crosses at 5/7") {
  const auto family = psi_family(0.8);
  REQUIRE(largest_eig_test(make_density(family(5.0 / 7.0 - 1e-3)), {0}).pass);
  REQUIRE_FALSE(largest_eig_test(make_density(family(5.0 / 7.0 + 1e-3)), {0}).pass);
}

TEST_CASE("largest eigenvalue test on Bell-diagonal states") {
  REQUIRE(largest_eig_test(make_density(BellDiagonal{{0.5, 0.3, 0.1, 0.1}}), {0}).pass);
  REQUIRE_FALSE(largest_eig_test(make_density(BellDiagonal{{0.6, 0.4, 0.0, 0.0}}), {0}).pass);
  const auto report = largest_eig_test(make_density(BellDiagonal{{0.25, 0.25, 0.25, 0.25}}), {0});
  REQUIRE(report.p1_a == Catch::Approx(0.5).margin(1e-12));
  REQUIRE(report.pass);
}

TEST_CASE("ppt_test reproduces the closed-form minimum eigenvalues") {
  for (double x : {0.2, 0.5, 0.9}) {
    const double numeric = ppt_test(make_density(SingletPolarized{x}), std::size_t{0});
    REQUIRE(numeric ==
            Catch::Approx(oracles::sigma1_singlet_polarized(x)).margin(1e-10));
  }
  for (double r : {0.25, 0.7}) {
    const auto family = singlet_product_family(r);
    for (double x : {0.3, 0.8}) {
      const double numeric = ppt_test(make_density(family(x)), std::size_t{0});
      REQUIRE(numeric ==
              Catch::Approx(oracles::singlet_product_values(x, r).sigma1).margin(1e-10));
    }
  }
}

TEST_CASE("entropic test goes negative for the Werner state at x=0.5, q=20") {
  const auto rho = make_density(WernerPopescu{0.5});
  REQUIRE(entropic_test(rho, {0}, EntropicFunction::tsallis(20.0)) < 0.0);
  // x = 0.5 sits above the frozen q=20 root.
  REQUIRE(0.5 > kWernerTsallisQ20Root);
}

TEST_CASE("entropic tests stay non-negative below the crossing") {
  const auto family = singlet_product_family(0.5);  // x_c = 1/2
  const auto rho = make_density(family(0.3));
  for (const auto& f : default_battery()) REQUIRE(entropic_test(rho, {0}, f) >= -1e-10);
  REQUIRE(ppt_test(rho, std::size_t{0}) < -1e-6);
}

TEST_CASE("every battery entropy has its polarized-singlet root at 2/3") {
  const auto family = singlet_polarized_family();
  for (const auto& f : default_battery()) {
    const double root = find_entropic_root(family, {0}, f);
    REQUIRE(root == Catch::Approx(2.0 / 3.0).margin(1e-8));
  }
}

TEST_CASE("Werner roots match the frozen references and the asymptote") {
  const auto family = werner_family();
  REQUIRE(find_entropic_root(family, {0}, EntropicFunction::von_neumann(1.0)) ==
          Catch::Approx(kWernerVnRoot).margin(1e-8));
  REQUIRE(find_entropic_root(family, {0}, EntropicFunction::tsallis(20.0)) ==
          Catch::Approx(kWernerTsallisQ20Root).margin(1e-8));
  REQUIRE(find_entropic_root(family, {0}, EntropicFunction::exp_form(20.0)) ==
          Catch::Approx(kWernerExpQ20Root).margin(1e-8));

  const double root100 = find_entropic_root(family, {0}, EntropicFunction::tsallis(100.0));
  REQUIRE(root100 == Catch::Approx(kWernerTsallisQ100Root).margin(1e-8));
  const double asym = oracles::werner_xr_asymptote(100.0, oracles::XrTag::kTsallis);
  REQUIRE(std::abs(root100 - asym) < 0.1 * (asym - 1.0 / 3.0));
}

TEST_CASE("psi mixture roots converge exponentially to 5/7") {
  const auto family = psi_family(0.8);
  const double q10 = find_entropic_root(family, {0}, EntropicFunction::tsallis(10.0));
  REQUIRE(q10 == Catch::Approx(kPsiTsallisQ10Root).margin(1e-8));
  const double q30 = find_entropic_root(family, {0}, EntropicFunction::tsallis(30.0));
  REQUIRE(std::abs(q30 - 5.0 / 7.0) <= 1e-6);
}

TEST_CASE("root finding reports a missing sign change") {
  // r = 0: S_f^A < 0 on all of (0,1], no positive stretch to bracket.
  const auto family = singlet_product_family(0.0);
  REQUIRE_THROWS_AS(find_entropic_root(family, {0}, EntropicFunction::tsallis(2.0)),
                    NoSignChangeError);
}

TEST_CASE("root finding handles a root sitting exactly on a grid point") {
  // r = 1/2 puts the f-independent crossing at x = 1/2, a point of the
  // 41-point scan grid where the spectra of rho and rho_A coincide.
  const auto family = singlet_product_family(0.5);
  for (const auto& f : {EntropicFunction::von_neumann(1.0), EntropicFunction::tsallis(20.0)})
    REQUIRE(find_entropic_root(family, {0}, f) == Catch::Approx(0.5).margin(1e-8));
}

TEST_CASE("monotone convergence of roots from above") {
  const std::vector<double> qs{2.0, 5.0, 10.0, 20.0, 50.0, 100.0};
  {
    const auto family = werner_family();
    double prev = 1.0;
    for (double q : qs) {
      const double root = find_entropic_root(family, {0}, EntropicFunction::tsallis(q));
      REQUIRE(root <= prev + 1e-12);
      REQUIRE(root >= 1.0 / 3.0 - 1e-9);
      prev = root;
    }
  }
  {
    const auto family = psi_family(0.8);
    double prev = 1.0;
    for (double q : qs) {
      const double root = find_entropic_root(family, {0}, EntropicFunction::tsallis(q));
      REQUIRE(root <= prev + 1e-12);
      REQUIRE(root >= 5.0 / 7.0 - 1e-9);
      prev = root;
    }
  }
}

TEST_CASE("largest-eigenvalue pass implies disorder pass on two qubits") {
  SplitMix64 rng(61);
  int passes = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto rho = test_helpers::random_density(rng, {2, 2});
    if (largest_eig_test(rho, {0}).pass) {
      ++passes;
      REQUIRE(disorder_criterion(rho, {0}).is_more_mixed);
    }
  }
  REQUIRE(passes > 0);
}

TEST_CASE("large-q Tsallis sign agrees with the largest-eigenvalue gap") {
  const auto f500 = EntropicFunction::tsallis(500.0);
  const std::vector<std::pair<FamilyTemplate, std::vector<std::size_t>>> cases{
      {singlet_polarized_family(), {0}},
      {werner_family(), {0}},
      {psi_family(0.8), {0}},
      {[](double x) { return StateFamily{GhzWerner{x, 3, 2}}; }, {0}},
  };
  for (const auto& [family, subsystem] : cases) {
    for (int i = 0; i <= 40; ++i) {
      const double x = i / 40.0;
      const auto rho = make_density(family(x));
      const auto gap = largest_eig_test(rho, subsystem);
      if (std::abs(gap.p1 - gap.p1_a) < 1e-3) continue;  // unresolvable at finite q
      const double value = entropic_test(rho, subsystem, f500);
      REQUIRE(value != 0.0);
      REQUIRE(std::signbit(value) == std::signbit(gap.p1_a - gap.p1));
    }
  }
}

TEST_CASE("x_c dominates x_e for the psi mixture") {
  for (int i = 1; i < 50; ++i) {
    const double a2 = i / 50.0;
    const auto values = oracles::psi_mixture_values(std::sqrt(a2), std::sqrt(1.0 - a2));
    REQUIRE(values.x_c >= values.x_e - 1e-12);
    if (std::abs(a2 - 0.5) > 1e-9) {
      REQUIRE(values.x_c > values.x_e + 1e-9);
    } else {
      REQUIRE(values.x_c == Catch::Approx(values.x_e).margin(1e-9));
    }
  }
}

TEST_CASE("classify aggregates the criteria coherently") {
  const auto battery = default_battery();
  {
    // Entangled but undetected by any spectral/entropic criterion.
    const auto report = classify(make_density(SingletPolarized{0.5}), {0}, battery);
    REQUIRE(report.ppt_min_eigenvalue < -1e-8);
    REQUIRE(report.disorder_pass_a);
    REQUIRE(report.disorder_pass_b);
    REQUIRE(report.largest_eig_pass);
    for (const auto& s : report.entropic_signs) REQUIRE(s.sign >= 0);
    REQUIRE(report.entangled_certified());
  }
  {
    ComplexMatrix id = ComplexMatrix::identity(4);
    id *= Complex{0.25, 0.0};
    const auto report = classify(DensityMatrix{id, {2, 2}}, {0}, battery);
    REQUIRE(report.ppt_min_eigenvalue >= -1e-10);
    REQUIRE(report.disorder_pass_a);
    REQUIRE(report.largest_eig_pass);
    REQUIRE(report.reduction_min_eigenvalue >= -1e-10);
    for (const auto& s : report.entropic_signs) REQUIRE(s.sign >= 0);
    REQUIRE_FALSE(report.entangled_certified());
  }
  {
    const auto report = classify(make_density(SingletPolarized{1.0}), {0}, battery);
    REQUIRE(report.ppt_min_eigenvalue == Catch::Approx(-0.5).margin(1e-10));
    REQUIRE_FALSE(report.disorder_pass_a);
    REQUIRE_FALSE(report.largest_eig_pass);
    REQUIRE(report.reduction_min_eigenvalue == Catch::Approx(-0.5).margin(1e-10));
    for (const auto& s : report.entropic_signs) REQUIRE(s.sign < 0);
    REQUIRE(report.entangled_certified());
  }
}

TEST_CASE("classify works across a multipartite prefix bipartition") {
  const auto battery = default_battery();
  // Below the m=2 threshold 1/5: nothing certifies entanglement.
  const auto low = classify(make_density(GhzWerner{0.15, 2, 3}), {0, 1}, battery);
  REQUIRE(low.largest_eig_pass);
  REQUIRE(low.disorder_pass_a);
  // Above: the largest-eigenvalue comparison fails and large q catches it.
  const auto high = classify(make_density(GhzWerner{0.5, 2, 3}), {0, 1}, battery);
  REQUIRE_FALSE(high.largest_eig_pass);
  REQUIRE_FALSE(high.disorder_pass_a);
  REQUIRE(high.entangled_certified());
  bool some_negative = false;
  for (const auto& s : high.entropic_signs) some_negative |= (s.sign < 0);
  REQUIRE(some_negative);
}

TEST_CASE("disorder failure at i=1 coincides with a largest-eigenvalue failure") {
  SplitMix64 rng(67);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = test_helpers::random_density(rng, {2, 2});
    const auto verdict = disorder_criterion(rho, {0});
    const bool eig_fail = !largest_eig_test(rho, {0}).pass;
    const bool i1_fail = verdict.first_violation_index == std::size_t{1};
    REQUIRE(eig_fail == i1_fail);
  }
}

TEST_CASE("piecewise-linear witness detects majorization violations") {
  SplitMix64 rng(71);
  int violations = 0;
  for (int trial = 0; trial < 300 || violations < 30; ++trial) {
    REQUIRE(trial < 5000);
    const std::size_t n = 3 + rng.next() % 3;
    const Spectrum a(test_helpers::random_simplex(rng, n));
    const Spectrum b(test_helpers::random_simplex(rng, n));
    const auto verdict = majorization_compare(a, b);
    if (verdict.is_more_mixed) continue;
    ++violations;
    const std::size_t i = *verdict.first_violation_index;
    const double t = b.probs()[i];  // p'_{i+1} in 0-based storage
    REQUIRE(t > 0.0);
    const auto witness =
        EntropicFunction::gq_form([t](double p) { return std::max(0.0, (p - t) / (1.0 - t)); });
    REQUIRE(s_f(a, witness) < s_f(b, witness));
  }
}

TEST_CASE("a built two-qutrit state violates majorization at the second index") {
  // Equal mixture of two orthogonal pure states with identical Schmidt
  // weights (0.8, 0.1, 0.1). The mixture's spectrum is (1/2, 1/2, 0, ...),
  // its reduction diag(0.8, 0.1, 0.1): the first partial sum is fine
  // (0.5 <= 0.8) but the second overshoots (1.0 > 0.9).
  const double w0 = std::sqrt(0.8), w1 = std::sqrt(0.1);
  std::vector<Complex> psi1(9, 0.0), psi2(9, 0.0);
  psi1[0] = w0;   // |00>
  psi1[4] = w1;   // |11>
  psi1[8] = w1;   // |22>
  psi2[1] = w0;   // |01>
  psi2[5] = w1;   // |12>
  psi2[6] = w1;   // |20>
  ComplexMatrix mix = pure_state(psi1, {3, 3}).matrix;
  ComplexMatrix other = pure_state(psi2, {3, 3}).matrix;
  mix *= Complex{0.5, 0.0};
  other *= Complex{0.5, 0.0};
  mix += other;
  const DensityMatrix rho = validated_density(mix, {3, 3});

  const auto verdict = disorder_criterion(rho, {0});
  REQUIRE_FALSE(verdict.is_more_mixed);
  REQUIRE(verdict.first_violation_index == std::size_t{2});
  REQUIRE(verdict.margin == Catch::Approx(-0.1).margin(1e-10));
  // Violating disorder certifies entanglement, yet p1 < p1^A keeps every
  // large-q test blind; detection happens at small q only.
  REQUIRE(largest_eig_test(rho, {0}).pass);
  REQUIRE(entropic_test(rho, {0}, EntropicFunction::tsallis(0.5)) < -0.1);
  REQUIRE(entropic_test(rho, {0}, EntropicFunction::von_neumann(1.0)) > 0.0);
  REQUIRE(entropic_test(rho, {0}, EntropicFunction::tsallis(50.0)) > 0.0);

  // The hinge witness at t = p'_3 = 0.1 sees the reversal.
  const auto witness =
      EntropicFunction::gq_form([](double p) { return std::max(0.0, (p - 0.1) / 0.9); });
  const Spectrum full = spectrum_of(rho);
  const Spectrum red = spectrum_of(partial_trace(rho, {0}));
  REQUIRE(s_f(full, witness) < s_f(red, witness));
}

TEST_CASE("searching two-qutrit states for a violation beyond the first index") {
  SplitMix64 rng(73);
  int found = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto rho = test_helpers::random_density(rng, {3, 3});
    const auto verdict = disorder_criterion(rho, {0});
    if (!verdict.is_more_mixed && *verdict.first_violation_index == 2) {
      ++found;
      // Sanity of such an instance: the first partial sum is fine, the
      // second overshoots.
      const Spectrum full = spectrum_of(rho);
      const Spectrum red = spectrum_of(partial_trace(rho, {0}));
      REQUIRE(full.p1() <= red.p1() + 1e-10);
      REQUIRE(full.partial_sums()[1] > red.partial_sums()[1] + 1e-10);
    }
  }
  // The search itself must run; hits are not guaranteed for random states.
  INFO("first_violation_index == 2 instances found: " << found);
  SUCCEED();
}
