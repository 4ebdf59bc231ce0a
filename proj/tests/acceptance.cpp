// Acceptance report: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "approx.hpp"
#include "extremal.hpp"
#include "hamming.hpp"
#include "hermite.hpp"
#include "jobs.hpp"
#include "operators.hpp"
#include "oracles.hpp"
#include "quadrature.hpp"

using namespace tailspace;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

HermiteExpansion random_hermite(int n, int low, int high, std::mt19937_64& rng, bool real) {
  std::normal_distribution<double> g;
  HermiteExpansion::Terms t;
  for (const auto& a : indices_between(n, low, high))
    t.emplace(a, Complex(g(rng), real ? 0.0 : g(rng)) / std::sqrt(a.factorial()));
  return HermiteExpansion(n, t);
}

Outcome hermite_calculus() {
  double orth = 0.0;
  for (int k = 0; k <= 25; ++k)
    for (int j = 0; j <= 25; ++j) {
      const Complex ip = inner_product(HermiteExpansion::single(MultiIndex{k}),
                                       HermiteExpansion::single(MultiIndex{j}));
      const double target = k == j ? factorial(k) : 0.0;
      orth = std::max(orth, std::abs(ip - target) / std::sqrt(factorial(k) * factorial(j)));
    }
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const auto rule1 = QuadratureRule::gauss_hermite(9);
  const auto rule2 = QuadratureRule::tensor(9, 2);
  double integral = 0.0;
  for (int n = 1; n <= 2; ++n)
    for (const auto& alpha : indices_between(n, 0, 15)) {
      std::vector<double> x(n);
      for (auto& xi : x) xi = u(rng);
      const Complex direct =
          evaluate(HermiteExpansion::single(alpha), std::span<const double>(x));
      const Complex via = hermite_via_integral(alpha, x, n == 1 ? rule1 : rule2);
      integral = std::max(integral, std::abs(via - direct) / std::max(1.0, std::abs(direct)));
    }
  return {orth <= 1e-10 && integral <= 1e-10,
          "orthogonality err " + fmt("%.2e", orth) + ", integral vs recurrence err " +
              fmt("%.2e", integral)};
}

Outcome operator_identities() {
  const auto L = SpectralMultiplier::power(1);
  bool exact = true;
  for (int n = 1; n <= 3; ++n)
    for (const auto& a : indices_between(n, 0, 20)) {
      const double k = a.order();
      exact = exact && spectral_apply(HermiteExpansion::single(a), L) ==
                           HermiteExpansion::single(a, k);
      exact = exact && spectral_apply(AnalyticPoly::single(a), L) == AnalyticPoly::single(a, k);
    }
  std::mt19937_64 rng(2);
  NormRequest req;
  req.p = 2.0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const HermiteExpansion g = random_hermite(1 + i % 2, 0, 2 + i % 7, rng, i % 3 == 0);
    const double grad = lp_norm(gradient(g), req).value;
    const double half = lp_norm(spectral_apply(g, SpectralMultiplier::power(0.5)), req).value;
    worst = std::max(worst, std::abs(grad - half) / std::max(half, 1e-300));
  }
  return {exact && worst <= 1e-9, std::string("eigenrelation ") + (exact ? "exact" : "NOT exact") +
                                      ", gradient vs L^{1/2} rel err " + fmt("%.2e", worst)};
}

Outcome analytic_suite() {
  std::mt19937_64 rng(3);
  const double ps[] = {1.0, 1.5, 2.0, 3.0, 4.0};
  int checks = 0, failures = 0;
  auto record = [&](const InequalityReport& r) {
    ++checks;
    if (!r.pass) ++failures;
  };
  for (int i = 0; i < 200; ++i) {
    std::uniform_int_distribution<int> deg(0, 8);
    int lo = deg(rng), hi = deg(rng);
    if (lo > hi) std::swap(lo, hi);
    const AnalyticPoly f = random_analytic(1, lo, hi, rng);
    InequalityParams prm;
    prm.p = ps[i % 5];
    prm.d = lo;
    for (double t : {0.1, 0.5, 1.0}) {
      prm.t = t;
      record(check_inequality(InequalityKind::heat_smoothing, f, prm));
    }
    record(check_inequality(InequalityKind::spectral_lower, f, prm));
    record(check_inequality(InequalityKind::grad_lower, f, prm));
    record(check_inequality(InequalityKind::interpolation, f, prm));
    prm.d = hi;
    record(check_inequality(InequalityKind::bernstein, f, prm));
    for (auto [p, q] : {std::pair{1.0, 2.0}, {2.0, 4.0}, {0.5, 1.0}}) {
      InequalityParams m = prm;
      m.p = p;
      m.q = q;
      record(check_inequality(InequalityKind::moment, f, m));
      if (p >= 1.0) {
        m.rho = std::sqrt(p / q);
        record(check_inequality(InequalityKind::janson, f, m));
      }
    }
  }
  double sharp = 0.0;
  for (int d = 0; d <= 8; ++d) {
    const AnalyticPoly f = AnalyticPoly::single(MultiIndex{d});
    for (double p : ps) {
      InequalityParams prm;
      prm.p = p;
      prm.d = d;
      sharp = std::max(sharp, std::abs(check_inequality(InequalityKind::bernstein, f, prm).slack));
      for (double t : {0.1, 0.5, 1.0}) {
        prm.t = t;
        sharp = std::max(
            sharp, std::abs(check_inequality(InequalityKind::heat_smoothing, f, prm).slack));
      }
    }
  }
  return {failures == 0 && sharp <= 1e-9,
          std::to_string(checks) + " checks, " + std::to_string(failures) +
              " failures; witness |slack| max " + fmt("%.2e", sharp)};
}

Outcome moment_closed_form() {
  NormRequest two, four;
  two.p = 2.0;
  four.p = 4.0;
  double worst = 0.0;
  bool bounded = true;
  for (int d = 0; d <= 6; ++d) {
    const AnalyticPoly z = AnalyticPoly::single(MultiIndex{d});
    const double q = analytic_lp_norm(z, four).value / analytic_lp_norm(z, two).value;
    const double binom = std::tgamma(2 * d + 1) / std::pow(std::tgamma(d + 1), 2);
    worst = std::max(worst, std::abs(q - std::pow(binom, 0.25)));
    bounded = bounded && q <= std::pow(2.0, d / 2.0);
  }
  return {worst <= 1e-8 && bounded,
          "closed form err " + fmt("%.2e", worst) + (bounded ? ", within 2^{d/2}" : ", bound violated")};
}

Outcome best_approximation() {
  std::mt19937_64 rng(5);
  NormRequest req;
  req.p = 2.0;
  double l2 = 0.0, cert = 0.0, brute = 0.0;
  bool converged = true;
  auto track = [&](const ApproxResult& r) {
    cert = std::max(cert, r.gradient_norm);
    converged = converged && r.converged;
  };
  for (int i = 0; i < 50; ++i) {
    const HermiteExpansion g = random_hermite(1 + i % 2, 0, 6, rng, false);
    const int d = i % 4;
    const ApproxResult r = best_approx(g, d, 2.0);
    track(r);
    const double exact = lp_norm(project(g, d + 1), req).value;
    l2 = std::max(l2, std::abs(r.error - exact) / std::max(exact, 1e-300));
  }
  for (int i = 0; i < 6; ++i) {
    const HermiteExpansion g = random_hermite(1, 0, 3, rng, true);
    const int d = 1 + i % 2;
    const ApproxResult r = best_approx(g, d, 4.0);
    track(r);
    const double oracle = oracle::brute_force_lp_error(g, d, 4);
    brute = std::max(brute, std::abs(r.error - oracle) / oracle);
  }
  for (double p : {4.0 / 3.0, 1.5, 3.0})
    for (int i = 0; i < 4; ++i) track(best_approx(random_hermite(1, 0, 5, rng, false), 2, p));
  return {l2 <= 1e-9 && brute <= 1e-5 && cert <= 1e-7 && converged,
          "p=2 rel err " + fmt("%.2e", l2) + ", p=4 vs brute force " + fmt("%.2e", brute) +
              ", max certificate " + fmt("%.2e", cert)};
}

Outcome exact_constants() {
  ExtremalOptions o;
  o.ascent.starts = 4;
  o.ascent.max_iter = 300;
  double worst = 0.0, mass = 1.0;
  for (int d = 0; d <= 6; ++d)
    worst = std::max(worst, std::abs(estimate_constant(ConstantKind::freud_F, 1, 2.0, d, d + 3, o).value - 1.0));
  for (ConstantKind k : {ConstantKind::riesz_lower_m, ConstantKind::riesz_upper_M})
    worst = std::max(worst, std::abs(estimate_constant(k, 1, 2.0, 0, 8, o).value - 1.0));
  for (int d = 1; d <= 6; ++d) {
    const ConstantEstimate e = estimate_constant(ConstantKind::corollary_T, 1, 2.0, d, d + 2, o);
    worst = std::max(worst, std::abs(e.value - 1.0));
    mass = std::min(mass, level_mass_fraction(e.extremizer, d));
  }
  return {worst <= 1e-5 && mass >= 0.99,
          "max |value - 1| " + fmt("%.2e", worst) + ", min level-d mass " + fmt("%.6f", mass)};
}

Outcome duality_probe() {
  ExtremalOptions o;
  o.ascent.starts = 6;
  o.ascent.max_iter = 150;
  double lo = INFINITY, hi = 0.0, lo2 = INFINITY, hi2 = 0.0;
  std::string per_p;
  for (double p : {4.0 / 3.0, 2.0, 4.0}) {
    double plo = INFINITY, phi = 0.0;
    for (const DualityRow& r : duality_table(1, p, 1, 4, 8, o)) {
      plo = std::min(plo, r.ratio);
      phi = std::max(phi, r.ratio);
    }
    lo = std::min(lo, plo);
    hi = std::max(hi, phi);
    if (p == 2.0) {
      lo2 = plo;
      hi2 = phi;
    }
    per_p += " p=" + fmt("%.4g", p) + " [" + fmt("%.6f", plo) + ", " + fmt("%.6f", phi) + "]";
  }
  const bool band = hi / lo <= 10.0;
  const bool p2 = lo2 >= 1.0 / std::sqrt(2.0) - 1e-3 && hi2 <= 1.0 + 1e-3;
  return {band && p2, "band width " + fmt("%.4f", hi / lo) + ";" + per_p};
}

Outcome hypercube() {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> sign(0, 1);
  std::normal_distribution<double> g;
  bool exact = true;
  double gauss_diff = 0.0, parseval = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 8;
    std::vector<Complex> ints(std::size_t{1} << n), reals(ints.size());
    for (std::size_t j = 0; j < ints.size(); ++j) {
      ints[j] = {sign(rng) ? 1.0 : -1.0, static_cast<double>(sign(rng))};
      reals[j] = {g(rng), g(rng)};
    }
    const auto f = BooleanFunction::from_values(ints);
    exact = exact && cube_laplacian(f).values() == cube_laplacian_flip(f).values();
    const auto h = BooleanFunction::from_values(reals);
    const auto a = cube_laplacian(h).values(), b = cube_laplacian_flip(h).values();
    double l2 = 0.0, coeffs = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      gauss_diff = std::max(gauss_diff, std::abs(a[j] - b[j]));
      l2 += std::norm(h.values()[j]);
      coeffs += std::norm(h.walsh()[j]);
    }
    l2 /= static_cast<double>(a.size());
    parseval = std::max(parseval, std::abs(l2 - coeffs) / l2);
  }
  CubeExtremalOptions o;
  o.ascent.starts = 3;
  double cube = 0.0;
  for (int n = 1; n <= 6; ++n)
    for (int d = 1; d <= n; ++d) cube = std::max(cube, std::abs(cube_extremal(n, d, 2.0, o).value - d));
  return {exact && gauss_diff <= 1e-12 && parseval <= 1e-12 && cube <= 1e-12,
          std::string("laplacians ") + (exact ? "identical" : "DIFFER") + " on integer data, " +
              fmt("%.1e", gauss_diff) + " on Gaussian data; cube p=2 err " + fmt("%.1e", cube) +
              "; Parseval " + fmt("%.1e", parseval)};
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "tailspace_acceptance";
  std::filesystem::create_directories(dir);
  const auto poly = (dir / "g.json").string();
  std::ofstream(poly) << R"({"basis": "hermite", "dim": 1, "terms": [{"alpha": [4], "re": 1}, {"alpha": [1], "re": 0.5, "im": -1}]})";
  const std::vector<std::string> jobs{
      R"({"command": "hermite", "sub": "table", "k": 10})",
      R"({"command": "hermite", "sub": "rule", "k": 7})",
      R"({"command": "norm", "p": 3, "poly": ")" + poly + "\"}",
      R"({"command": "verify", "sub": "analytic", "p": 1.5, "d": 3, "count": 4, "seed": 7})",
      R"({"command": "verify", "sub": "gauss", "seed": 7})",
      R"({"command": "verify", "sub": "cube", "n": 4, "seed": 7})",
      R"({"command": "approx", "p": 3, "d": 2, "poly": ")" + poly + "\"}",
      R"({"command": "constant", "sub": "freud", "p": 4, "d": 1, "D": 4, "starts": 3, "max_iter": 80, "seed": 7})",
      R"({"command": "constant", "sub": "jackson", "p": 3, "d": 1, "D": 3, "starts": 2, "max_iter": 40, "seed": 7})",
      R"({"command": "constant", "sub": "riesz", "p": 3, "D": 3, "starts": 2, "max_iter": 60, "seed": 7})",
      R"({"command": "constant", "sub": "corollary", "p": 4, "d": 2, "D": 4, "starts": 2, "max_iter": 60, "seed": 7})",
      R"({"command": "duality", "p": 4, "d": 2, "D": 4, "starts": 2, "max_iter": 40, "seed": 7})",
      R"({"command": "cube", "n": 4, "d": 2, "p": 4, "starts": 3, "seed": 7})"};
  int differing = 0;
  for (const auto& text : jobs) {
    const JobConfig c = JobConfig::from_json(nlohmann::json::parse(text));
    const Report a = run_command(c), b = run_command(c);
    if (a.to_csv() != b.to_csv() || a.to_json() != b.to_json() ||
        a.failures().dump() != b.failures().dump())
      ++differing;
  }
  std::filesystem::remove_all(dir);
  return {differing == 0, std::to_string(jobs.size()) + " suites rerun, " +
                              std::to_string(differing) + " differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Hermite calculus", hermite_calculus},
      {"operator identities", operator_identities},
      {"analytic theorem suite", analytic_suite},
      {"moment-comparison closed form", moment_closed_form},
      {"best approximation", best_approximation},
      {"extremal constants, exact cases", exact_constants},
      {"duality probe", duality_probe},
      {"hypercube", hypercube},
      {"determinism", determinism}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("criterion %zu: %s  %s (%s) [%.1f s]\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed;
}
