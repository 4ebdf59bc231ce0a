#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "analytic.hpp"
#include "operators.hpp"

using namespace tailspace;

namespace {

AnalyticPoly Z(std::initializer_list<int> alpha, Complex c = 1.0) {
  return AnalyticPoly::single(MultiIndex(alpha), c);
}

InequalityParams params(double p, int d) {
  InequalityParams prm;
  prm.p = p;
  prm.d = d;
  return prm;
}

double central_binomial(int d) { return std::tgamma(2 * d + 1) / std::pow(std::tgamma(d + 1), 2); }

// Every asserted kind on f of exact degree range [lo, hi] at exponent p.
std::vector<InequalityReport> suite(const AnalyticPoly& f, double p, double tol) {
  std::vector<InequalityReport> out;
  const int lo = f.min_degree(), hi = f.max_degree();
  InequalityParams prm = params(p, lo);
  prm.tol = tol;
  for (double t : {0.1, 0.5, 1.0}) {
    prm.t = t;
    out.push_back(check_inequality(InequalityKind::heat_smoothing, f, prm));
  }
  out.push_back(check_inequality(InequalityKind::spectral_lower, f, prm));
  out.push_back(check_inequality(InequalityKind::grad_lower, f, prm));
  out.push_back(check_inequality(InequalityKind::interpolation, f, prm));
  prm.d = hi;
  out.push_back(check_inequality(InequalityKind::bernstein, f, prm));
  for (double t : {0.1, 0.5, 1.0}) {
    prm.t = t;
    prm.q = 2.0 * p;
    out.push_back(check_inequality(InequalityKind::reverse_heat, f, prm));
  }
  prm.q = 2.0 * p;
  out.push_back(check_inequality(InequalityKind::moment, f, prm));
  prm.rho = std::sqrt(p / prm.q);
  out.push_back(check_inequality(InequalityKind::janson, f, prm));
  return out;
}

}  // namespace

TEST_CASE("analytic norm examples") {
  NormRequest req;
  for (double p : {1.0, 2.0, 3.0}) {
    req.p = p;
    CHECK(analytic_lp_norm(Z({0}), req).value == doctest::Approx(1.0).epsilon(1e-12));
  }
  req.p = 2.0;
  CHECK(analytic_lp_norm(Z({1}), req).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(analytic_lp_norm(Z({3}), req).value == doctest::Approx(std::sqrt(48.0)).epsilon(1e-14));
}

TEST_CASE("single-frequency witnesses are sharp") {
  for (int d = 1; d <= 8; ++d) {
    const AnalyticPoly f = Z({d}, Complex(0.3, -1.1));
    for (double p : {1.0, 2.0, 3.0}) {
      const auto b = check_inequality(InequalityKind::bernstein, f, params(p, d));
      CHECK(b.pass);
      CHECK(std::abs(b.slack) <= 1e-9 * std::max(1.0, b.rhs));
      for (double t : {0.1, 0.5, 1.0}) {
        InequalityParams prm = params(p, d);
        prm.t = t;
        const auto h = check_inequality(InequalityKind::heat_smoothing, f, prm);
        CHECK(h.pass);
        CHECK(std::abs(h.slack) <= 1e-9 * std::max(1.0, h.rhs));
      }
    }
  }
}

TEST_CASE("moment comparison examples") {
  InequalityParams prm = params(2.0, 1);
  prm.q = 4.0;
  const auto r = check_inequality(InequalityKind::moment, Z({1}), prm);
  CHECK(r.lhs == doctest::Approx(std::pow(8.0, 0.25)).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.slack == doctest::Approx(2.0 - std::pow(8.0, 0.25)).epsilon(1e-10));
  CHECK(r.pass);

  NormRequest two, four;
  two.p = 2.0;
  four.p = 4.0;
  for (int d = 1; d <= 6; ++d) {
    const double quotient =
        analytic_lp_norm(Z({d}), four).value / analytic_lp_norm(Z({d}), two).value;
    CHECK(quotient == doctest::Approx(std::pow(central_binomial(d), 0.25)).epsilon(1e-8));
    CHECK(quotient <= std::pow(2.0, d / 2.0));
  }
}

TEST_CASE("zero input passes and is flagged") {
  const AnalyticPoly zero(1);
  const auto r = check_inequality(InequalityKind::bernstein, zero, params(2.0, 3));
  CHECK(r.pass);
  CHECK(r.zero_input);
}

TEST_CASE("domain violations are rejected") {
  CHECK_THROWS_AS(check_inequality(InequalityKind::heat_smoothing, Z({1}), params(2.0, 2)), Error);
  CHECK_THROWS_AS(check_inequality(InequalityKind::bernstein, Z({3}), params(2.0, 2)), Error);
  InequalityParams prm = params(2.0, 1);
  prm.q = 4.0;
  prm.rho = 0.9;
  CHECK_THROWS_AS(check_inequality(InequalityKind::janson, Z({1}), prm), Error);
  CHECK_THROWS_AS(parse_inequality_kind("nonsense"), Error);
}

TEST_CASE("seeded random suite passes at n = 1") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 12; ++i) {
    std::uniform_int_distribution<int> deg(0, 8);
    int lo = deg(rng), hi = deg(rng);
    if (lo > hi) std::swap(lo, hi);
    const AnalyticPoly f = random_analytic(1, lo, hi, rng);
    for (double p : {1.0, 1.5, 2.0, 3.0, 4.0})
      for (const auto& r : suite(f, p, 1e-10)) {
        CAPTURE(inequality_kind_name(r.kind));
        CAPTURE(p);
        CHECK(r.pass);
      }
  }
}

TEST_CASE("random suite at n = 2 with even exponents") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 4; ++i) {
    const AnalyticPoly f = random_analytic(2, 1, 3, rng);
    for (double p : {2.0, 4.0})
      for (const auto& r : suite(f, p, 1e-10)) {
        CAPTURE(inequality_kind_name(r.kind));
        CHECK(r.pass);
      }
  }
}

TEST_CASE("non-even exponent at n = 2 reports its tolerance") {
  std::mt19937_64 rng(9);
  const AnalyticPoly f = random_analytic(2, 1, 2, rng);
  InequalityParams prm = params(3.0, 2);
  prm.tol = 1e-4;
  const auto r = check_inequality(InequalityKind::bernstein, f, prm);
  CHECK(r.converged);
  CHECK(r.pass);
  CHECK(r.lhs_tolerance > 0.0);
}

TEST_CASE("norms are rotation invariant") {
  std::mt19937_64 rng(10);
  NormRequest req;
  for (double p : {1.5, 3.0}) {
    req.p = p;
    const AnalyticPoly f = random_analytic(1, 0, 5, rng);
    const NormResult a = analytic_lp_norm(f, req);
    const NormResult b = analytic_lp_norm(rotate(f, 0.77), req);
    CHECK(std::abs(a.value - b.value) <= 2.0 * (a.tolerance + b.tolerance) * a.value + 1e-14);
  }
}

TEST_CASE("random_analytic is normalized and respects the degree range") {
  std::mt19937_64 rng(11);
  NormRequest req;
  req.p = 2.0;
  for (int i = 0; i < 5; ++i) {
    const AnalyticPoly f = random_analytic(2, 2, 5, rng);
    CHECK(f.min_degree() >= 2);
    CHECK(f.max_degree() <= 5);
    CHECK(analytic_lp_norm(f, req).value == doctest::Approx(1.0).epsilon(1e-12));
  }
  std::mt19937_64 a(99), b(99);
  CHECK(random_analytic(1, 0, 6, a) == random_analytic(1, 0, 6, b));
}

TEST_CASE("gradient ratio is report-only") {
  const auto r = check_inequality(InequalityKind::gradient_ratio, Z({2}), params(2.0, 2));
  CHECK_FALSE(r.asserted);
  CHECK(r.pass);
  // |grad z^2|^2 = 2 |2 z|^2, so ||grad z^2||_2 = 2 sqrt(2) sqrt(2) = 4.
  CHECK(r.lhs == doctest::Approx(4.0).epsilon(1e-12));
}
