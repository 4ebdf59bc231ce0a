#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "hamming.hpp"

using namespace tailspace;

namespace {

BooleanFunction random_function(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(std::size_t{1} << n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return BooleanFunction::from_values(v);
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("walsh examples") {
  const int n = 4;
  const std::uint32_t all = (1u << n) - 1;
  const auto parity = BooleanFunction::character(n, all);
  for (std::uint32_t s = 0; s <= all; ++s)
    CHECK(std::abs(parity.walsh()[s] - (s == all ? 1.0 : 0.0)) < 1e-15);

  // Maj_3 on x_j = 1 - 2 bit_j(i).
  std::vector<Complex> maj(8);
  for (int i = 0; i < 8; ++i) {
    const int ones = std::popcount(static_cast<unsigned>(i));
    maj[i] = ones >= 2 ? -1.0 : 1.0;
  }
  const auto f = BooleanFunction::from_values(maj);
  for (std::uint32_t s = 0; s < 8; ++s) {
    double expect = 0.0;
    if (std::popcount(s) == 1) expect = 0.5;
    if (s == 7) expect = -0.5;
    CHECK(std::abs(f.walsh()[s] - expect) < 1e-15);
  }

  const auto one = BooleanFunction::from_values(std::vector<Complex>(8, 1.0));
  CHECK(std::abs(one.walsh()[0] - 1.0) < 1e-15);
}

TEST_CASE("laplacian and derivative examples") {
  const auto x1x2 = BooleanFunction::character(2, 0b11);
  std::vector<Complex> twice = x1x2.values();
  for (auto& v : twice) v *= 2.0;
  CHECK(max_diff(cube_laplacian(x1x2).values(), twice) < 1e-15);
  const auto c = BooleanFunction::from_values(std::vector<Complex>(4, 3.0));
  for (const Complex v : cube_laplacian(c).values()) CHECK(std::abs(v) < 1e-15);
  CHECK(max_diff(cube_derivative(x1x2, 0).values(), x1x2.values()) < 1e-15);
}

TEST_CASE("norm examples") {
  const auto x1 = BooleanFunction::character(2, 0b01);
  for (double p : {1.0, 1.5, 2.0, 7.0}) CHECK(cube_lp_norm(x1, p) == doctest::Approx(1.0));
  const auto sum = BooleanFunction::from_walsh({0.0, 1.0, 1.0, 0.0});
  CHECK(cube_lp_norm(sum, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cube_lp_norm(BooleanFunction::character(2, 0b11), 4.0) == doctest::Approx(1.0));
}

TEST_CASE("spectral and flip laplacians agree exactly") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 8;
    const auto f = random_function(n, rng);
    CHECK(max_diff(cube_laplacian(f).values(), cube_laplacian_flip(f).values()) <= 1e-12);
  }
}

TEST_CASE("parseval and plancherel") {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 10; ++n) {
    const auto f = random_function(n, rng);
    const auto g = random_function(n, rng);
    double l2 = 0.0, coeffs = 0.0;
    Complex ip_values = 0.0, ip_walsh = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      l2 += std::norm(f.values()[i]);
      coeffs += std::norm(f.walsh()[i]);
      ip_values += f.values()[i] * std::conj(g.values()[i]);
      ip_walsh += f.walsh()[i] * std::conj(g.walsh()[i]);
    }
    l2 /= static_cast<double>(f.size());
    ip_values /= static_cast<double>(f.size());
    CHECK(std::abs(l2 - coeffs) <= 1e-12 * l2);
    CHECK(std::abs(ip_values - ip_walsh) <= 1e-12 * l2);
    const auto back = BooleanFunction::from_walsh(f.walsh());
    CHECK(max_diff(back.values(), f.values()) <= 1e-12);
  }
}

TEST_CASE("cube extremal examples") {
  CubeExtremalOptions o;
  o.ascent.starts = 4;
  o.ascent.max_iter = 300;
  for (double p : {1.5, 2.0, 4.0}) {
    const CubeEstimate e = cube_extremal(2, 2, p, o);
    CHECK(e.value == doctest::Approx(2.0).epsilon(1e-12));
  }
  const CubeEstimate w = cube_extremal(3, 1, 4.0, o);
  CHECK(w.value <= 1.0 + 1e-12);
}

TEST_CASE("cube extremal at p = 2 equals d") {
  CubeExtremalOptions o;
  o.ascent.starts = 3;
  o.ascent.max_iter = 300;
  for (int n = 1; n <= 6; ++n)
    for (int d = 1; d <= n; ++d) {
      CAPTURE(n);
      CAPTURE(d);
      CHECK(std::abs(cube_extremal(n, d, 2.0, o).value - d) <= 1e-9);
    }
}

TEST_CASE("cube extremal is nondecreasing in d (recorded probe)") {
  CubeExtremalOptions o;
  o.ascent.starts = 3;
  o.ascent.max_iter = 300;
  std::vector<double> values;
  for (int d = 1; d <= 4; ++d) values.push_back(cube_extremal(4, d, 4.0, o).value);
  for (std::size_t i = 1; i < values.size(); ++i) {
    CAPTURE(i);
    WARN(values[i] >= values[i - 1] * (1 - 1e-9));
  }
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(BooleanFunction::from_values(std::vector<Complex>(3, 1.0)), Error);
  CHECK_THROWS_AS(BooleanFunction::from_values(std::vector<Complex>(std::size_t{1} << 13, 1.0)),
                  Error);
  CHECK_THROWS_AS(cube_extremal(3, 4, 2.0), Error);
  std::vector<Complex> v(6, 1.0);
  CHECK_THROWS_AS(walsh_hadamard(v), Error);
}
