#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "tailspace/tailspace.h"

namespace {

const char* kH2 =
    R"({"basis": "hermite", "dim": 1, "terms": [{"alpha": [2], "re": 1}]})";

std::string take(char* s) {
  std::string out = s;
  ts_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and hermite evaluation") {
  CHECK(std::strlen(ts_version()) > 0);
  double v = 0.0;
  CHECK(ts_hermite_eval(2, 2.0, &v) == TS_OK);
  CHECK(v == 3.0);
  CHECK(ts_hermite_eval(-1, 2.0, &v) == TS_INVALID_ARGUMENT);
  CHECK(std::strlen(ts_last_error()) > 0);
  CHECK(ts_hermite_eval(1, 2.0, nullptr) == TS_INVALID_ARGUMENT);
}

TEST_CASE("polynomial handles") {
  ts_poly* p = nullptr;
  REQUIRE(ts_poly_from_json(kH2, &p) == TS_OK);
  CHECK(std::strlen(ts_last_error()) == 0);
  int dim = 0, degree = 0;
  ts_basis basis = TS_BASIS_MONOMIAL;
  CHECK(ts_poly_dim(p, &dim) == TS_OK);
  CHECK(ts_poly_degree(p, &degree) == TS_OK);
  CHECK(ts_poly_basis(p, &basis) == TS_OK);
  CHECK(dim == 1);
  CHECK(degree == 2);
  CHECK(basis == TS_BASIS_HERMITE);

  const double x[] = {2.0};
  double re = 0.0, im = 1.0;
  CHECK(ts_poly_evaluate(p, x, 1, &re, &im) == TS_OK);
  CHECK(re == 3.0);
  CHECK(im == 0.0);
  CHECK(ts_poly_evaluate(p, x, 2, &re, &im) == TS_DIMENSION_MISMATCH);

  double norm = 0.0, achieved = -1.0;
  int converged = 0;
  CHECK(ts_poly_lp_norm(p, 2.0, 1e-10, &norm, &achieved, &converged) == TS_OK);
  CHECK(norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(converged == 1);
  CHECK(achieved >= 0.0);

  ts_poly* m = nullptr;
  REQUIRE(ts_poly_convert(p, TS_BASIS_MONOMIAL, &m) == TS_OK);
  CHECK(ts_poly_evaluate(m, x, 1, &re, nullptr) == TS_OK);
  CHECK(re == 3.0);

  double ip = 0.0;
  CHECK(ts_poly_inner_product(p, m, &ip, nullptr) == TS_OK);
  CHECK(ip == doctest::Approx(2.0).epsilon(1e-14));

  char* text = nullptr;
  REQUIRE(ts_poly_to_json(m, &text) == TS_OK);
  CHECK(take(text).find("monomial") != std::string::npos);

  ts_poly_free(m);
  ts_poly_free(p);
  ts_poly_free(nullptr);
}

TEST_CASE("analytic polynomials take interleaved complex points") {
  ts_poly* z = nullptr;
  REQUIRE(ts_poly_from_json(
              R"({"basis": "analytic", "dim": 1, "terms": [{"alpha": [2], "re": 1}]})", &z) ==
          TS_OK);
  const double pt[] = {0.0, 1.0};
  double re = 0.0, im = 0.0;
  CHECK(ts_poly_evaluate(z, pt, 2, &re, &im) == TS_OK);
  CHECK(re == doctest::Approx(-1.0));
  CHECK(std::abs(im) < 1e-15);
  double ip = 0.0;
  CHECK(ts_poly_inner_product(z, z, &ip, nullptr) == TS_OK);
  CHECK(ip == doctest::Approx(8.0));
  ts_poly* h = nullptr;
  CHECK(ts_poly_convert(z, TS_BASIS_HERMITE, &h) != TS_OK);
  ts_poly_free(z);
}

TEST_CASE("error codes") {
  ts_poly* p = nullptr;
  CHECK(ts_poly_from_json("{not json", &p) == TS_PARSE);
  CHECK(ts_poly_from_json(R"({"basis": "legendre", "dim": 1, "terms": []})", &p) != TS_OK);
  CHECK(ts_poly_load("/nonexistent/poly.json", &p) == TS_IO);
  CHECK(p == nullptr);
  ts_report* r = nullptr;
  CHECK(ts_run(R"({"command": "norm", "bogus": 1})", &r) == TS_INVALID_ARGUMENT);
  CHECK(ts_run("[1, 2", &r) == TS_PARSE);
  CHECK(r == nullptr);
}

TEST_CASE("quadrature rules") {
  const int m3[] = {3};
  ts_rule* rule = nullptr;
  REQUIRE(ts_rule_build("gauss_hermite", m3, 1, 1, &rule) == TS_OK);
  size_t size = 0;
  int dim = 0;
  CHECK(ts_rule_size(rule, &size) == TS_OK);
  CHECK(ts_rule_dim(rule, &dim) == TS_OK);
  CHECK(size == 3);
  CHECK(dim == 1);
  double x = 0.0, w = 0.0, total = 0.0;
  for (size_t i = 0; i < size; ++i) {
    CHECK(ts_rule_node(rule, i, &x, &w) == TS_OK);
    total += w;
  }
  CHECK(total == doctest::Approx(1.0));
  CHECK(ts_rule_node(rule, 3, &x, &w) == TS_INVALID_ARGUMENT);
  ts_rule_free(rule);

  const int polar[] = {4, 9};
  REQUIRE(ts_rule_build("polar_complex", polar, 2, 1, &rule) == TS_OK);
  CHECK(ts_rule_size(rule, &size) == TS_OK);
  CHECK(size == 36);
  ts_rule_free(rule);
  CHECK(ts_rule_build("simpson", m3, 1, 1, &rule) == TS_INVALID_ARGUMENT);
  const int huge[] = {1000};
  CHECK(ts_rule_build("gauss_hermite", huge, 1, 1, &rule) == TS_DOMAIN);
}

TEST_CASE("run a job and render its report") {
  ts_report* r = nullptr;
  REQUIRE(ts_run(R"({"command": "hermite", "sub": "table", "k": 3})", &r) == TS_OK);
  CHECK(ts_report_passed(r) == 1);
  char* csv = nullptr;
  REQUIRE(ts_report_render(r, "csv", &csv) == TS_OK);
  const std::string text = take(csv);
  CHECK(text.rfind("k,", 0) == 0);
  char* failures = nullptr;
  REQUIRE(ts_report_failures_json(r, &failures) == TS_OK);
  CHECK(take(failures) == "[]");
  CHECK(ts_report_render(r, "yaml", &csv) == TS_INVALID_ARGUMENT);
  ts_report_free(r);
  CHECK(ts_report_passed(nullptr) == 0);
}
