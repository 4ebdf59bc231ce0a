#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "jobs.hpp"
#include "poly_io.hpp"
#include "report.hpp"

using namespace tailspace;
using json = nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tailspace_test_io_" + name);
}

}  // namespace

TEST_CASE("polynomial json round trip") {
  const json doc = json::parse(R"({"basis": "hermite", "dim": 2,
    "terms": [{"alpha": [1, 0], "re": 1.5}, {"alpha": [0, 2], "re": -0.25, "im": 2}]})");
  const AnyPoly p = poly_from_json(doc);
  CHECK(basis_of(p) == Basis::hermite);
  CHECK(dim_of(p) == 2);
  const AnyPoly back = poly_from_json(json::parse(poly_to_json(p).dump()));
  CHECK(std::get<HermiteExpansion>(back) == std::get<HermiteExpansion>(p));

  const auto path = scratch("poly.json");
  save_poly(p, path);
  CHECK(std::get<HermiteExpansion>(load_poly(path)) == std::get<HermiteExpansion>(p));
  std::filesystem::remove(path);
}

TEST_CASE("repeated multi-indices are summed") {
  const AnyPoly p = poly_from_json(json::parse(
      R"({"basis": "monomial", "dim": 1, "terms": [{"alpha": [2], "re": 1}, {"alpha": [2], "re": 2}]})"));
  CHECK(std::get<MonomialExpansion>(p).coeff(MultiIndex{2}) == Complex(3.0));
}

TEST_CASE("basis conversion") {
  const AnyPoly x2 = poly_from_json(
      json::parse(R"({"basis": "monomial", "dim": 1, "terms": [{"alpha": [2], "re": 1}]})"));
  const AnyPoly h = convert_basis(x2, Basis::hermite);
  const auto& he = std::get<HermiteExpansion>(h);
  CHECK(he.coeff(MultiIndex{2}) == Complex(1.0));
  CHECK(he.coeff(MultiIndex{0}) == Complex(1.0));
  CHECK(as_hermite(x2) == he);
  const AnyPoly z = poly_from_json(
      json::parse(R"({"basis": "analytic", "dim": 1, "terms": [{"alpha": [1], "re": 1}]})"));
  CHECK_THROWS_AS(convert_basis(z, Basis::hermite), Error);
}

TEST_CASE("malformed polynomial files are rejected") {
  CHECK_THROWS_AS(poly_from_json(json::parse(R"({"basis": "legendre", "dim": 1, "terms": []})")),
                  Error);
  CHECK_THROWS_AS(
      poly_from_json(json::parse(
          R"({"basis": "hermite", "dim": 2, "terms": [{"alpha": [1], "re": 1}]})")),
      Error);
  CHECK_THROWS_AS(
      poly_from_json(json::parse(
          R"({"basis": "hermite", "dim": 1, "terms": [{"alpha": [-1], "re": 1}]})")),
      Error);
  CHECK_THROWS_AS(load_poly(scratch("missing.json")), Error);
}

TEST_CASE("report rendering") {
  Report empty({"a", "b"});
  CHECK(empty.to_csv() == "a,b\n");
  CHECK(json::parse(empty.to_json()).empty());

  Report r({"kind", "n", "value", "converged"});
  r.add_row({std::string("freud_F"), std::int64_t{1}, 1.0 / 3.0, true});
  const std::string csv = r.to_csv();
  CHECK(csv.find("kind,n,value,converged\n") == 0);
  CHECK(csv.find("0.33333333333333331") != std::string::npos);
  const json j = json::parse(r.to_json());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["kind"] == "freud_F");
  CHECK(j[0]["n"] == 1);
  CHECK(r.passed());
  r.add_failure(0, "did not converge");
  CHECK_FALSE(r.passed());
  CHECK(r.failures()[0]["row"] == 0);
  CHECK_THROWS_AS(r.add_row({std::int64_t{1}}), Error);
  CHECK_THROWS_AS(parse_report_format("xml"), Error);
}

TEST_CASE("format_double") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
}

TEST_CASE("job config validation") {
  CHECK_THROWS_AS(JobConfig::from_json(json::parse(R"({"command": "norm", "bogus": 1})")), Error);
  CHECK_THROWS_AS(JobConfig::from_json(json::parse(R"({"command": "norm", "p": "two"})")), Error);
  CHECK_THROWS_AS(JobConfig::from_json(json::parse(R"({"command": "norm", "seed": "-3"})")), Error);
  CHECK_THROWS_AS(JobConfig::from_json(json::array()), Error);
  const JobConfig c =
      JobConfig::from_json(json::parse(R"({"command": "cube", "n": 3, "seed": "42"})"));
  CHECK(c.n == 3);
  CHECK(c.seed == 42u);
  const JobConfig round = JobConfig::from_json(json(c.to_json()));
  CHECK(round.to_json() == c.to_json());
}

TEST_CASE("seed falls back to the environment") {
  ::setenv("TAILSPACE_SEED", "777", 1);
  CHECK(JobConfig::from_json(json::parse(R"({"command": "cube"})")).seed == 777u);
  CHECK(JobConfig::from_json(json::parse(R"({"command": "cube", "seed": 5})")).seed == 5u);
  ::unsetenv("TAILSPACE_SEED");
  CHECK(JobConfig::from_json(json::parse(R"({"command": "cube"})")).seed == kDefaultSeed);
}

TEST_CASE("hermite table job") {
  const JobConfig c =
      JobConfig::from_json(json::parse(R"({"command": "hermite", "sub": "table", "k": 3})"));
  const Report r = run_command(c);
  CHECK(r.passed());
  REQUIRE(r.rows().size() == 4);
  // H_3 = x^3 - 3x.
  const auto& row = r.rows()[3];
  CHECK(std::get<double>(row[2]) == -3.0);
  CHECK(std::get<double>(row[4]) == 1.0);
}

TEST_CASE("duality job has the documented columns") {
  const JobConfig c = JobConfig::from_json(json::parse(
      R"({"command": "duality", "p": 2, "d": 2, "D": 4, "starts": 2, "max_iter": 100})"));
  const Report r = run_command(c);
  const auto& cols = r.columns();
  REQUIRE(cols.size() >= 4);
  CHECK(cols[0] == "d");
  CHECK(cols[1] == "J_hat");
  CHECK(cols[2] == "F_hat");
  CHECK(cols[3] == "ratio");
}

TEST_CASE("reports are deterministic") {
  const json doc = json::parse(
      R"({"command": "constant", "sub": "freud", "p": 4, "d": 1, "D": 4, "starts": 3, "max_iter": 80, "seed": 9})");
  const std::string a = run_command(JobConfig::from_json(doc)).to_csv();
  const std::string b = run_command(JobConfig::from_json(doc)).to_csv();
  CHECK(a == b);
}
