#include "poly_io.hpp"

#include <fstream>

#include "hermite.hpp"

namespace tailspace {

std::string basis_name(Basis b) {
  switch (b) {
    case Basis::hermite: return "hermite";
    case Basis::monomial: return "monomial";
    case Basis::analytic: return "analytic";
  }
  return "hermite";
}

Basis parse_basis(const std::string& name) {
  if (name == "hermite") return Basis::hermite;
  if (name == "monomial") return Basis::monomial;
  if (name == "analytic") return Basis::analytic;
  fail(ErrorCode::parse, "unknown basis '" + name + "'");
}

Basis basis_of(const AnyPoly& poly) {
  return std::visit([]<Basis B>(const Expansion<B>&) { return B; }, poly);
}

int dim_of(const AnyPoly& poly) {
  return std::visit([](const auto& e) { return e.dim(); }, poly);
}

namespace {

template <Basis B>
Expansion<B> read_terms(int dim, const nlohmann::json& terms) {
  typename Expansion<B>::Terms out;
  for (const auto& t : terms) {
    require(t.is_object() && t.contains("alpha"), ErrorCode::parse,
            "every term needs an \"alpha\" array");
    auto alpha = t.at("alpha").get<std::vector<int>>();
    require(static_cast<int>(alpha.size()) == dim, ErrorCode::dimension_mismatch,
            "term alpha has " + std::to_string(alpha.size()) + " entries, dim is " +
                std::to_string(dim));
    double re = t.value("re", 0.0);
    double im = t.value("im", 0.0);
    out[MultiIndex(alpha)] += Complex(re, im);
  }
  return Expansion<B>(dim, std::move(out));
}

}  // namespace

AnyPoly poly_from_json(const nlohmann::json& doc) {
  try {
    require(doc.is_object(), ErrorCode::parse, "polynomial document must be an object");
    Basis basis = parse_basis(doc.at("basis").get<std::string>());
    int dim = doc.at("dim").get<int>();
    require(dim >= 1, ErrorCode::invalid_argument, "dim must be >= 1");
    const auto& terms = doc.at("terms");
    require(terms.is_array(), ErrorCode::parse, "\"terms\" must be an array");
    switch (basis) {
      case Basis::hermite: return read_terms<Basis::hermite>(dim, terms);
      case Basis::monomial: return read_terms<Basis::monomial>(dim, terms);
      case Basis::analytic: return read_terms<Basis::analytic>(dim, terms);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, std::string("malformed polynomial: ") + e.what());
  }
  fail(ErrorCode::internal, "unreachable");
}

nlohmann::ordered_json poly_to_json(const AnyPoly& poly) {
  nlohmann::ordered_json doc;
  doc["basis"] = basis_name(basis_of(poly));
  doc["dim"] = dim_of(poly);
  auto terms = nlohmann::ordered_json::array();
  std::visit(
      [&](const auto& e) {
        for (const auto& [alpha, c] : e.terms())
          terms.push_back({{"alpha", alpha.entries()}, {"re", c.real()}, {"im", c.imag()}});
      },
      poly);
  doc["terms"] = std::move(terms);
  return doc;
}

AnyPoly load_poly(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::io, "cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, path.string() + ": " + e.what());
  }
  try {
    return poly_from_json(doc);
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

void save_poly(const AnyPoly& poly, const std::filesystem::path& path) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::io, "cannot write " + path.string());
  out << poly_to_json(poly).dump(2) << '\n';
  require(out.good(), ErrorCode::io, "write failed for " + path.string());
}

AnyPoly convert_basis(const AnyPoly& poly, Basis target) {
  Basis from = basis_of(poly);
  if (from == target) return poly;
  require(from != Basis::analytic && target != Basis::analytic, ErrorCode::invalid_argument,
          "analytic polynomials live on C^n and have no real-basis form");
  if (target == Basis::hermite) return to_hermite_basis(std::get<MonomialExpansion>(poly));
  return to_monomial_basis(std::get<HermiteExpansion>(poly));
}

HermiteExpansion as_hermite(const AnyPoly& poly) {
  return std::get<HermiteExpansion>(convert_basis(poly, Basis::hermite));
}

}  // namespace tailspace
