#pragma once

#include <filesystem>
#include <variant>

#include <json.hpp>

#include "expansion.hpp"

namespace tailspace {

/// A polynomial in any of the three bases, as read from a file.
using AnyPoly = std::variant<HermiteExpansion, MonomialExpansion, AnalyticPoly>;

Basis basis_of(const AnyPoly& poly);
int dim_of(const AnyPoly& poly);

/// {"basis": ..., "dim": n, "terms": [{"alpha": [..], "re": r, "im": i}, ...]}.
/// "im" may be omitted. Repeated multi-indices are summed.
AnyPoly poly_from_json(const nlohmann::json& doc);
nlohmann::ordered_json poly_to_json(const AnyPoly& poly);

AnyPoly load_poly(const std::filesystem::path& path);
void save_poly(const AnyPoly& poly, const std::filesystem::path& path);

/// Converts between the two real bases. Analytic polynomials only convert to
/// themselves.
AnyPoly convert_basis(const AnyPoly& poly, Basis target);

/// The Hermite form of a real-basis polynomial.
HermiteExpansion as_hermite(const AnyPoly& poly);

}  // namespace tailspace
