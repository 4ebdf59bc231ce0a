#pragma once

#include <span>
#include <vector>

#include "expansion.hpp"

namespace tailspace {

class QuadratureRule;

/// Highest degree accepted by the basis conversions. Monomial coefficients of
/// H_k grow like k!/(2^{k/2}(k/2)!), so beyond this point double precision
/// coefficients stop being meaningful.
inline constexpr int kMaxConversionDegree = 40;

/// Probabilists' Hermite polynomial H_k(x), via H_{k+1} = x H_k - k H_{k-1}.
double hermite_eval(int k, double x);

/// Fills out[k] = H_k(x) for k = 0..out.size()-1.
void hermite_values(double x, std::span<double> out);

/// d/dx H_k = k H_{k-1}; fills out[k] = H_k'(x).
void hermite_derivative_values(double x, std::span<double> out);

/// Row k holds the monomial coefficients of H_k (entry j multiplies x^j).
const std::vector<std::vector<double>>& hermite_to_monomial_table(int degree);

/// Row k holds the Hermite coefficients of x^k (entry j multiplies H_j).
const std::vector<std::vector<double>>& monomial_to_hermite_table(int degree);

HermiteExpansion to_hermite_basis(const MonomialExpansion& m);
MonomialExpansion to_monomial_basis(const HermiteExpansion& h);

Complex evaluate(const HermiteExpansion& h, std::span<const double> point);
Complex evaluate(const MonomialExpansion& m, std::span<const double> point);
Complex evaluate(const AnalyticPoly& f, std::span<const Complex> point);

/// H_alpha(x) = \int (x + i y)^alpha d gamma_n(y), evaluated with `rule`
/// (a Gauss-Hermite or tensor rule in dimension n). Independent of the
/// three-term recurrence.
Complex hermite_via_integral(const MultiIndex& alpha,
                             std::span<const double> x,
                             const QuadratureRule& rule);

}  // namespace tailspace
