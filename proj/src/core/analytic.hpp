#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "expansion.hpp"
#include "quadrature.hpp"

namespace tailspace {

enum class InequalityKind {
  heat_smoothing,
  spectral_lower,
  grad_lower,
  bernstein,
  interpolation,
  moment,
  janson,
  reverse_heat,
  gradient_ratio
};

std::string inequality_kind_name(InequalityKind kind);
InequalityKind parse_inequality_kind(const std::string& name);

struct InequalityParams {
  double p = 2.0;
  double q = 4.0;
  int d = 0;
  double t = 0.5;
  double rho = 1.0;
  double tol = 1e-10;
  ComplexMethod method = ComplexMethod::polar;
};

/// One checked inequality lhs <= rhs.
struct InequalityReport {
  InequalityKind kind = InequalityKind::heat_smoothing;
  int n = 1;
  InequalityParams params;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  /// Relative quadrature tolerances of the two sides.
  double lhs_tolerance = 0.0;
  double rhs_tolerance = 0.0;
  /// Absolute slack allowance: 3 (lhs_tol |lhs| + rhs_tol |rhs|).
  double allowance = 0.0;
  bool converged = true;
  bool zero_input = false;
  /// False for report-only rows (gradient_ratio), which always pass.
  bool asserted = true;
  bool pass = true;
};

/// Checks `kind` for f. Tail kinds (heat_smoothing, spectral_lower,
/// grad_lower) need f in P^{>=d}; cap kinds (bernstein, moment,
/// reverse_heat) need f in P^{<=d}; janson needs rho <= sqrt(p/q); moment
/// needs 0 < p < q, q >= 1. gradient_ratio reports
/// ||grad f||_p / (sqrt(d) ||f||_p) for f in P^{>=d} without asserting.
InequalityReport check_inequality(InequalityKind kind, const AnalyticPoly& f,
                                  const InequalityParams& params);

/// Complex Gaussian coefficients scaled by 1/sqrt(alpha!) on
/// min_degree <= |alpha| <= max_degree, then normalized to unit L^2 norm.
AnalyticPoly random_analytic(int n, int min_degree, int max_degree, std::mt19937_64& rng);

/// ||f||_{L^p(d gamma_{2n})}.
NormResult analytic_lp_norm(const AnalyticPoly& f, const NormRequest& req,
                            ComplexMethod method = ComplexMethod::polar);

}  // namespace tailspace
