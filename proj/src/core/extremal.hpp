#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "expansion.hpp"
#include "sphere_ascent.hpp"

namespace tailspace {

enum class ConstantKind {
  freud_F,
  jackson_J,
  riesz_lower_m,
  riesz_upper_M,
  corollary_S,
  corollary_T
};

std::string constant_kind_name(ConstantKind kind);
ConstantKind parse_constant_kind(const std::string& name);

/// True for the inf-type constant (m_p), whose estimate is an upper bound.
bool is_infimum_kind(ConstantKind kind);

struct ExtremalOptions {
  AscentOptions ascent;
  /// Search over real coefficients only (n = 1).
  bool real_only = false;
  /// Seed start 0 with the level witness (the exact extremizer at p = 2).
  bool witness_start = true;
  /// Gauss-Hermite nodes per axis for the search grid; 0 = automatic.
  int nodes = 0;
  /// Relative tolerance of the norms in the final re-evaluation.
  double norm_tol = 1e-10;
};

/// Restricted estimate of a sharp constant: the best defining ratio found
/// over polynomials of degree <= D (and the tail or cap of the kind).
struct ConstantEstimate {
  ConstantKind kind = ConstantKind::freud_F;
  int n = 1;
  double p = 2.0;
  int d = 1;
  int D = 1;
  /// Defining ratio re-evaluated at the extremizer with adaptive norms.
  double value = 0.0;
  double value_tolerance = 0.0;
  /// The same ratio on the search grid.
  double grid_value = 0.0;
  HermiteExpansion extremizer{1};
  int starts = 0;
  int iterations = 0;
  std::uint64_t seed = 0;
  double converged_fraction = 0.0;
  bool best_converged = false;
  bool monotone = true;
  int best_start = 0;

  std::string label() const;
};

/// Searches the kind's admissible set: freud_F over levels d+1..D,
/// jackson_J over levels 1..D (D > d), riesz over levels 1..D, corollary over
/// levels d..D at n = 1. Requires 1 < p < inf, d <= D <= 20, n <= 2.
ConstantEstimate estimate_constant(ConstantKind kind, int n, double p, int d, int D,
                                   const ExtremalOptions& opts = {});

/// The defining ratio of `kind` at f, with adaptive norms. `tolerance`
/// receives the combined relative tolerance when non-null.
double constant_ratio(ConstantKind kind, const HermiteExpansion& f, double p, int d,
                      double norm_tol = 1e-10, double* tolerance = nullptr);

/// Fraction of the L^2 mass of f on |alpha| = level.
double level_mass_fraction(const HermiteExpansion& f, int level);

struct DualityRow {
  int d = 0;
  ConstantEstimate J;
  ConstantEstimate F;
  double ratio = 0.0;
};

/// J(n,p,d) against F(n,p',d) for d = d_low..d_high at search degree D.
std::vector<DualityRow> duality_table(int n, double p, int d_low, int d_high, int D,
                                      const ExtremalOptions& opts = {});

}  // namespace tailspace
