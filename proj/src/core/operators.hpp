#pragma once

#include <limits>
#include <string>
#include <vector>

#include "expansion.hpp"

namespace tailspace {

/// Open upper end for project().
inline constexpr int kNoDegreeLimit = std::numeric_limits<int>::max();

/// A function of the eigenvalue k = |alpha| of L.
class SpectralMultiplier {
 public:
  enum class Kind { power, heat, indicator };

  /// k^s, with 0^s = 0 for s != 0.
  static SpectralMultiplier power(double s);
  /// e^{-t k}, t >= 0.
  static SpectralMultiplier heat(double t);
  /// 1 on low <= k <= high.
  static SpectralMultiplier indicator(int low, int high);

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  double value(int k) const;
  std::string describe() const;

 private:
  SpectralMultiplier(Kind kind, double param, int low, int high)
      : kind_(kind), param_(param), low_(low), high_(high) {}

  Kind kind_;
  double param_;
  int low_;
  int high_;
};

/// True when |c_0| <= 1e-14 * (l2 norm of the coefficient vector).
template <Basis B>
bool has_zero_mean(const Expansion<B>& e) {
  double sum = 0.0;
  for (const auto& [alpha, c] : e.terms()) sum += std::norm(c);
  return std::abs(e.coeff(MultiIndex::zero(e.dim()))) <= 1e-14 * std::sqrt(sum);
}

/// Multiplies the coefficient at alpha by m.value(|alpha|). Valid for Hermite
/// and analytic expansions, both eigenbases of L.
template <Basis B>
Expansion<B> spectral_apply(const Expansion<B>& e, const SpectralMultiplier& m) {
  static_assert(B != Basis::monomial, "x^alpha is not an eigenbasis of L");
  if (m.kind() == SpectralMultiplier::Kind::power && m.parameter() < 0.0)
    require(has_zero_mean(e), ErrorCode::domain,
            "negative power of L needs an input with zero mean");
  return e.transform(
      [&](const MultiIndex& alpha, Complex c) { return c * m.value(alpha.order()); });
}

/// Keeps terms with low <= |alpha| <= high.
template <Basis B>
Expansion<B> project(const Expansion<B>& e, int low, int high = kNoDegreeLimit) {
  require(low <= high, ErrorCode::invalid_argument, "project needs low <= high");
  return e.filter([&](const MultiIndex& alpha) {
    return alpha.order() >= low && alpha.order() <= high;
  });
}

/// (d/dx_1 h, ..., d/dx_n h), using d/dx H_k = k H_{k-1}.
std::vector<HermiteExpansion> gradient(const HermiteExpansion& h);

/// Complex partial derivatives d/dz_j f.
std::vector<AnalyticPoly> complex_partials(const AnalyticPoly& f);

/// Real gradient of f on C^n = R^{2n}: for each j the pair (d/dx_j f,
/// d/dy_j f) = (f_j, i f_j) with f_j = d/dz_j f, so |grad f|^2 = 2 sum |f_j|^2.
std::vector<AnalyticPoly> real_gradient(const AnalyticPoly& f);

/// f(rho z), rho in (0, 1].
AnalyticPoly dilate(const AnalyticPoly& f, double rho);

/// f(e^{i theta} z).
AnalyticPoly rotate(const AnalyticPoly& f, double theta);

/// -(Delta - x . grad) computed by differentiation in the monomial basis;
/// independent of the Hermite eigenrelation.
MonomialExpansion ou_generator_monomial(const MonomialExpansion& m);

/// Partial derivative d/dx_j in the monomial basis.
MonomialExpansion monomial_partial(const MonomialExpansion& m, int j);

/// L^{-1} h = \int_0^inf e^{-tL} h dt and L^{-1/2} h =
/// pi^{-1/2} \int_0^inf e^{-tL} h t^{-1/2} dt, computed per eigenvalue by
/// numerical integration in t. s must be -1 or -1/2.
HermiteExpansion inverse_power_by_heat_integral(const HermiteExpansion& h, double s);

}  // namespace tailspace
