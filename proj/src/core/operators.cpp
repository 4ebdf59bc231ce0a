#include "operators.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>

namespace tailspace {

SpectralMultiplier SpectralMultiplier::power(double s) {
  require(std::isfinite(s), ErrorCode::invalid_argument, "power must be finite");
  return SpectralMultiplier(Kind::power, s, 0, 0);
}

SpectralMultiplier SpectralMultiplier::heat(double t) {
  require(std::isfinite(t) && t >= 0.0, ErrorCode::invalid_argument,
          "heat time must be >= 0");
  return SpectralMultiplier(Kind::heat, t, 0, 0);
}

SpectralMultiplier SpectralMultiplier::indicator(int low, int high) {
  require(low <= high, ErrorCode::invalid_argument, "indicator needs low <= high");
  return SpectralMultiplier(Kind::indicator, 0.0, low, high);
}

double SpectralMultiplier::value(int k) const {
  switch (kind_) {
    case Kind::power:
      if (param_ == 0.0) return 1.0;
      if (k == 0) return 0.0;
      if (param_ == 1.0) return k;
      return std::pow(static_cast<double>(k), param_);
    case Kind::heat: return std::exp(-param_ * k);
    case Kind::indicator: return (k >= low_ && k <= high_) ? 1.0 : 0.0;
  }
  return 0.0;
}

std::string SpectralMultiplier::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::power: os << "power(" << param_ << ")"; break;
    case Kind::heat: os << "heat(" << param_ << ")"; break;
    case Kind::indicator: os << "indicator(" << low_ << "," << high_ << ")"; break;
  }
  return os.str();
}

std::vector<HermiteExpansion> gradient(const HermiteExpansion& h) {
  std::vector<HermiteExpansion> out;
  for (int j = 0; j < h.dim(); ++j) {
    HermiteExpansion::Terms t;
    for (const auto& [alpha, c] : h.terms())
      if (alpha[j] > 0) t[alpha.shifted(j, -1)] += c * static_cast<double>(alpha[j]);
    out.emplace_back(h.dim(), std::move(t));
  }
  return out;
}

std::vector<AnalyticPoly> complex_partials(const AnalyticPoly& f) {
  std::vector<AnalyticPoly> out;
  for (int j = 0; j < f.dim(); ++j) {
    AnalyticPoly::Terms t;
    for (const auto& [alpha, c] : f.terms())
      if (alpha[j] > 0) t[alpha.shifted(j, -1)] += c * static_cast<double>(alpha[j]);
    out.emplace_back(f.dim(), std::move(t));
  }
  return out;
}

std::vector<AnalyticPoly> real_gradient(const AnalyticPoly& f) {
  std::vector<AnalyticPoly> out;
  for (auto& fj : complex_partials(f)) {
    out.push_back(fj * Complex(0.0, 1.0));
    out.push_back(std::move(fj));
  }
  return out;
}

AnalyticPoly dilate(const AnalyticPoly& f, double rho) {
  require(rho > 0.0 && rho <= 1.0, ErrorCode::invalid_argument, "rho must lie in (0, 1]");
  return f.transform([&](const MultiIndex& alpha, Complex c) {
    return c * std::pow(rho, alpha.order());
  });
}

AnalyticPoly rotate(const AnalyticPoly& f, double theta) {
  return f.transform([&](const MultiIndex& alpha, Complex c) {
    return c * std::polar(1.0, theta * alpha.order());
  });
}

MonomialExpansion monomial_partial(const MonomialExpansion& m, int j) {
  require(j >= 0 && j < m.dim(), ErrorCode::invalid_argument, "coordinate out of range");
  MonomialExpansion::Terms t;
  for (const auto& [alpha, c] : m.terms())
    if (alpha[j] > 0) t[alpha.shifted(j, -1)] += c * static_cast<double>(alpha[j]);
  return MonomialExpansion(m.dim(), std::move(t));
}

MonomialExpansion ou_generator_monomial(const MonomialExpansion& m) {
  MonomialExpansion::Terms t;
  for (const auto& [alpha, c] : m.terms()) {
    for (int j = 0; j < m.dim(); ++j) {
      const double a = alpha[j];
      // x_j d/dx_j x^alpha = alpha_j x^alpha, so -(Delta - x.grad) adds
      // alpha_j x^alpha and subtracts alpha_j (alpha_j - 1) x^{alpha - 2 e_j}.
      t[alpha] += c * a;
      if (alpha[j] >= 2) t[alpha.shifted(j, -2)] -= c * (a * (a - 1.0));
    }
  }
  return MonomialExpansion(m.dim(), std::move(t));
}

HermiteExpansion inverse_power_by_heat_integral(const HermiteExpansion& h, double s) {
  require(s == -1.0 || s == -0.5, ErrorCode::invalid_argument,
          "heat-integral oracle covers s = -1 and s = -1/2");
  require(has_zero_mean(h), ErrorCode::domain,
          "negative power of L needs an input with zero mean");
  boost::math::quadrature::exp_sinh<double> integrator;
  std::map<int, double> factor;
  for (const auto& [alpha, c] : h.terms()) {
    const int k = alpha.order();
    if (k == 0 || factor.contains(k)) continue;
    double v;
    if (s == -1.0) {
      v = integrator.integrate([k](double t) { return std::exp(-t * k); }, 0.0,
                               std::numeric_limits<double>::infinity());
    } else {
      v = integrator.integrate(
              [k](double t) { return std::exp(-t * k) / std::sqrt(t); }, 0.0,
              std::numeric_limits<double>::infinity()) /
          std::sqrt(std::numbers::pi);
    }
    factor[k] = v;
  }
  return h.transform([&](const MultiIndex& alpha, Complex c) {
    return alpha.order() == 0 ? Complex(0.0) : c * factor.at(alpha.order());
  });
}

}  // namespace tailspace
