#include "analytic.hpp"

#include <cmath>

#include "multi_index.hpp"
#include "operators.hpp"

namespace tailspace {

std::string inequality_kind_name(InequalityKind kind) {
  switch (kind) {
    case InequalityKind::heat_smoothing: return "heat_smoothing";
    case InequalityKind::spectral_lower: return "spectral_lower";
    case InequalityKind::grad_lower: return "grad_lower";
    case InequalityKind::bernstein: return "bernstein";
    case InequalityKind::interpolation: return "interpolation";
    case InequalityKind::moment: return "moment";
    case InequalityKind::janson: return "janson";
    case InequalityKind::reverse_heat: return "reverse_heat";
    case InequalityKind::gradient_ratio: return "gradient_ratio";
  }
  return "heat_smoothing";
}

InequalityKind parse_inequality_kind(const std::string& name) {
  for (int k = 0; k <= static_cast<int>(InequalityKind::gradient_ratio); ++k) {
    auto kind = static_cast<InequalityKind>(k);
    if (inequality_kind_name(kind) == name) return kind;
  }
  fail(ErrorCode::parse, "unknown inequality kind '" + name + "'");
}

NormResult analytic_lp_norm(const AnalyticPoly& f, const NormRequest& req,
                            ComplexMethod method) {
  return lp_norm(f, req, method);
}

AnalyticPoly random_analytic(int n, int min_degree, int max_degree, std::mt19937_64& rng) {
  require(n >= 1 && min_degree >= 0 && min_degree <= max_degree, ErrorCode::invalid_argument,
          "random polynomial needs n >= 1 and 0 <= min_degree <= max_degree");
  std::normal_distribution<double> normal;
  AnalyticPoly::Terms t;
  double mass = 0.0;
  for (const auto& alpha : indices_between(n, min_degree, max_degree)) {
    // ||z^alpha||_2^2 = 2^|alpha| alpha!.
    const double norm2 = std::ldexp(alpha.factorial(), alpha.order());
    Complex c(normal(rng), normal(rng));
    c /= std::sqrt(alpha.factorial());
    mass += std::norm(c) * norm2;
    t[alpha] = c;
  }
  AnalyticPoly f(n, std::move(t));
  return mass > 0.0 ? f * Complex(1.0 / std::sqrt(mass)) : f;
}

namespace {

struct Side {
  double value = 0.0;
  double tol = 0.0;
  bool converged = true;
};

Side norm_side(const AnalyticPoly& f, double p, const InequalityParams& prm,
               double factor = 1.0) {
  NormRequest req;
  req.p = p;
  req.tol = prm.tol;
  NormResult r = lp_norm(f, req, prm.method);
  return {factor * r.value, r.tolerance, r.converged};
}

Side norm_side(const std::vector<AnalyticPoly>& fs, double p, const InequalityParams& prm,
               double factor = 1.0) {
  NormRequest req;
  req.p = p;
  req.tol = prm.tol;
  NormResult r = lp_norm(std::span<const AnalyticPoly>(fs), req, prm.method);
  return {factor * r.value, r.tolerance, r.converged};
}

void require_tail(const AnalyticPoly& f, int d, InequalityKind kind) {
  require(f.in_tail(d), ErrorCode::domain,
          inequality_kind_name(kind) + " needs f in P^{>=" + std::to_string(d) + "}");
}

void require_cap(const AnalyticPoly& f, int d, InequalityKind kind) {
  require(f.in_cap(d), ErrorCode::domain,
          inequality_kind_name(kind) + " needs f in P^{<=" + std::to_string(d) + "}");
}

}  // namespace

InequalityReport check_inequality(InequalityKind kind, const AnalyticPoly& f,
                                  const InequalityParams& prm) {
  require(std::isfinite(prm.p) && prm.p > 0.0, ErrorCode::invalid_argument,
          "p must be finite and positive");
  require(prm.d >= 0, ErrorCode::invalid_argument, "d must be >= 0");
  InequalityReport rep;
  rep.kind = kind;
  rep.n = f.dim();
  rep.params = prm;
  const double p = prm.p;
  if (kind != InequalityKind::moment)
    require(p >= 1.0, ErrorCode::invalid_argument,
            inequality_kind_name(kind) + " needs p >= 1");
  Side lhs, rhs;
  switch (kind) {
    case InequalityKind::heat_smoothing:
      require_tail(f, prm.d, kind);
      require(prm.t >= 0.0, ErrorCode::invalid_argument, "t must be >= 0");
      lhs = norm_side(spectral_apply(f, SpectralMultiplier::heat(prm.t)), p, prm);
      rhs = norm_side(f, p, prm, std::exp(-prm.t * prm.d));
      break;
    case InequalityKind::spectral_lower:
      require_tail(f, prm.d, kind);
      lhs = norm_side(f, p, prm, prm.d);
      rhs = norm_side(spectral_apply(f, SpectralMultiplier::power(1.0)), p, prm);
      break;
    case InequalityKind::grad_lower:
      require_tail(f, prm.d, kind);
      lhs = norm_side(f, p, prm, std::sqrt(static_cast<double>(prm.d)));
      rhs = norm_side(spectral_apply(f, SpectralMultiplier::power(0.5)), p, prm);
      break;
    case InequalityKind::bernstein:
      require_cap(f, prm.d, kind);
      lhs = norm_side(spectral_apply(f, SpectralMultiplier::power(1.0)), p, prm);
      rhs = norm_side(f, p, prm, prm.d);
      break;
    case InequalityKind::interpolation: {
      lhs = norm_side(spectral_apply(f, SpectralMultiplier::power(0.5)), p, prm);
      Side a = norm_side(f, p, prm);
      Side b = norm_side(spectral_apply(f, SpectralMultiplier::power(1.0)), p, prm);
      rhs.value = 2.0 * std::sqrt(a.value * b.value);
      rhs.tol = 0.5 * (a.tol + b.tol);
      rhs.converged = a.converged && b.converged;
      break;
    }
    case InequalityKind::moment:
      require_cap(f, prm.d, kind);
      require(prm.p > 0.0 && prm.p < prm.q && prm.q >= 1.0, ErrorCode::invalid_argument,
              "moment comparison needs 0 < p < q and q >= 1");
      lhs = norm_side(f, prm.q, prm);
      rhs = norm_side(f, p, prm, std::pow(prm.q / p, 0.5 * prm.d));
      break;
    case InequalityKind::janson:
      require(prm.q > p, ErrorCode::invalid_argument, "janson needs q > p");
      require(prm.rho > 0.0 && prm.rho <= std::sqrt(p / prm.q) * (1.0 + 1e-15),
              ErrorCode::invalid_argument, "janson needs 0 < rho <= sqrt(p/q)");
      lhs = norm_side(dilate(f, std::min(prm.rho, 1.0)), prm.q, prm);
      rhs = norm_side(f, p, prm);
      break;
    case InequalityKind::reverse_heat:
      require_cap(f, prm.d, kind);
      require(prm.t >= 0.0, ErrorCode::invalid_argument, "t must be >= 0");
      lhs = norm_side(f, prm.q, prm);
      rhs = norm_side(spectral_apply(f, SpectralMultiplier::heat(prm.t)), prm.q, prm,
                      std::exp(prm.t * prm.d));
      break;
    case InequalityKind::gradient_ratio:
      require_tail(f, prm.d, kind);
      require(prm.d >= 1, ErrorCode::invalid_argument, "gradient_ratio needs d >= 1");
      rep.asserted = false;
      lhs = norm_side(real_gradient(f), p, prm);
      rhs = norm_side(f, p, prm, std::sqrt(static_cast<double>(prm.d)));
      break;
  }
  rep.lhs = lhs.value;
  rep.rhs = rhs.value;
  rep.slack = rhs.value - lhs.value;
  rep.lhs_tolerance = lhs.tol;
  rep.rhs_tolerance = rhs.tol;
  rep.allowance = 3.0 * (lhs.tol * std::abs(lhs.value) + rhs.tol * std::abs(rhs.value));
  rep.converged = lhs.converged && rhs.converged;
  rep.zero_input = f.is_zero();
  if (!rep.asserted) {
    rep.pass = rep.converged;
  } else {
    rep.pass = rep.zero_input || (rep.converged && rep.slack >= -rep.allowance);
  }
  return rep;
}

}  // namespace tailspace
