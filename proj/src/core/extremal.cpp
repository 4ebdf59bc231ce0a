#include "extremal.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "approx.hpp"
#include "multi_index.hpp"
#include "operators.hpp"
#include "quadrature.hpp"

namespace tailspace {

std::string constant_kind_name(ConstantKind kind) {
  switch (kind) {
    case ConstantKind::freud_F: return "freud_F";
    case ConstantKind::jackson_J: return "jackson_J";
    case ConstantKind::riesz_lower_m: return "riesz_lower_m";
    case ConstantKind::riesz_upper_M: return "riesz_upper_M";
    case ConstantKind::corollary_S: return "corollary_S";
    case ConstantKind::corollary_T: return "corollary_T";
  }
  return "freud_F";
}

ConstantKind parse_constant_kind(const std::string& name) {
  for (auto k : {ConstantKind::freud_F, ConstantKind::jackson_J, ConstantKind::riesz_lower_m,
                 ConstantKind::riesz_upper_M, ConstantKind::corollary_S,
                 ConstantKind::corollary_T})
    if (constant_kind_name(k) == name) return k;
  fail(ErrorCode::parse, "unknown constant kind '" + name + "'");
}

bool is_infimum_kind(ConstantKind kind) { return kind == ConstantKind::riesz_lower_m; }

std::string ConstantEstimate::label() const {
  std::ostringstream os;
  os << "restricted estimate (D = " << D << ")";
  return os.str();
}

double level_mass_fraction(const HermiteExpansion& f, int level) {
  double total = 0.0, on = 0.0;
  for (const auto& [alpha, c] : f.terms()) {
    const double m = std::norm(c) * alpha.factorial();
    total += m;
    if (alpha.order() == level) on += m;
  }
  return total > 0.0 ? on / total : 0.0;
}

namespace {

struct Levels {
  int low;
  int high;
};

Levels search_levels(ConstantKind kind, int d, int D) {
  switch (kind) {
    case ConstantKind::freud_F: return {d + 1, D};
    case ConstantKind::jackson_J: return {1, D};
    case ConstantKind::riesz_lower_m:
    case ConstantKind::riesz_upper_M: return {1, D};
    case ConstantKind::corollary_S:
    case ConstantKind::corollary_T: return {d, D};
  }
  return {d, D};
}

void check_arguments(ConstantKind kind, int n, double p, int d, int D) {
  require(p > 1.0 && std::isfinite(p), ErrorCode::invalid_argument,
          "constant estimation needs p in (1, inf)");
  require(n >= 1 && n <= 2, ErrorCode::invalid_argument, "constant estimation needs n <= 2");
  require(d >= 0 && d <= D && D <= 20, ErrorCode::invalid_argument,
          "constant estimation needs 0 <= d <= D <= 20");
  switch (kind) {
    case ConstantKind::freud_F:
      require(D >= d + 1, ErrorCode::invalid_argument, "freud_F needs D >= d + 1");
      break;
    case ConstantKind::jackson_J:
      require(d >= 1 && D >= d + 1, ErrorCode::invalid_argument,
              "jackson_J needs d >= 1 and D >= d + 1");
      break;
    case ConstantKind::riesz_lower_m:
    case ConstantKind::riesz_upper_M:
      require(D >= 1, ErrorCode::invalid_argument, "riesz constants need D >= 1");
      break;
    case ConstantKind::corollary_S:
    case ConstantKind::corollary_T:
      require(n == 1, ErrorCode::invalid_argument, "corollary constants are one-dimensional");
      require(d >= 1, ErrorCode::invalid_argument, "corollary constants need d >= 1");
      break;
  }
}

NodeGrid search_grid(double p, int D, int n, int requested) {
  if (requested > 0) return gaussian_grid(requested, n);
  // Even p: exact for every ratio term. Otherwise the best-approximation grid.
  if (is_even_integer(p)) return gaussian_grid(gauss_nodes_for_degree(p * D), n);
  return solver_grid(D, p, n);
}

// Columns scaled by 1/sqrt(alpha!) so the coefficient vector is orthonormal.
Eigen::MatrixXd scaled_design(const NodeGrid& grid, const std::vector<MultiIndex>& idx,
                              int axis = -1) {
  Eigen::MatrixXd M = hermite_design_matrix(grid, idx, axis);
  for (std::size_t j = 0; j < idx.size(); ++j)
    M.col(static_cast<Eigen::Index>(j)) /= std::sqrt(idx[j].factorial());
  return M;
}

Eigen::MatrixXd scale_columns(Eigen::MatrixXd M, const std::vector<MultiIndex>& idx,
                              double power) {
  for (std::size_t j = 0; j < idx.size(); ++j)
    M.col(static_cast<Eigen::Index>(j)) *= std::pow(static_cast<double>(idx[j].order()), power);
  return M;
}

NormResult norm_of(const HermiteExpansion& h, double p, double tol) {
  NormRequest req;
  req.p = p;
  req.tol = tol;
  return lp_norm(h, req);
}

NormResult norm_of(const std::vector<HermiteExpansion>& hs, double p, double tol) {
  NormRequest req;
  req.p = p;
  req.tol = tol;
  return lp_norm(std::span<const HermiteExpansion>(hs), req);
}

}  // namespace

double constant_ratio(ConstantKind kind, const HermiteExpansion& f, double p, int d,
                      double norm_tol, double* tolerance) {
  NormResult num, den;
  double scale = 1.0;
  switch (kind) {
    case ConstantKind::freud_F:
      require(f.in_tail(d + 1), ErrorCode::domain, "freud_F needs f in the tail d+1");
      num = norm_of(f, p, norm_tol);
      den = norm_of(gradient(f), p, norm_tol);
      scale = std::sqrt(d + 1.0);
      break;
    case ConstantKind::jackson_J: {
      JacksonResult j = jackson_quotient(f, d, p, ApproxOptions{.norm_tol = norm_tol});
      if (tolerance) *tolerance = j.approx.error_tolerance + j.gradient_norm.tolerance;
      return j.quotient;
    }
    case ConstantKind::riesz_lower_m:
    case ConstantKind::riesz_upper_M:
      num = norm_of(gradient(f), p, norm_tol);
      den = norm_of(spectral_apply(f, SpectralMultiplier::power(0.5)), p, norm_tol);
      break;
    case ConstantKind::corollary_S:
      require(f.in_tail(d) && f.dim() == 1, ErrorCode::domain,
              "corollary_S needs f in the tail d on R");
      num = norm_of(f, p, norm_tol);
      den = norm_of(gradient(f), p, norm_tol);
      scale = std::sqrt(static_cast<double>(d));
      break;
    case ConstantKind::corollary_T:
      require(f.in_tail(d) && f.dim() == 1, ErrorCode::domain,
              "corollary_T needs f in the tail d on R");
      num = norm_of(f, p, norm_tol);
      den = norm_of(spectral_apply(f, SpectralMultiplier::power(1.0)), p, norm_tol);
      scale = static_cast<double>(d);
      break;
  }
  require(den.value > 0.0, ErrorCode::domain, "degenerate ratio: denominator is zero");
  if (tolerance) *tolerance = num.tolerance + den.tolerance;
  return scale * num.value / den.value;
}

ConstantEstimate estimate_constant(ConstantKind kind, int n, double p, int d, int D,
                                   const ExtremalOptions& opts) {
  check_arguments(kind, n, p, d, D);
  require(!opts.real_only || n == 1, ErrorCode::invalid_argument,
          "the real-coefficient restriction is offered for n = 1 only");
  const Levels lv = search_levels(kind, d, D);
  std::vector<MultiIndex> idx = indices_between(n, lv.low, lv.high);
  const int K = static_cast<int>(idx.size());
  NodeGrid grid = search_grid(p, D, n, opts.nodes);

  Eigen::MatrixXd A = scaled_design(grid, idx);
  LpField values{{A}};
  LpField grad;
  for (int j = 0; j < n; ++j) grad.maps.push_back(scaled_design(grid, idx, j));

  const bool real_only = opts.real_only;
  const bool minimize = is_infimum_kind(kind);
  SphereObjective objective;
  std::shared_ptr<LpRatio> ratio;
  switch (kind) {
    case ConstantKind::freud_F:
      ratio = std::make_shared<LpRatio>(grid.weights, values, grad, p, std::sqrt(d + 1.0),
                                        real_only);
      break;
    case ConstantKind::riesz_lower_m:
    case ConstantKind::riesz_upper_M:
      ratio = std::make_shared<LpRatio>(grid.weights, grad,
                                        LpField{{scale_columns(A, idx, 0.5)}}, p, 1.0,
                                        real_only);
      break;
    case ConstantKind::corollary_S:
      ratio = std::make_shared<LpRatio>(grid.weights, values, grad, p, std::sqrt(1.0 * d),
                                        real_only);
      break;
    case ConstantKind::corollary_T:
      ratio = std::make_shared<LpRatio>(grid.weights, values,
                                        LpField{{scale_columns(A, idx, 1.0)}}, p, 1.0 * d,
                                        real_only);
      break;
    case ConstantKind::jackson_J:
      // Numerator handled below; the ratio object supplies the gradient norm.
      ratio = std::make_shared<LpRatio>(grid.weights, grad, grad, p, 1.0, real_only);
      break;
  }

  if (kind == ConstantKind::jackson_J) {
    std::vector<MultiIndex> low = indices_between(n, 0, d);
    Eigen::MatrixXd B = scaled_design(grid, low);
    // Weighted least-squares start for the inner solve: the L^2 projection on
    // the grid.
    Eigen::MatrixXd BtW = B.transpose() * grid.weights.asDiagonal();
    Eigen::LDLT<Eigen::MatrixXd> gram(BtW * B);
    const double sd = std::sqrt(static_cast<double>(d));
    objective = [=, &grid](const Eigen::VectorXd& u, Eigen::VectorXd* g) {
      Eigen::VectorXcd c = ratio->unpack(u);
      Eigen::VectorXcd t = A.cast<Complex>() * c;
      Eigen::VectorXcd v0 = gram.solve(BtW.cast<Complex>() * t);
      GridSolve s = solve_lp_on_grid(grid.weights, B, t, p, v0, 100, 1e-11);
      Eigen::VectorXd gd;
      const double sden = ratio->power_sum(grad, u, g ? &gd : nullptr);
      if (sden <= 0.0) return std::numeric_limits<double>::quiet_NaN();
      const double snum = s.power_sum;
      const double r = sd * std::pow(snum / sden, 1.0 / p);
      if (g) {
        // Envelope theorem: the inner minimizer is stationary, so the
        // numerator gradient is taken at fixed v.
        Eigen::VectorXd dre(A.rows()), dim(A.rows());
        for (Eigen::Index i = 0; i < A.rows(); ++i) {
          const double a = std::abs(s.residual(i));
          const double h = a > 0.0 ? grid.weights(i) * p * std::pow(a, p - 2.0) : 0.0;
          dre(i) = h * s.residual(i).real();
          dim(i) = h * s.residual(i).imag();
        }
        Eigen::VectorXd gn(u.size());
        gn.head(K) = A.transpose() * dre;
        if (!real_only) gn.tail(K) = A.transpose() * dim;
        *g = (r / p) * ((snum > 0.0 ? Eigen::VectorXd(gn / snum) : Eigen::VectorXd(gn * 0.0)) -
                        gd / sden);
      }
      return r;
    };
  } else {
    objective = [ratio](const Eigen::VectorXd& u, Eigen::VectorXd* g) {
      return ratio->value(u, g);
    };
  }
  SphereObjective signed_objective = objective;
  if (minimize)
    signed_objective = [objective](const Eigen::VectorXd& u, Eigen::VectorXd* g) {
      double v = objective(u, g);
      if (g) *g = -*g;
      return -v;
    };

  std::vector<Eigen::VectorXd> initial;
  if (opts.witness_start) {
    // The p = 2 extremizer: a single Hermite polynomial on the relevant level.
    int level = lv.low;
    if (kind == ConstantKind::jackson_J) level = d + 1;
    MultiIndex w = MultiIndex::unit(n, 0, level);
    Eigen::VectorXd u0 = Eigen::VectorXd::Zero(ratio->variable_count());
    for (int j = 0; j < K; ++j)
      if (idx[static_cast<std::size_t>(j)] == w) u0(j) = 1.0;
    initial.push_back(u0);
  }

  AscentResult best = maximize_on_sphere(ratio->variable_count(), signed_objective,
                                         opts.ascent, initial);

  ConstantEstimate est;
  est.kind = kind;
  est.n = n;
  est.p = p;
  est.d = d;
  est.D = D;
  est.grid_value = minimize ? -best.value : best.value;
  Eigen::VectorXcd c = ratio->unpack(best.best);
  HermiteExpansion::Terms t;
  for (int j = 0; j < K; ++j) {
    const auto& alpha = idx[static_cast<std::size_t>(j)];
    // Drop roundoff-level coefficients so the stored extremizer stays sparse.
    if (std::abs(c(j)) > 1e-15) t[alpha] = c(j) / std::sqrt(alpha.factorial());
  }
  est.extremizer = HermiteExpansion(n, std::move(t));
  double tol = 0.0;
  est.value = constant_ratio(kind, est.extremizer, p, d, opts.norm_tol, &tol);
  est.value_tolerance = tol;
  est.starts = static_cast<int>(best.starts.size());
  est.iterations = best.total_iterations();
  est.seed = opts.ascent.seed;
  est.converged_fraction = static_cast<double>(best.converged_starts()) / est.starts;
  est.best_converged = best.starts[static_cast<std::size_t>(best.best_start)].converged;
  est.monotone = best.monotone();
  est.best_start = best.best_start;
  return est;
}

std::vector<DualityRow> duality_table(int n, double p, int d_low, int d_high, int D,
                                      const ExtremalOptions& opts) {
  require(d_low >= 1 && d_low <= d_high, ErrorCode::invalid_argument,
          "duality table needs 1 <= d_low <= d_high");
  const double p_dual = p / (p - 1.0);
  std::vector<DualityRow> rows;
  for (int d = d_low; d <= d_high; ++d) {
    DualityRow row;
    row.d = d;
    row.J = estimate_constant(ConstantKind::jackson_J, n, p, d, D, opts);
    row.F = estimate_constant(ConstantKind::freud_F, n, p_dual, d, D, opts);
    row.ratio = row.J.value / row.F.value;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace tailspace
