#include "approx.hpp"

#include <cmath>

#include <boost/math/tools/toms748_solve.hpp>

#include "multi_index.hpp"
#include "operators.hpp"

namespace tailspace {

namespace {

constexpr double kWeightFloor = 1e-12;

double power_sum_of(const Eigen::VectorXd& w, const Eigen::VectorXcd& r, double p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const double a = std::abs(r(i));
    if (a > 0.0) s += w(i) * std::pow(a, p);
  }
  return s;
}

// Gradient of sum w |r|^p with respect to (Re v, Im v), r = t - B v.
Eigen::VectorXd objective_gradient(const Eigen::VectorXd& w, const Eigen::MatrixXd& B,
                                   const Eigen::VectorXcd& r, double p) {
  const Eigen::Index m = r.size();
  Eigen::VectorXd dre(m), dim(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double a = std::abs(r(i));
    const double h = a > 0.0 ? w(i) * p * std::pow(a, p - 2.0) : 0.0;
    dre(i) = h * r(i).real();
    dim(i) = h * r(i).imag();
  }
  const Eigen::Index k = B.cols();
  Eigen::VectorXd g(2 * k);
  g.head(k) = -B.transpose() * dre;
  g.tail(k) = -B.transpose() * dim;
  return g;
}

}  // namespace

double dual_certificate(const Eigen::VectorXd& weights, const Eigen::MatrixXd& basis,
                        const Eigen::VectorXcd& residual, double p) {
  const double s = power_sum_of(weights, residual, p);
  if (s <= 0.0) return 0.0;
  const double norm = std::pow(s, 1.0 / p);
  Eigen::VectorXcd psi(residual.size());
  for (Eigen::Index i = 0; i < residual.size(); ++i) {
    const double a = std::abs(residual(i));
    psi(i) = a > 0.0 ? weights(i) * std::pow(a / norm, p - 2.0) * residual(i) / norm : 0.0;
  }
  Eigen::VectorXcd pairing = basis.transpose() * psi;
  return pairing.cwiseAbs().maxCoeff();
}

GridSolve solve_lp_on_grid(const Eigen::VectorXd& w, const Eigen::MatrixXd& B,
                           const Eigen::VectorXcd& t, double p, Eigen::VectorXcd v,
                           int max_iter, double grad_tol) {
  require(p > 1.0 && std::isfinite(p), ErrorCode::invalid_argument,
          "best approximation needs p in (1, inf)");
  const Eigen::Index k = B.cols();
  const Eigen::Index m = B.rows();
  GridSolve out;
  const Eigen::MatrixXcd Bc = B.cast<Complex>();
  auto residual = [&](const Eigen::VectorXcd& vv) -> Eigen::VectorXcd { return t - Bc * vv; };
  Eigen::VectorXcd r = residual(v);
  double phi = power_sum_of(w, r, p);
  int it = 0;
  bool converged = false;
  double gnorm = 0.0;
  double best_cert = std::numeric_limits<double>::infinity();
  int stalled = 0;
  while (true) {
    if (phi <= 0.0) {
      converged = true;
      gnorm = 0.0;
      break;
    }
    gnorm = dual_certificate(w, B, r, p);
    if (gnorm <= grad_tol) {
      converged = true;
      break;
    }
    if (it >= max_iter) break;
    ++it;
    // Newton system in (Re v, Im v). Each node contributes
    // w p |r|^{p-2} (I + (p-2) rhat rhat^T) (x) b b^T.
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(2 * k, 2 * k);
    Eigen::VectorXd hxx(m), hxy(m), hyy(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double a = std::abs(r(i));
      const double ae = std::max(a, kWeightFloor);
      const double h = w(i) * p * std::pow(ae, p - 2.0);
      const double c = a > 0.0 ? r(i).real() / a : 0.0;
      const double s = a > 0.0 ? r(i).imag() / a : 0.0;
      hxx(i) = h * (1.0 + (p - 2.0) * c * c);
      hyy(i) = h * (1.0 + (p - 2.0) * s * s);
      hxy(i) = h * (p - 2.0) * c * s;
    }
    H.topLeftCorner(k, k) = B.transpose() * hxx.asDiagonal() * B;
    H.bottomRightCorner(k, k) = B.transpose() * hyy.asDiagonal() * B;
    H.topRightCorner(k, k) = B.transpose() * hxy.asDiagonal() * B;
    H.bottomLeftCorner(k, k) = H.topRightCorner(k, k).transpose();
    const double ridge = 1e-14 * std::max(H.diagonal().maxCoeff(), 1e-300);
    H.diagonal().array() += ridge;
    Eigen::VectorXd g = objective_gradient(w, B, r, p);
    Eigen::VectorXd step = H.ldlt().solve(-g);
    double slope = g.dot(step);
    if (!(slope < 0.0)) {
      step = -g;
      slope = -g.squaredNorm();
    }
    // Exact line search: the objective is convex along the step, so the
    // best length is the root of its directional derivative. Searching on
    // the derivative rather than on values keeps full precision near the
    // optimum, and it removes Newton's overshoot for p < 2, where the model
    // curvature p(p-1)|r|^{p-2} is far from the true one away from r.
    auto along = [&](double lambda) {
      Eigen::VectorXcd v_new(k);
      for (Eigen::Index j = 0; j < k; ++j)
        v_new(j) = v(j) + lambda * Complex(step(j), step(k + j));
      return v_new;
    };
    auto dphi = [&](double lambda) {
      return objective_gradient(w, B, residual(along(lambda)), p).dot(step);
    };
    double lo = 0.0, hi = 1.0;
    double d_hi = dphi(hi);
    while (d_hi < 0.0 && hi < 64.0) {
      lo = hi;
      hi *= 2.0;
      d_hi = dphi(hi);
    }
    double lambda = hi;
    // A nearly exact Newton step needs no refinement.
    if (d_hi > 0.0 && hi == 1.0 && d_hi <= 0.25 * -slope) lambda = 1.0;
    else if (d_hi > 0.0) {
      std::uintmax_t evals = 100;
      auto bracket = boost::math::tools::toms748_solve(
          dphi, lo, hi, lo == 0.0 ? slope : dphi(lo), d_hi,
          boost::math::tools::eps_tolerance<double>(30), evals);
      lambda = 0.5 * (bracket.first + bracket.second);
    }
    const double phi_new = power_sum_of(w, residual(along(lambda)), p);
    // Near the optimum phi stops changing in double precision while Newton
    // steps still shrink the gradient, so non-increasing steps are taken
    // and the loop ends once the certificate stops improving.
    if (!(phi_new <= phi * (1.0 + 1e-13)) || lambda == 0.0) break;
    v = along(lambda);
    r = residual(v);
    phi = phi_new;
    const double g_new = dual_certificate(w, B, r, p);
    stalled = g_new < best_cert ? 0 : stalled + 1;
    best_cert = std::min(best_cert, g_new);
    if (stalled >= 3) break;
  }
  gnorm = phi > 0.0 ? dual_certificate(w, B, r, p) : 0.0;
  converged = gnorm <= grad_tol;
  out.v = std::move(v);
  out.residual = std::move(r);
  out.power_sum = phi;
  out.iterations = it;
  out.converged = converged;
  out.gradient_norm = gnorm;
  return out;
}

int approx_grid_nodes(int degree, double p, int dim) {
  const double exact = std::max(2.0 * p * degree, 80.0);
  const int m = gauss_nodes_for_degree(exact);
  const int cap = dim == 1 ? kMaxNodesPerAxis : (dim == 2 ? 60 : 24);
  return std::min(m, cap);
}

NodeGrid solver_grid(int degree, double p, int dim, int nodes) {
  if (nodes > 0) return gaussian_grid(nodes, dim);
  if (!is_even_integer(p) && dim == 1) {
    // |f|^p lives on |x| <~ sqrt(p degree) + a few standard deviations.
    const double R = std::sqrt(p * std::max(degree, 1)) + 9.0;
    return trapezoid_gaussian_grid(kTrapezoidSpacing, R);
  }
  return gaussian_grid(approx_grid_nodes(degree, p, dim), dim);
}

ApproxResult best_approx(const HermiteExpansion& g, int d, double p, const ApproxOptions& opts) {
  require(p > 1.0 && std::isfinite(p), ErrorCode::invalid_argument,
          "best approximation needs p in (1, inf)");
  require(d >= 0, ErrorCode::invalid_argument, "degree d must be >= 0");
  require(opts.max_iter >= 0, ErrorCode::invalid_argument, "max_iter must be >= 0");
  const int n = g.dim();
  ApproxResult res;
  res.minimizer = project(g, 0, d);
  if (g.in_cap(d)) {
    res.converged = true;
    return res;
  }
  NodeGrid grid = solver_grid(g.max_degree(), p, n, opts.nodes);
  res.grid_nodes_per_axis = static_cast<int>(std::lround(std::pow(grid.size(), 1.0 / n)));

  std::vector<MultiIndex> low = indices_between(n, 0, d);
  Eigen::MatrixXd B = hermite_design_matrix(grid, low);
  for (std::size_t j = 0; j < low.size(); ++j)
    B.col(static_cast<Eigen::Index>(j)) /= std::sqrt(low[j].factorial());

  std::vector<MultiIndex> g_idx;
  Eigen::VectorXcd g_coef(static_cast<Eigen::Index>(g.size()));
  for (const auto& [alpha, c] : g.terms()) {
    g_coef(static_cast<Eigen::Index>(g_idx.size())) = c;
    g_idx.push_back(alpha);
  }
  Eigen::VectorXcd target = hermite_design_matrix(grid, g_idx).cast<Complex>() * g_coef;

  Eigen::VectorXcd v0(static_cast<Eigen::Index>(low.size()));
  for (std::size_t j = 0; j < low.size(); ++j)
    v0(static_cast<Eigen::Index>(j)) = g.coeff(low[j]) * std::sqrt(low[j].factorial());

  GridSolve s = solve_lp_on_grid(grid.weights, B, target, p, v0, opts.max_iter, opts.grad_tol);
  HermiteExpansion::Terms t;
  for (std::size_t j = 0; j < low.size(); ++j)
    t[low[j]] = s.v(static_cast<Eigen::Index>(j)) / std::sqrt(low[j].factorial());
  res.minimizer = HermiteExpansion(n, std::move(t));
  res.iterations = s.iterations;
  res.converged = s.converged;
  res.gradient_norm = s.gradient_norm;
  res.grid_error = std::pow(s.power_sum, 1.0 / p);

  NormRequest req;
  req.p = p;
  req.tol = opts.norm_tol;
  NormResult e = lp_norm(g - res.minimizer, req);
  res.error = e.value;
  res.error_tolerance = e.tolerance;
  if (!e.converged) res.converged = false;
  return res;
}

JacksonResult jackson_quotient(const HermiteExpansion& g, int d, double p,
                               const ApproxOptions& opts) {
  require(d >= 1, ErrorCode::invalid_argument, "Jackson quotient needs d >= 1");
  auto grad = gradient(g);
  NormRequest req;
  req.p = p;
  req.tol = opts.norm_tol;
  JacksonResult out;
  out.gradient_norm = lp_norm(std::span<const HermiteExpansion>(grad), req);
  require(out.gradient_norm.value > 0.0, ErrorCode::domain,
          "Jackson quotient of a constant: grad g = 0");
  out.approx = best_approx(g, d, p, opts);
  out.quotient = std::sqrt(static_cast<double>(d)) * out.approx.error / out.gradient_norm.value;
  return out;
}

}  // namespace tailspace
