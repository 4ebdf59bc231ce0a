#pragma once

#include <vector>

#include <Eigen/Dense>

#include "expansion.hpp"
#include "quadrature.hpp"

namespace tailspace {

struct ApproxOptions {
  int max_iter = 100;
  /// Stopping threshold on the scale-free gradient (the certificate residual).
  double grad_tol = 1e-9;
  /// Gauss-Hermite nodes per axis; 0 picks solver_grid's default.
  int nodes = 0;
  /// Relative tolerance for the final adaptive norm of the residual.
  double norm_tol = 1e-10;
};

struct ApproxResult {
  HermiteExpansion minimizer{1};
  /// ||g - minimizer||_p by lp_norm (adaptive for non-even p).
  double error = 0.0;
  double error_tolerance = 0.0;
  /// The same norm on the solver grid.
  double grid_error = 0.0;
  int iterations = 0;
  bool converged = false;
  /// max_alpha |<psi, H_alpha>| / sqrt(alpha!) for the dual density
  /// psi = |r|^{p-2} r / ||r||_p^{p-1}, r = g - minimizer, on the solver grid.
  double gradient_norm = 0.0;
  /// Grid points per axis (0 when no grid was needed).
  int grid_nodes_per_axis = 0;
};

/// Unique minimizer of ||g - phi||_p over phi in P^{<=d}, p in (1, inf).
ApproxResult best_approx(const HermiteExpansion& g, int d, double p,
                         const ApproxOptions& opts = {});

/// Nodes per axis used by best_approx for a given input degree.
int approx_grid_nodes(int degree, double p, int dim);

/// Fixed discretization for a solve over polynomials of degree <= `degree`.
/// nodes > 0 forces a Gauss-Hermite grid with that many nodes per axis.
/// Otherwise even p gets a Gauss-Hermite grid exact for degree
/// max(2 p degree, 80) (capped per axis); non-even p on R gets a trapezoid
/// grid with spacing kTrapezoidSpacing, and on R^n a capped Gauss-Hermite grid.
NodeGrid solver_grid(int degree, double p, int dim, int nodes = 0);

inline constexpr double kTrapezoidSpacing = 0.01;

struct JacksonResult {
  double quotient = 0.0;
  ApproxResult approx;
  NormResult gradient_norm;
};

/// sqrt(d) * min ||g - phi||_p / ||grad g||_p.
JacksonResult jackson_quotient(const HermiteExpansion& g, int d, double p,
                               const ApproxOptions& opts = {});

/// Grid-level solver shared with the constant estimators: minimizes
/// sum_i w_i |t_i - (B v)_i|^p over complex v by damped Newton. B holds the
/// basis values at the nodes. Starts from v0.
struct GridSolve {
  Eigen::VectorXcd v;
  /// sum_i w_i |r_i|^p at v.
  double power_sum = 0.0;
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
  /// Residual t - B v at the nodes.
  Eigen::VectorXcd residual;
};

GridSolve solve_lp_on_grid(const Eigen::VectorXd& weights, const Eigen::MatrixXd& basis,
                           const Eigen::VectorXcd& target, double p, Eigen::VectorXcd v0,
                           int max_iter, double grad_tol);

/// The certificate residual of a grid residual r (see ApproxResult).
double dual_certificate(const Eigen::VectorXd& weights, const Eigen::MatrixXd& basis,
                        const Eigen::VectorXcd& residual, double p);

}  // namespace tailspace
