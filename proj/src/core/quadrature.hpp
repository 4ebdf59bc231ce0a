#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "expansion.hpp"

namespace tailspace {

enum class RuleKind { gauss_hermite, gauss_laguerre, polar_complex, tensor };

std::string rule_kind_name(RuleKind kind);
RuleKind parse_rule_kind(const std::string& name);

/// Stability cap for rules built from a Jacobi matrix.
inline constexpr int kMaxNodesPerAxis = 200;

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss rule for d gamma_1 (weight e^{-x^2/2}/sqrt(2 pi)); weights sum to 1.
Rule1D gauss_hermite_nodes(int m);

/// Gauss rule for the probability weight s^a e^{-s} / Gamma(a+1) on [0, inf).
Rule1D gauss_laguerre_nodes(int m, double a = 0.0);

/// Nodes and weights realizing a probability measure:
///   gauss_hermite   d gamma_1 on R
///   tensor          d gamma_n on R^n (gauss_hermite on every axis)
///   gauss_laguerre  e^{-s} ds on [0, inf)
///   polar_complex   d gamma_2 on C = R^2, Gauss-Laguerre in s = |z|^2/2 times
///                   m_theta uniform angles
/// Tensor grids are iterated lazily in a fixed lexicographic order.
class QuadratureRule {
 public:
  static QuadratureRule gauss_hermite(int m);
  static QuadratureRule tensor(int m, int dim);
  static QuadratureRule gauss_laguerre(int m);
  static QuadratureRule polar_complex(int m_radial, int m_angular);

  RuleKind kind() const { return kind_; }
  int real_dim() const { return real_dim_; }
  bool is_polar() const { return kind_ == RuleKind::polar_complex; }
  bool is_laguerre() const { return kind_ == RuleKind::gauss_laguerre; }
  const std::vector<int>& sizes() const { return sizes_; }
  std::size_t size() const;
  /// Largest total degree integrated exactly. For polar rules, z^a zbar^b is
  /// exact when a + b <= 2 m_r - 1 and |a - b| < m_theta.
  int exact_degree() const { return exact_degree_; }
  const Rule1D& axis() const { return axis_; }

  /// Calls f(point, weight) for every node.
  void for_each(const std::function<void(std::span<const double>, double)>& f) const;

  double weight_sum() const;

 private:
  QuadratureRule() = default;

  RuleKind kind_ = RuleKind::gauss_hermite;
  int real_dim_ = 1;
  std::vector<int> sizes_;
  int exact_degree_ = 0;
  Rule1D axis_;
  int angular_ = 0;
};

/// build_rule(kind, sizes, dim): sizes = {m} for gauss_hermite, tensor and
/// gauss_laguerre; {m_r, m_theta} for polar_complex. gauss_hermite with
/// dim > 1 yields the tensor rule.
QuadratureRule build_rule(RuleKind kind, std::span<const int> sizes, int dim = 1);

/// Writes "node...,weight" rows (one column per coordinate) with a header.
void write_rule_csv(const QuadratureRule& rule, std::ostream& os);

/// \sum_i w_i f(x_i). Throws on non-finite integrand values.
Complex integrate(const std::function<Complex(std::span<const double>)>& f,
                  const QuadratureRule& rule);

/// p > 0 finite (values below 1 give the quasi-norm); tol is the relative
/// stopping threshold for integrands that are not polynomials.
struct NormRequest {
  double p = 2.0;
  double tol = 1e-8;
  int max_refinements = 8;
};

struct NormResult {
  double value = 0.0;
  /// Relative accuracy achieved: roundoff level for exact rules, last
  /// relative change (or integrator estimate) for adaptive ones.
  double tolerance = 0.0;
  bool converged = true;
  int refinements = 0;
  std::size_t nodes = 0;
};

bool is_even_integer(double p);

/// Smallest m whose Gauss rule integrates degree `deg` exactly.
int gauss_nodes_for_degree(double deg);

/// ||h||_{L^p(d gamma_n)}. Even p: one Gauss-Hermite rule exact for degree
/// p * max_degree. Otherwise n = 1 splits R at the near-real roots of h and
/// integrates each piece with tanh-sinh; n > 1 doubles a tensor rule until the
/// relative change drops below tol.
NormResult lp_norm(const HermiteExpansion& h, const NormRequest& req);

/// L^p norm of the Euclidean length (sum_j |h_j|^2)^{1/2} of a tuple of
/// expansions on the same R^n, e.g. a gradient.
NormResult lp_norm(std::span<const HermiteExpansion> components,
                   const NormRequest& req);

enum class ComplexMethod { polar, tensor };

/// ||f||_{L^p(d gamma_{2n})} for an analytic polynomial on C^n.
NormResult lp_norm(const AnalyticPoly& f, const NormRequest& req,
                   ComplexMethod method = ComplexMethod::polar);

/// Same for the Euclidean length of a tuple of analytic polynomials.
NormResult lp_norm(std::span<const AnalyticPoly> components,
                   const NormRequest& req,
                   ComplexMethod method = ComplexMethod::polar);

/// <f, g> = \int f conj(g) d gamma_n on a Gauss-Hermite rule exact for
/// deg f + deg g.
Complex inner_product(const HermiteExpansion& f, const HermiteExpansion& g);

/// The same pairing from coefficients: sum_alpha c_alpha conj(d_alpha) alpha!.
Complex inner_product_coefficients(const HermiteExpansion& f,
                                   const HermiteExpansion& g);

/// A materialized tensor Gauss-Hermite grid, for optimizers that keep one
/// discretization fixed for a whole solve.
struct NodeGrid {
  int dim = 1;
  Eigen::MatrixXd points;  // size() x dim
  Eigen::VectorXd weights;

  Eigen::Index size() const { return weights.size(); }
};

NodeGrid gaussian_grid(int m, int dim);

/// One-dimensional trapezoid grid with spacing h on [-R, R], weighted by the
/// Gaussian density and renormalized to unit mass. Converges like h^{p+1}
/// for |f|^p with simple zeros, where Gauss rules lose their advantage.
NodeGrid trapezoid_gaussian_grid(double h, double R);

/// Column k holds H_{alpha_k} at every grid point; with axis >= 0 it holds
/// d/dx_axis H_{alpha_k}.
Eigen::MatrixXd hermite_design_matrix(const NodeGrid& grid,
                                      std::span<const MultiIndex> indices,
                                      int axis = -1);

}  // namespace tailspace
