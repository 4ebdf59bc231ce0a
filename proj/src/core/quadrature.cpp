#include "quadrature.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hermite.hpp"

namespace tailspace {

std::string rule_kind_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::gauss_hermite: return "gauss_hermite";
    case RuleKind::gauss_laguerre: return "gauss_laguerre";
    case RuleKind::polar_complex: return "polar_complex";
    case RuleKind::tensor: return "tensor";
  }
  return "unknown";
}

RuleKind parse_rule_kind(const std::string& name) {
  if (name == "gauss_hermite") return RuleKind::gauss_hermite;
  if (name == "gauss_laguerre") return RuleKind::gauss_laguerre;
  if (name == "polar_complex") return RuleKind::polar_complex;
  if (name == "tensor") return RuleKind::tensor;
  fail(ErrorCode::invalid_argument, "unknown quadrature rule kind '" + name + "'");
}

namespace {

void check_size(int m) {
  require(m >= 1, ErrorCode::invalid_argument, "rule size must be >= 1");
  require(m <= kMaxNodesPerAxis, ErrorCode::domain,
          "rule size " + std::to_string(m) + " exceeds the stability cap of " +
              std::to_string(kMaxNodesPerAxis) + " nodes per axis");
}

// Gauss rule for the probability measure whose orthonormal polynomials obey
//   x phi_k = sqrt(b_{k+1}) phi_{k+1} + a_k phi_k + sqrt(b_k) phi_{k-1}.
// Nodes come from the Jacobi matrix eigenvalues and are polished by Newton on
// phi_m; weights use the Christoffel function 1 / sum_k phi_k(x)^2, which
// keeps tiny tail weights accurate in the relative sense.
template <class Diag, class OffSq>
Rule1D jacobi_rule(int m, Diag diag, OffSq offsq) {
  Eigen::VectorXd d(m), e(std::max(m - 1, 1));
  for (int k = 0; k < m; ++k) d(k) = diag(k);
  for (int k = 1; k < m; ++k) e(k - 1) = std::sqrt(offsq(k));
  Rule1D rule;
  rule.nodes.resize(static_cast<std::size_t>(m));
  rule.weights.resize(static_cast<std::size_t>(m));
  if (m == 1) {
    rule.nodes[0] = d(0);
    rule.weights[0] = 1.0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e.head(m - 1), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();

  constexpr double kBig = 1e150;
  struct Eval {
    double phi, dphi, sum, log_scale;
  };
  // Orthonormal recurrence with rescaling; returns phi_m, phi_m' and
  // sum_{k<m} phi_k^2 = stored sum * exp(log_scale).
  auto eval = [&](double x) {
    double p0 = 0.0, p1 = 1.0, dp0 = 0.0, dp1 = 0.0, sum = 1.0, scale = 0.0;
    for (int k = 0; k < m; ++k) {
      double bk1 = std::sqrt(offsq(k + 1));
      double bk = k > 0 ? std::sqrt(offsq(k)) : 0.0;
      double p2 = ((x - diag(k)) * p1 - bk * p0) / bk1;
      double dp2 = (p1 + (x - diag(k)) * dp1 - bk * dp0) / bk1;
      p0 = p1;
      p1 = p2;
      dp0 = dp1;
      dp1 = dp2;
      if (k + 1 < m) sum += p1 * p1;
      if (std::abs(p1) > kBig || std::abs(dp1) > kBig) {
        p0 /= kBig;
        p1 /= kBig;
        dp0 /= kBig;
        dp1 /= kBig;
        sum /= kBig * kBig;
        scale += 2.0 * std::log(kBig);
      }
    }
    return Eval{p1, dp1, sum, scale};
  };
  for (int i = 0; i < m; ++i) {
    double x = ev(i);
    for (int iter = 0; iter < 3; ++iter) {
      Eval e = eval(x);
      if (e.dphi == 0.0) break;
      double step = e.phi / e.dphi;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    Eval e = eval(x);
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = std::exp(-e.log_scale) / e.sum;
  }
  double total = 0.0;
  for (double w : rule.weights) total += w;
  for (double& w : rule.weights) w /= total;
  return rule;
}

}  // namespace

Rule1D gauss_hermite_nodes(int m) {
  check_size(m);
  Rule1D r = jacobi_rule(
      m, [](int) { return 0.0; }, [](int k) { return static_cast<double>(k); });
  // Exact symmetry about the origin.
  for (int i = 0; i < m / 2; ++i) {
    auto lo = static_cast<std::size_t>(i);
    auto hi = static_cast<std::size_t>(m - 1 - i);
    double x = 0.5 * (r.nodes[hi] - r.nodes[lo]);
    double w = 0.5 * (r.weights[hi] + r.weights[lo]);
    r.nodes[lo] = -x;
    r.nodes[hi] = x;
    r.weights[lo] = r.weights[hi] = w;
  }
  if (m % 2 == 1) r.nodes[static_cast<std::size_t>(m / 2)] = 0.0;
  return r;
}

Rule1D gauss_laguerre_nodes(int m, double a) {
  check_size(m);
  require(a > -1.0, ErrorCode::invalid_argument, "Laguerre parameter must be > -1");
  return jacobi_rule(
      m, [a](int k) { return 2.0 * k + a + 1.0; },
      [a](int k) { return k * (k + a); });
}

QuadratureRule QuadratureRule::gauss_hermite(int m) { return tensor(m, 1); }

QuadratureRule QuadratureRule::tensor(int m, int dim) {
  require(dim >= 1, ErrorCode::invalid_argument, "dimension must be >= 1");
  QuadratureRule r;
  r.kind_ = dim == 1 ? RuleKind::gauss_hermite : RuleKind::tensor;
  r.real_dim_ = dim;
  r.sizes_ = {m};
  r.axis_ = gauss_hermite_nodes(m);
  r.exact_degree_ = 2 * m - 1;
  return r;
}

QuadratureRule QuadratureRule::gauss_laguerre(int m) {
  QuadratureRule r;
  r.kind_ = RuleKind::gauss_laguerre;
  r.real_dim_ = 1;
  r.sizes_ = {m};
  r.axis_ = gauss_laguerre_nodes(m);
  r.exact_degree_ = 2 * m - 1;
  return r;
}

QuadratureRule QuadratureRule::polar_complex(int m_radial, int m_angular) {
  require(m_angular >= 1, ErrorCode::invalid_argument,
          "angular node count must be >= 1");
  QuadratureRule r;
  r.kind_ = RuleKind::polar_complex;
  r.real_dim_ = 2;
  r.sizes_ = {m_radial, m_angular};
  r.axis_ = gauss_laguerre_nodes(m_radial);
  r.angular_ = m_angular;
  r.exact_degree_ = std::min(2 * m_radial - 1, m_angular - 1);
  return r;
}

std::size_t QuadratureRule::size() const {
  if (is_polar()) return axis_.nodes.size() * static_cast<std::size_t>(angular_);
  std::size_t s = 1;
  for (int j = 0; j < real_dim_; ++j) s *= axis_.nodes.size();
  return s;
}

void QuadratureRule::for_each(
    const std::function<void(std::span<const double>, double)>& f) const {
  const std::size_t m = axis_.nodes.size();
  if (is_polar()) {
    double pt[2];
    for (std::size_t i = 0; i < m; ++i) {
      double r = std::sqrt(2.0 * axis_.nodes[i]);
      for (int k = 0; k < angular_; ++k) {
        double th = 2.0 * std::numbers::pi * k / angular_;
        pt[0] = r * std::cos(th);
        pt[1] = r * std::sin(th);
        f(std::span<const double>(pt, 2), axis_.weights[i] / angular_);
      }
    }
    return;
  }
  const auto n = static_cast<std::size_t>(real_dim_);
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> pt(n);
  while (true) {
    double w = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      pt[j] = axis_.nodes[idx[j]];
      w *= axis_.weights[idx[j]];
    }
    f(pt, w);
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++idx[j] < m) break;
      idx[j] = 0;
      if (j == 0) return;
    }
    if (n == 0) return;
  }
}

double QuadratureRule::weight_sum() const {
  double s = 0.0;
  for_each([&](std::span<const double>, double w) { s += w; });
  return s;
}

QuadratureRule build_rule(RuleKind kind, std::span<const int> sizes, int dim) {
  auto need = [&](std::size_t k) {
    require(sizes.size() == k, ErrorCode::invalid_argument,
            rule_kind_name(kind) + " expects " + std::to_string(k) + " size parameter(s)");
  };
  switch (kind) {
    case RuleKind::gauss_hermite:
    case RuleKind::tensor:
      need(1);
      return QuadratureRule::tensor(sizes[0], dim);
    case RuleKind::gauss_laguerre:
      need(1);
      require(dim == 1, ErrorCode::invalid_argument, "gauss_laguerre is one-dimensional");
      return QuadratureRule::gauss_laguerre(sizes[0]);
    case RuleKind::polar_complex:
      need(2);
      require(dim == 1, ErrorCode::invalid_argument,
              "polar_complex covers one complex dimension");
      return QuadratureRule::polar_complex(sizes[0], sizes[1]);
  }
  fail(ErrorCode::invalid_argument, "unknown rule kind");
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_rule_csv(const QuadratureRule& rule, std::ostream& os) {
  const int n = rule.real_dim();
  for (int j = 0; j < n; ++j) os << "x" << (j + 1) << ',';
  os << "weight\n";
  rule.for_each([&](std::span<const double> x, double w) {
    for (double v : x) os << format_double(v) << ',';
    os << format_double(w) << '\n';
  });
}

Complex integrate(const std::function<Complex(std::span<const double>)>& f,
                  const QuadratureRule& rule) {
  Complex sum = 0.0;
  rule.for_each([&](std::span<const double> x, double w) {
    Complex v = f(x);
    require(std::isfinite(v.real()) && std::isfinite(v.imag()), ErrorCode::domain,
            "integrand is not finite at a quadrature node");
    sum += w * v;
  });
  return sum;
}

bool is_even_integer(double p) {
  return p >= 2.0 && std::fmod(p, 2.0) == 0.0;
}

int gauss_nodes_for_degree(double deg) {
  return std::max(1, static_cast<int>(std::ceil((deg + 1.0) / 2.0 - 1e-12)));
}

namespace {

void check_request(const NormRequest& req) {
  require(std::isfinite(req.p) && req.p > 0.0, ErrorCode::invalid_argument,
          "norm exponent p must be finite and positive");
  require(req.tol > 0.0, ErrorCode::invalid_argument, "tolerance must be positive");
  require(req.max_refinements >= 0, ErrorCode::invalid_argument,
          "max_refinements must be >= 0");
}

// Nodes needed by a Gauss rule to integrate degree `deg` exactly.
int nodes_for_degree(double deg) { return gauss_nodes_for_degree(deg); }

template <class T>
int max_degree_of(std::span<const T> comps) {
  int d = 0;
  for (const auto& c : comps) d = std::max(d, c.max_degree());
  return d;
}

template <class T>
bool all_zero(std::span<const T> comps) {
  return std::all_of(comps.begin(), comps.end(), [](const T& c) { return c.is_zero(); });
}

template <class T>
int common_dim(std::span<const T> comps) {
  require(!comps.empty(), ErrorCode::invalid_argument, "empty component list");
  int n = comps[0].dim();
  for (const auto& c : comps)
    require(c.dim() == n, ErrorCode::dimension_mismatch,
            "components live in different dimensions");
  return n;
}

double pow_abs(double abs2, double p) {
  // |v|^p from |v|^2.
  if (abs2 == 0.0) return 0.0;
  if (p == 2.0) return abs2;
  if (p == 4.0) return abs2 * abs2;
  return std::pow(abs2, 0.5 * p);
}

// sum_i w_i |F(x_i)|^p over the tensor Gauss-Hermite rule with m nodes/axis,
// where |F|^2 = sum_c |h_c|^2.
double real_power_sum(std::span<const HermiteExpansion> comps, int m, double p) {
  const int n = comps[0].dim();
  const int deg = max_degree_of(comps);
  Rule1D rule = gauss_hermite_nodes(m);
  const auto mm = static_cast<std::size_t>(m);
  const auto kk = static_cast<std::size_t>(deg) + 1;
  std::vector<double> table(mm * kk);
  for (std::size_t i = 0; i < mm; ++i)
    hermite_values(rule.nodes[i], std::span<double>(table.data() + i * kk, kk));

  const auto nn = static_cast<std::size_t>(n);
  std::vector<std::size_t> idx(nn, 0);
  double total = 0.0;
  while (true) {
    double w = 1.0;
    for (std::size_t j = 0; j < nn; ++j) w *= rule.weights[idx[j]];
    double abs2 = 0.0;
    for (const auto& h : comps) {
      Complex v = 0.0;
      for (const auto& [alpha, c] : h.terms()) {
        double prod = 1.0;
        for (std::size_t j = 0; j < nn; ++j)
          prod *= table[idx[j] * kk + static_cast<std::size_t>(alpha[j])];
        v += c * prod;
      }
      abs2 += std::norm(v);
    }
    total += w * pow_abs(abs2, p);
    std::size_t j = nn;
    bool done = true;
    while (j > 0) {
      --j;
      if (++idx[j] < mm) {
        done = false;
        break;
      }
      idx[j] = 0;
    }
    if (done) break;
  }
  return total;
}

NormResult finish(double sum, double p, double rel_sum_tol, bool converged,
                  int refinements, std::size_t nodes) {
  NormResult r;
  r.value = sum > 0.0 ? std::pow(sum, 1.0 / p) : 0.0;
  // Relative error of sum^{1/p} is about rel_sum_tol / p.
  r.tolerance = std::max(rel_sum_tol / p, 4.0 * std::numeric_limits<double>::epsilon());
  r.converged = converged;
  r.refinements = refinements;
  r.nodes = nodes;
  return r;
}

// Repeatedly doubles the per-axis node count until the estimated relative
// error of the p-th power sum drops below p * tol. Kinks make convergence
// algebraic, so the estimate is twice the geometric tail delta / (ratio - 1)
// of the last two changes rather than the last change alone.
template <class Eval, class Count>
NormResult doubling(Eval eval, int m0, int cap, const NormRequest& req, Count count) {
  constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();
  // Start on the doubling chain that ends exactly at the cap.
  int m = cap;
  while (m % 2 == 0 && m / 2 >= std::max(2, m0 / 2)) m /= 2;
  double prev = eval(m);
  double rel = std::numeric_limits<double>::infinity();
  double last_delta = std::numeric_limits<double>::infinity();
  int refinements = 0;
  while (refinements < req.max_refinements) {
    // Partial steps would break the geometric error model.
    const int m2 = 2 * m;
    if (m2 > cap) break;
    double cur = eval(m2);
    ++refinements;
    const double delta =
        std::abs(cur - prev) / std::max(std::abs(cur), std::numeric_limits<double>::min());
    const double ratio = last_delta / std::max(delta, std::numeric_limits<double>::min());
    if (delta <= kRoundoff)
      rel = delta;
    else if (std::isfinite(last_delta) && ratio > 1.25)
      rel = 2.0 * delta / (ratio - 1.0);
    else
      rel = std::numeric_limits<double>::infinity();
    last_delta = delta;
    m = m2;
    prev = cur;
    if (rel <= req.p * req.tol) break;
  }
  const bool ok = rel <= req.p * req.tol;
  if (!std::isfinite(rel)) rel = last_delta;
  return finish(prev, req.p, rel, ok, refinements, count(m));
}

std::size_t tensor_count(int m, int dim) {
  std::size_t s = 1;
  for (int j = 0; j < dim; ++j) s *= static_cast<std::size_t>(m);
  return s;
}

// Dense orthonormal coefficients u_k = c_k sqrt(k!) of a 1-D expansion.
std::vector<Complex> dense_coefficients(const HermiteExpansion& h) {
  std::vector<Complex> c(static_cast<std::size_t>(h.max_degree()) + 1, 0.0);
  for (const auto& [alpha, v] : h.terms()) c[static_cast<std::size_t>(alpha[0])] = v;
  return c;
}

// Complex roots of sum_k c_k H_k from the eigenvalues of the comrade matrix
// in the orthonormal basis psi_k = H_k / sqrt(k!).
std::vector<Complex> hermite_roots(const std::vector<Complex>& c) {
  const int N = static_cast<int>(c.size()) - 1;
  if (N < 1) return {};
  std::vector<Complex> u(c.size());
  double lf = 0.0;  // log sqrt(k!)
  for (int k = 0; k <= N; ++k) {
    if (k > 0) lf += 0.5 * std::log(static_cast<double>(k));
    u[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k)] * std::exp(lf);
  }
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N, N);
  for (int k = 0; k < N; ++k) {
    if (k + 1 < N) A(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
    if (k > 0) A(k, k - 1) = std::sqrt(static_cast<double>(k));
  }
  const Complex lead = u[static_cast<std::size_t>(N)];
  for (int j = 0; j < N; ++j)
    A(N - 1, j) -= std::sqrt(static_cast<double>(N)) * u[static_cast<std::size_t>(j)] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(A, false);
  if (solver.info() != Eigen::Success) return {};
  std::vector<Complex> roots(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

Complex clenshaw_hermite(const std::vector<Complex>& c, double x) {
  // Forward recurrence is stable for the monic Hermite family at moderate x.
  Complex sum = c[0];
  double prev = 1.0, cur = x;
  for (std::size_t k = 1; k < c.size(); ++k) {
    sum += c[k] * cur;
    double next = x * cur - static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  return sum;
}

// n = 1, non-even p: split R at near-real roots and integrate each piece with
// tanh-sinh, which handles the |x - r|^p behaviour at the piece ends.
NormResult real_norm_1d_adaptive(const HermiteExpansion& h, const NormRequest& req) {
  const double p = req.p;
  std::vector<Complex> c = dense_coefficients(h);
  const int N = static_cast<int>(c.size()) - 1;
  if (N == 0) return finish(std::pow(std::abs(c[0]), p), p, 0.0, true, 0, 1);

  std::vector<double> breaks;
  double reach = std::sqrt(p * N);
  for (const Complex& r : hermite_roots(c)) {
    if (std::abs(r.imag()) < 1.0 && std::abs(r.real()) < 60.0) {
      breaks.push_back(r.real());
      reach = std::max(reach, std::abs(r.real()) + 1.0);
    }
  }
  const double R = reach + 10.0;
  breaks.push_back(-R);
  breaks.push_back(R);
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> pts;
  for (double b : breaks)
    if (pts.empty() || b - pts.back() > 1e-10) pts.push_back(b);

  const double log_norm = -0.5 * std::log(2.0 * std::numbers::pi);
  // Two-argument form: Boost then never rounds a node onto an endpoint.
  auto integrand = [&](double x, double) {
    double a = std::abs(clenshaw_hermite(c, x));
    if (a == 0.0) return 0.0;
    return std::exp(p * std::log(a) - 0.5 * x * x + log_norm);
  };
  boost::math::quadrature::tanh_sinh<double> integrator(15);
  double total = 0.0, err_total = 0.0;
  std::size_t levels_total = 0;
  const double rel = std::min(req.tol * p, 1e-6);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double err = 0.0, l1 = 0.0;
    std::size_t levels = 0;
    total += integrator.integrate(integrand, pts[i], pts[i + 1], rel, &err, &l1, &levels);
    err_total += err;
    levels_total = std::max(levels_total, levels);
  }
  double rel_sum = total > 0.0 ? err_total / total : 0.0;
  return finish(total, p, rel_sum, rel_sum <= p * req.tol,
                static_cast<int>(levels_total), pts.size() - 1);
}

// ---- analytic polynomials on C^n ----

struct DenseAnalytic1D {
  std::vector<Complex> c;  // c[k] multiplies z^k
};

Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * z + c[k];
  return v;
}

// n = 1, polar rule in s = |z|^2/2 with the factor |z|^{p dmin} absorbed into
// a generalized Laguerre weight s^beta e^{-s}, beta = p dmin / 2.
double polar_power_sum_1d(const std::vector<DenseAnalytic1D>& comps, int dmin,
                          double p, int m_r, int m_theta) {
  const double beta = 0.5 * p * dmin;
  Rule1D radial = gauss_laguerre_nodes(m_r, beta);
  const double factor = std::exp(beta * std::log(2.0) + std::lgamma(beta + 1.0));
  std::vector<Complex> unit(static_cast<std::size_t>(m_theta));
  for (int k = 0; k < m_theta; ++k)
    unit[static_cast<std::size_t>(k)] =
        std::polar(1.0, 2.0 * std::numbers::pi * k / m_theta);
  double total = 0.0;
  for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
    const double r = std::sqrt(2.0 * radial.nodes[i]);
    double ring = 0.0;
    for (const Complex& u : unit) {
      double abs2 = 0.0;
      for (const auto& g : comps) abs2 += std::norm(horner(g.c, r * u));
      ring += pow_abs(abs2, p);
    }
    total += radial.weights[i] * ring / m_theta;
  }
  return factor * total;
}

// Product of polar rules, one per complex coordinate (no factoring).
double product_polar_power_sum(std::span<const AnalyticPoly> comps, double p,
                               int m_r, int m_theta) {
  const int n = comps[0].dim();
  Rule1D radial = gauss_laguerre_nodes(m_r);
  const std::size_t per = static_cast<std::size_t>(m_r) * static_cast<std::size_t>(m_theta);
  std::vector<Complex> pts(per);
  std::vector<double> wts(per);
  for (int i = 0; i < m_r; ++i) {
    const double r = std::sqrt(2.0 * radial.nodes[static_cast<std::size_t>(i)]);
    for (int k = 0; k < m_theta; ++k) {
      auto at = static_cast<std::size_t>(i * m_theta + k);
      pts[at] = std::polar(r, 2.0 * std::numbers::pi * k / m_theta);
      wts[at] = radial.weights[static_cast<std::size_t>(i)] / m_theta;
    }
  }
  const auto nn = static_cast<std::size_t>(n);
  std::vector<std::size_t> idx(nn, 0);
  std::vector<Complex> z(nn);
  double total = 0.0;
  while (true) {
    double w = 1.0;
    for (std::size_t j = 0; j < nn; ++j) {
      z[j] = pts[idx[j]];
      w *= wts[idx[j]];
    }
    double abs2 = 0.0;
    for (const auto& f : comps) abs2 += std::norm(evaluate(f, z));
    total += w * pow_abs(abs2, p);
    std::size_t j = nn;
    bool done = true;
    while (j > 0) {
      --j;
      if (++idx[j] < per) {
        done = false;
        break;
      }
      idx[j] = 0;
    }
    if (done) break;
  }
  return total;
}

// Tensor Gauss-Hermite over the 2n real coordinates (x_1, y_1, ..., x_n, y_n).
double tensor_analytic_power_sum(std::span<const AnalyticPoly> comps, double p, int m) {
  const int n = comps[0].dim();
  QuadratureRule rule = QuadratureRule::tensor(m, 2 * n);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  double total = 0.0;
  rule.for_each([&](std::span<const double> x, double w) {
    for (std::size_t j = 0; j < z.size(); ++j) z[j] = Complex(x[2 * j], x[2 * j + 1]);
    double abs2 = 0.0;
    for (const auto& f : comps) abs2 += std::norm(evaluate(f, z));
    total += w * pow_abs(abs2, p);
  });
  return total;
}

// Roots of sum_k c[k] z^k from the companion matrix.
std::vector<Complex> monomial_roots(std::vector<Complex> c) {
  while (c.size() > 1 && c.back() == Complex(0.0)) c.pop_back();
  const int N = static_cast<int>(c.size()) - 1;
  if (N < 1) return {};
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N, N);
  for (int k = 1; k < N; ++k) A(k, k - 1) = 1.0;
  for (int k = 0; k < N; ++k) A(k, N - 1) = -c[static_cast<std::size_t>(k)] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(A, false);
  if (solver.info() != Eigen::Success) return {};
  std::vector<Complex> roots(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

// n = 1, non-even p. |f|^p has point singularities at the zeros of f, which
// make both tensor and polar Gauss rules converge only algebraically. The
// radial integral in s = |z|^2/2 is split at the zero radii and the angular
// one at the zero angles; every piece is integrated with tanh-sinh, which
// tolerates algebraic behaviour at piece ends.
// The field is |z|^shift (sum_j |g_j|^2)^{1/2}. Returns the p-th power sum and
// its relative error estimate.
struct PowerSum {
  double sum = 0.0;
  double rel = 0.0;
  std::size_t levels = 0;
  std::size_t evaluations = 0;
};

PowerSum analytic_power_sum_1d(const std::vector<DenseAnalytic1D>& comps, int shift, double p,
                               double rel_tol) {
  int deg = 0;
  std::vector<Complex> zeros;
  for (const auto& g : comps) {
    if (g.c.empty()) continue;
    deg = std::max(deg, static_cast<int>(g.c.size()) - 1);
    for (const Complex& z : monomial_roots(g.c)) zeros.push_back(z);
  }
  auto field_pow = [&](Complex z) {
    double abs2 = 0.0;
    for (const auto& g : comps)
      if (!g.c.empty()) abs2 += std::norm(horner(g.c, z));
    if (shift > 0) abs2 *= std::pow(std::norm(z), shift);
    return pow_abs(abs2, p);
  };
  if (deg == 0 && shift == 0) return {field_pow(0.0), 0.0, 0, 1};

  std::vector<double> radii;
  for (const Complex& z : zeros) radii.push_back(0.5 * std::norm(z));
  const double k = 0.5 * p * (deg + shift);
  double smax = 0.0;
  for (double s : radii) smax = std::max(smax, s);
  const double S = std::max(smax, k) + 60.0 + 10.0 * std::sqrt(k);
  radii.push_back(0.0);
  radii.push_back(S);
  std::sort(radii.begin(), radii.end());
  std::vector<double> pieces;
  for (double s : radii)
    if (s <= S && (pieces.empty() || s - pieces.back() > 1e-12)) pieces.push_back(s);

  boost::math::quadrature::tanh_sinh<double> integrator(12);
  const double two_pi = 2.0 * std::numbers::pi;
  std::size_t evaluations = 0;

  // Mean of |F|^p over the circle of radius r.
  auto ring = [&](double r) {
    std::vector<double> cuts;
    for (const Complex& z : zeros) {
      double dist = std::abs(std::abs(z) - r);
      if (std::abs(z) > 0.0 && dist < std::max(0.5, 0.25 * r)) cuts.push_back(std::arg(z));
    }
    if (cuts.empty()) {
      // Smooth periodic integrand: trapezoid doubling converges geometrically.
      int m = 32;
      double prev = 0.0;
      for (int i = 0; i < m; ++i) prev += field_pow(std::polar(r, two_pi * i / m));
      prev /= m;
      evaluations += static_cast<std::size_t>(m);
      while (m < 8192) {
        double add = 0.0;
        for (int i = 0; i < m; ++i) add += field_pow(std::polar(r, two_pi * (i + 0.5) / m));
        evaluations += static_cast<std::size_t>(m);
        double cur = 0.5 * (prev + add / m);
        m *= 2;
        bool done = std::abs(cur - prev) <= 1e-14 * std::abs(cur);
        prev = cur;
        if (done) break;
      }
      return prev;
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(cuts.front() + two_pi);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i + 1] - cuts[i] <= 1e-14) continue;
      total += integrator.integrate(
          [&](double th, double) {
            ++evaluations;
            return field_pow(std::polar(r, th));
          },
          cuts[i], cuts[i + 1], 1e-12);
    }
    return total / two_pi;
  };

  PowerSum out;
  double err_total = 0.0;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    double err = 0.0, l1 = 0.0;
    std::size_t levels = 0;
    out.sum += integrator.integrate(
        [&](double s, double) { return std::exp(-s) * ring(std::sqrt(2.0 * s)); }, pieces[i],
        pieces[i + 1], rel_tol, &err, &l1, &levels);
    err_total += err;
    out.levels = std::max(out.levels, levels);
  }
  out.rel = out.sum > 0.0 ? err_total / out.sum : 0.0;
  out.evaluations = evaluations;
  return out;
}

NormResult analytic_norm_1d_adaptive(const std::vector<DenseAnalytic1D>& comps, int shift,
                                     const NormRequest& req) {
  PowerSum ps = analytic_power_sum_1d(comps, shift, req.p, std::min(req.p * req.tol, 1e-6));
  return finish(ps.sum, req.p, ps.rel, ps.rel <= req.p * req.tol, static_cast<int>(ps.levels),
                ps.evaluations);
}

}  // namespace

NormResult lp_norm(const HermiteExpansion& h, const NormRequest& req) {
  return lp_norm(std::span<const HermiteExpansion>(&h, 1), req);
}

NormResult lp_norm(std::span<const HermiteExpansion> comps, const NormRequest& req) {
  check_request(req);
  const int n = common_dim(comps);
  if (all_zero(comps)) return finish(0.0, req.p, 0.0, true, 0, 0);
  const int deg = max_degree_of(comps);
  if (is_even_integer(req.p)) {
    int m = nodes_for_degree(req.p * deg);
    require(m <= kMaxNodesPerAxis, ErrorCode::domain,
            "p * degree too large for an exact Gauss-Hermite rule");
    return finish(real_power_sum(comps, m, req.p), req.p, 0.0, true, 0,
                  tensor_count(m, n));
  }
  if (n == 1 && comps.size() == 1) return real_norm_1d_adaptive(comps[0], req);
  int m0 = std::max(8, nodes_for_degree(std::ceil(req.p) * deg) + 2);
  int cap = n == 2 ? 160 : (n == 3 ? 48 : 24);
  return doubling([&](int m) { return real_power_sum(comps, m, req.p); }, m0, cap, req,
                  [n](int m) { return tensor_count(m, n); });
}

NormResult lp_norm(const AnalyticPoly& f, const NormRequest& req, ComplexMethod method) {
  return lp_norm(std::span<const AnalyticPoly>(&f, 1), req, method);
}

NormResult lp_norm(std::span<const AnalyticPoly> comps, const NormRequest& req,
                   ComplexMethod method) {
  check_request(req);
  const int n = common_dim(comps);
  if (all_zero(comps)) return finish(0.0, req.p, 0.0, true, 0, 0);
  const int deg = max_degree_of(comps);
  const bool even = is_even_integer(req.p);

  if (method == ComplexMethod::tensor) {
    if (even) {
      int m = nodes_for_degree(req.p * deg);
      require(m <= kMaxNodesPerAxis, ErrorCode::domain,
              "p * degree too large for an exact tensor rule");
      return finish(tensor_analytic_power_sum(comps, req.p, m), req.p, 0.0, true, 0,
                    tensor_count(m, 2 * n));
    }
    int m0 = std::max(8, nodes_for_degree(std::ceil(req.p) * deg) + 2);
    int cap = n == 1 ? 160 : 24;
    return doubling([&](int m) { return tensor_analytic_power_sum(comps, req.p, m); }, m0,
                    cap, req, [n](int m) { return tensor_count(m, 2 * n); });
  }

  if (n == 1) {
    int dmin = std::numeric_limits<int>::max();
    for (const auto& f : comps)
      if (!f.is_zero()) dmin = std::min(dmin, f.min_degree());
    std::vector<DenseAnalytic1D> dense;
    int deg_g = 0;
    for (const auto& f : comps) {
      DenseAnalytic1D g;
      if (!f.is_zero()) {
        g.c.assign(static_cast<std::size_t>(f.max_degree() - dmin) + 1, 0.0);
        for (const auto& [alpha, v] : f.terms())
          g.c[static_cast<std::size_t>(alpha[0] - dmin)] = v;
        deg_g = std::max(deg_g, f.max_degree() - dmin);
      }
      dense.push_back(std::move(g));
    }
    const double half = 0.5 * req.p * deg_g;
    if (even) {
      int m_r = nodes_for_degree(half);
      int m_t = static_cast<int>(half) + 1;
      require(m_r <= kMaxNodesPerAxis, ErrorCode::domain,
              "p * degree too large for an exact polar rule");
      return finish(polar_power_sum_1d(dense, dmin, req.p, m_r, m_t), req.p, 0.0, true, 0,
                    static_cast<std::size_t>(m_r) * static_cast<std::size_t>(m_t));
    }
    return analytic_norm_1d_adaptive(dense, dmin, req);
  }

  const double half = 0.5 * req.p * deg;
  if (even) {
    int m_r = nodes_for_degree(half);
    int m_t = static_cast<int>(half) + 1;
    return finish(product_polar_power_sum(comps, req.p, m_r, m_t), req.p, 0.0, true, 0,
                  tensor_count(m_r * m_t, n));
  }
  // Radial and angular counts double together (angular = 2 x radial).
  int m0 = std::max(6, nodes_for_degree(std::ceil(half)) + 2);
  int cap = n == 2 ? 24 : 8;
  return doubling(
      [&](int m) { return product_polar_power_sum(comps, req.p, m, 2 * m); }, m0, cap, req,
      [n](int m) { return tensor_count(2 * m * m, n); });
}

Complex inner_product(const HermiteExpansion& f, const HermiteExpansion& g) {
  require(f.dim() == g.dim(), ErrorCode::dimension_mismatch,
          "inner product of expansions in different dimensions");
  if (f.is_zero() || g.is_zero()) return 0.0;
  int m = nodes_for_degree(f.max_degree() + g.max_degree());
  QuadratureRule rule = QuadratureRule::tensor(m, f.dim());
  return integrate(
      [&](std::span<const double> x) { return evaluate(f, x) * std::conj(evaluate(g, x)); },
      rule);
}

Complex inner_product_coefficients(const HermiteExpansion& f, const HermiteExpansion& g) {
  require(f.dim() == g.dim(), ErrorCode::dimension_mismatch,
          "inner product of expansions in different dimensions");
  Complex s = 0.0;
  for (const auto& [alpha, c] : f.terms()) s += c * std::conj(g.coeff(alpha)) * alpha.factorial();
  return s;
}

NodeGrid gaussian_grid(int m, int dim) {
  QuadratureRule rule = QuadratureRule::tensor(m, dim);
  NodeGrid g;
  g.dim = dim;
  g.points.resize(static_cast<Eigen::Index>(rule.size()), dim);
  g.weights.resize(static_cast<Eigen::Index>(rule.size()));
  Eigen::Index i = 0;
  rule.for_each([&](std::span<const double> x, double w) {
    for (int j = 0; j < dim; ++j) g.points(i, j) = x[static_cast<std::size_t>(j)];
    g.weights(i) = w;
    ++i;
  });
  return g;
}

NodeGrid trapezoid_gaussian_grid(double h, double R) {
  require(h > 0.0 && R > 0.0, ErrorCode::invalid_argument, "grid needs h > 0 and R > 0");
  const auto half = static_cast<Eigen::Index>(std::floor(R / h));
  require(half <= 100000, ErrorCode::domain, "trapezoid grid too fine");
  NodeGrid g;
  g.dim = 1;
  g.points.resize(2 * half + 1, 1);
  g.weights.resize(2 * half + 1);
  for (Eigen::Index i = -half; i <= half; ++i) {
    const double x = static_cast<double>(i) * h;
    g.points(i + half, 0) = x;
    g.weights(i + half) = std::exp(-0.5 * x * x);
  }
  g.weights /= g.weights.sum();
  return g;
}

Eigen::MatrixXd hermite_design_matrix(const NodeGrid& grid,
                                      std::span<const MultiIndex> indices, int axis) {
  int deg = 0;
  for (const auto& a : indices) deg = std::max(deg, a.order());
  const auto kk = static_cast<std::size_t>(deg) + 1;
  Eigen::MatrixXd out(grid.size(), static_cast<Eigen::Index>(indices.size()));
  std::vector<std::vector<double>> vals(static_cast<std::size_t>(grid.dim), std::vector<double>(kk));
  std::vector<double> dvals(kk);
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    for (int j = 0; j < grid.dim; ++j)
      hermite_values(grid.points(i, j), vals[static_cast<std::size_t>(j)]);
    if (axis >= 0) hermite_derivative_values(grid.points(i, axis), dvals);
    for (std::size_t k = 0; k < indices.size(); ++k) {
      double prod = 1.0;
      for (int j = 0; j < grid.dim; ++j) {
        auto e = static_cast<std::size_t>(indices[k][static_cast<std::size_t>(j)]);
        prod *= (j == axis) ? dvals[e] : vals[static_cast<std::size_t>(j)][e];
      }
      out(i, static_cast<Eigen::Index>(k)) = prod;
    }
  }
  return out;
}

}  // namespace tailspace
