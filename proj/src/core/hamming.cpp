#include "hamming.hpp"

#include <bit>
#include <cmath>

namespace tailspace {

void walsh_hadamard(std::vector<Complex>& v) {
  const std::size_t N = v.size();
  require(N >= 1 && std::has_single_bit(N), ErrorCode::invalid_argument,
          "Walsh transform needs a power-of-two length");
  for (std::size_t h = 1; h < N; h <<= 1)
    for (std::size_t i = 0; i < N; i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        const Complex a = v[j], b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
}

namespace {

int cube_dim(std::size_t size) {
  require(size >= 1 && std::has_single_bit(size), ErrorCode::invalid_argument,
          "a Boolean function needs 2^n values");
  const int n = std::countr_zero(size);
  require(n >= 1 && n <= kMaxCubeDim, ErrorCode::invalid_argument,
          "hypercube dimension must be in 1..12");
  return n;
}

}  // namespace

BooleanFunction BooleanFunction::from_values(std::vector<Complex> values) {
  const int n = cube_dim(values.size());
  std::vector<Complex> w = values;
  walsh_hadamard(w);
  const double scale = std::ldexp(1.0, -n);
  for (auto& c : w) c *= scale;
  return BooleanFunction(n, std::move(values), std::move(w));
}

BooleanFunction BooleanFunction::from_walsh(std::vector<Complex> coefficients) {
  const int n = cube_dim(coefficients.size());
  std::vector<Complex> v = coefficients;
  walsh_hadamard(v);
  return BooleanFunction(n, std::move(v), std::move(coefficients));
}

BooleanFunction BooleanFunction::character(int n, std::uint32_t mask, Complex c) {
  require(n >= 1 && n <= kMaxCubeDim, ErrorCode::invalid_argument,
          "hypercube dimension must be in 1..12");
  require(mask < (1u << n), ErrorCode::invalid_argument, "subset outside {1..n}");
  std::vector<Complex> w(std::size_t{1} << n, 0.0);
  w[mask] = c;
  return from_walsh(std::move(w));
}

Complex BooleanFunction::value_at(std::span<const int> x) const {
  require(static_cast<int>(x.size()) == n_, ErrorCode::dimension_mismatch,
          "point has the wrong number of coordinates");
  std::size_t i = 0;
  for (int j = 0; j < n_; ++j) {
    require(x[static_cast<std::size_t>(j)] == 1 || x[static_cast<std::size_t>(j)] == -1,
            ErrorCode::invalid_argument, "cube coordinates are +1 or -1");
    if (x[static_cast<std::size_t>(j)] == -1) i |= std::size_t{1} << j;
  }
  return values_[i];
}

BooleanFunction cube_laplacian(const BooleanFunction& f) {
  std::vector<Complex> w = f.walsh();
  for (std::size_t s = 0; s < w.size(); ++s) w[s] *= std::popcount(s);
  return BooleanFunction::from_walsh(std::move(w));
}

BooleanFunction cube_derivative(const BooleanFunction& f, int j) {
  require(j >= 0 && j < f.n(), ErrorCode::invalid_argument, "coordinate out of range");
  const auto& v = f.values();
  std::vector<Complex> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = 0.5 * (v[i] - v[i ^ (std::size_t{1} << j)]);
  return BooleanFunction::from_values(std::move(out));
}

BooleanFunction cube_laplacian_flip(const BooleanFunction& f) {
  const auto& v = f.values();
  std::vector<Complex> out(v.size(), 0.0);
  for (int j = 0; j < f.n(); ++j)
    for (std::size_t i = 0; i < v.size(); ++i)
      out[i] += 0.5 * (v[i] - v[i ^ (std::size_t{1} << j)]);
  return BooleanFunction::from_values(std::move(out));
}

double cube_lp_norm(const BooleanFunction& f, double p) {
  require(p > 0.0 && std::isfinite(p), ErrorCode::invalid_argument,
          "p must be finite and positive");
  double s = 0.0;
  for (const auto& c : f.values()) {
    const double a = std::abs(c);
    if (a > 0.0) s += std::pow(a, p);
  }
  return std::pow(s / static_cast<double>(f.size()), 1.0 / p);
}

CubeEstimate cube_extremal(int n, int d, double p, const CubeExtremalOptions& opts) {
  require(n >= 1 && n <= kMaxCubeDim, ErrorCode::invalid_argument,
          "hypercube dimension must be in 1..12");
  require(d >= 0, ErrorCode::invalid_argument, "tail level must be >= 0");
  require(d <= n, ErrorCode::domain, "empty tail span: d > n");
  require(p >= 1.0 && std::isfinite(p), ErrorCode::invalid_argument,
          "cube_extremal needs finite p >= 1");
  const std::size_t N = std::size_t{1} << n;
  std::vector<std::uint32_t> masks;
  for (std::uint32_t s = 0; s < N; ++s)
    if (std::popcount(s) >= d) masks.push_back(s);
  const int K = static_cast<int>(masks.size());
  const bool real_only = opts.real_only;
  const int dim = real_only ? K : 2 * K;

  auto walsh_of = [&](const Eigen::VectorXd& u, bool laplace) {
    std::vector<Complex> w(N, 0.0);
    for (int k = 0; k < K; ++k) {
      Complex c(u(k), real_only ? 0.0 : u(K + k));
      w[masks[static_cast<std::size_t>(k)]] = laplace ? c * double(std::popcount(masks[static_cast<std::size_t>(k)])) : c;
    }
    return w;
  };
  // sum_x |F(x)|^p / N with F = inverse Walsh of w, and the gradient with
  // respect to the packed coefficients (times the eigenvalue when laplace).
  auto power_sum = [&](const Eigen::VectorXd& u, bool laplace, Eigen::VectorXd* grad) {
    std::vector<Complex> v = walsh_of(u, laplace);
    walsh_hadamard(v);
    double s = 0.0;
    std::vector<Complex> dens(N);
    for (std::size_t i = 0; i < N; ++i) {
      const double a = std::abs(v[i]);
      const double pw = a > 0.0 ? std::pow(a, p) : 0.0;
      s += pw;
      dens[i] = a > 0.0 ? (p * pw / (a * a) / static_cast<double>(N)) * v[i] : 0.0;
    }
    if (grad) {
      // Gradient of sum |v|^p in Re/Im of a_S is chi_S applied to the
      // density, i.e. another Walsh transform.
      walsh_hadamard(dens);
      grad->resize(dim);
      for (int k = 0; k < K; ++k) {
        const auto mask = masks[static_cast<std::size_t>(k)];
        const double lam = laplace ? std::popcount(mask) : 1.0;
        (*grad)(k) = lam * dens[mask].real();
        if (!real_only) (*grad)(K + k) = lam * dens[mask].imag();
      }
    }
    return s / static_cast<double>(N);
  };
  // Maximizes -||Delta f||_p / ||f||_p.
  SphereObjective objective = [&](const Eigen::VectorXd& u, Eigen::VectorXd* g) {
    Eigen::VectorXd gn, gd;
    const double sn = power_sum(u, true, g ? &gn : nullptr);
    const double sd = power_sum(u, false, g ? &gd : nullptr);
    if (sd <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double r = std::pow(sn / sd, 1.0 / p);
    if (g) *g = -(r / p) * ((sn > 0.0 ? Eigen::VectorXd(gn / sn) : Eigen::VectorXd(gn * 0.0)) - gd / sd);
    return -r;
  };

  std::vector<Eigen::VectorXd> initial;
  if (opts.witness_start) {
    // x_1 ... x_d, an eigenfunction on the lowest admissible level.
    Eigen::VectorXd u0 = Eigen::VectorXd::Zero(dim);
    const std::uint32_t w = (1u << d) - 1u;
    for (int k = 0; k < K; ++k)
      if (masks[static_cast<std::size_t>(k)] == w) u0(k) = 1.0;
    initial.push_back(u0);
  }
  AscentResult best = maximize_on_sphere(dim, objective, opts.ascent, initial);

  CubeEstimate est;
  est.n = n;
  est.d = d;
  est.p = p;
  est.extremizer = BooleanFunction::from_walsh(walsh_of(best.best, false));
  est.value = cube_lp_norm(cube_laplacian(est.extremizer), p) / cube_lp_norm(est.extremizer, p);
  est.starts = static_cast<int>(best.starts.size());
  est.iterations = best.total_iterations();
  est.seed = opts.ascent.seed;
  est.converged_fraction = static_cast<double>(best.converged_starts()) / est.starts;
  est.best_converged = best.starts[static_cast<std::size_t>(best.best_start)].converged;
  est.monotone = best.monotone();
  return est;
}

}  // namespace tailspace
