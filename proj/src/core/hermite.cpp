#include "hermite.hpp"

#include <cmath>

#include "quadrature.hpp"

namespace tailspace {

double hermite_eval(int k, double x) {
  require(k >= 0, ErrorCode::invalid_argument, "Hermite degree must be >= 0");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int j = 1; j < k; ++j) {
    double next = x * cur - j * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void hermite_values(double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = x;
  for (std::size_t k = 1; k + 1 < out.size(); ++k)
    out[k + 1] = x * out[k] - static_cast<double>(k) * out[k - 1];
}

void hermite_derivative_values(double x, std::span<double> out) {
  if (out.empty()) return;
  std::vector<double> h(out.size());
  hermite_values(x, h);
  out[0] = 0.0;
  for (std::size_t k = 1; k < out.size(); ++k)
    out[k] = static_cast<double>(k) * h[k - 1];
}

namespace {

using Table = std::vector<std::vector<double>>;

// Both tables have integer entries; building them in 128-bit integers keeps
// every entry correctly rounded once converted to double.
struct ConversionTables {
  Table hermite_to_monomial;
  Table monomial_to_hermite;

  ConversionTables() {
    const int n = kMaxConversionDegree + 1;
    std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n, 0));
    a[0][0] = 1;
    if (n > 1) a[1][1] = 1;
    for (int k = 1; k + 1 < n; ++k)
      for (int j = 0; j <= k + 1; ++j) {
        __int128 v = -static_cast<__int128>(k) * a[k - 1][j];
        if (j > 0) v += a[k][j - 1];
        a[k + 1][j] = v;
      }

    std::vector<std::vector<__int128>> b(n, std::vector<__int128>(n, 0));
    b[0][0] = 1;
    for (int k = 0; k + 1 < n; ++k)
      for (int j = 0; j <= k; ++j) {
        if (b[k][j] == 0) continue;
        b[k + 1][j + 1] += b[k][j];
        if (j > 0) b[k + 1][j - 1] += static_cast<__int128>(j) * b[k][j];
      }

    hermite_to_monomial.assign(n, std::vector<double>());
    monomial_to_hermite.assign(n, std::vector<double>());
    for (int k = 0; k < n; ++k) {
      hermite_to_monomial[k].resize(k + 1);
      monomial_to_hermite[k].resize(k + 1);
      for (int j = 0; j <= k; ++j) {
        hermite_to_monomial[k][j] = static_cast<double>(a[k][j]);
        monomial_to_hermite[k][j] = static_cast<double>(b[k][j]);
      }
    }
  }
};

const ConversionTables& tables() {
  static const ConversionTables t;
  return t;
}

void check_degree(int degree) {
  require(degree <= kMaxConversionDegree, ErrorCode::domain,
          "basis conversion supports degree <= " +
              std::to_string(kMaxConversionDegree) + ", got " +
              std::to_string(degree));
}

// Tensor-product substitution: each coordinate power alpha_j is replaced by
// the corresponding row of the 1-D table.
template <Basis To, Basis From>
Expansion<To> convert(const Expansion<From>& in, const Table& table) {
  check_degree(in.max_degree());
  const int n = in.dim();
  typename Expansion<To>::Terms out;
  std::vector<std::pair<std::vector<int>, Complex>> partial, next;
  for (const auto& [alpha, c] : in.terms()) {
    partial.assign(1, {std::vector<int>(static_cast<std::size_t>(n), 0), c});
    for (int j = 0; j < n; ++j) {
      const auto& row = table[static_cast<std::size_t>(alpha[j])];
      next.clear();
      for (const auto& [e, v] : partial)
        for (std::size_t k = 0; k < row.size(); ++k) {
          if (row[k] == 0.0) continue;
          auto e2 = e;
          e2[static_cast<std::size_t>(j)] = static_cast<int>(k);
          next.emplace_back(std::move(e2), v * row[k]);
        }
      partial.swap(next);
    }
    for (auto& [e, v] : partial) out[MultiIndex(e)] += v;
  }
  return Expansion<To>(n, std::move(out));
}

}  // namespace

const std::vector<std::vector<double>>& hermite_to_monomial_table(int degree) {
  check_degree(degree);
  return tables().hermite_to_monomial;
}

const std::vector<std::vector<double>>& monomial_to_hermite_table(int degree) {
  check_degree(degree);
  return tables().monomial_to_hermite;
}

HermiteExpansion to_hermite_basis(const MonomialExpansion& m) {
  return convert<Basis::hermite>(m, tables().monomial_to_hermite);
}

MonomialExpansion to_monomial_basis(const HermiteExpansion& h) {
  return convert<Basis::monomial>(h, tables().hermite_to_monomial);
}

namespace {

void check_point(int dim, std::size_t size) {
  require(static_cast<std::size_t>(dim) == size, ErrorCode::dimension_mismatch,
          "point has " + std::to_string(size) + " coordinates, expected " +
              std::to_string(dim));
}

}  // namespace

Complex evaluate(const HermiteExpansion& h, std::span<const double> point) {
  check_point(h.dim(), point.size());
  const auto deg = static_cast<std::size_t>(h.max_degree()) + 1;
  std::vector<std::vector<double>> values(point.size(), std::vector<double>(deg));
  for (std::size_t j = 0; j < point.size(); ++j) hermite_values(point[j], values[j]);
  Complex sum = 0.0;
  for (const auto& [alpha, c] : h.terms()) {
    double prod = 1.0;
    for (std::size_t j = 0; j < point.size(); ++j)
      prod *= values[j][static_cast<std::size_t>(alpha[j])];
    sum += c * prod;
  }
  return sum;
}

Complex evaluate(const MonomialExpansion& m, std::span<const double> point) {
  check_point(m.dim(), point.size());
  Complex sum = 0.0;
  for (const auto& [alpha, c] : m.terms()) {
    double prod = 1.0;
    for (std::size_t j = 0; j < point.size(); ++j)
      prod *= std::pow(point[j], alpha[j]);
    sum += c * prod;
  }
  return sum;
}

Complex evaluate(const AnalyticPoly& f, std::span<const Complex> point) {
  check_point(f.dim(), point.size());
  const auto deg = static_cast<std::size_t>(f.max_degree()) + 1;
  std::vector<std::vector<Complex>> powers(point.size(), std::vector<Complex>(deg));
  for (std::size_t j = 0; j < point.size(); ++j) {
    powers[j][0] = 1.0;
    for (std::size_t k = 1; k < deg; ++k) powers[j][k] = powers[j][k - 1] * point[j];
  }
  Complex sum = 0.0;
  for (const auto& [alpha, c] : f.terms()) {
    Complex prod = c;
    for (std::size_t j = 0; j < point.size(); ++j)
      prod *= powers[j][static_cast<std::size_t>(alpha[j])];
    sum += prod;
  }
  return sum;
}

Complex hermite_via_integral(const MultiIndex& alpha, std::span<const double> x,
                             const QuadratureRule& rule) {
  check_point(alpha.dim(), x.size());
  require(rule.real_dim() == alpha.dim() && !rule.is_polar(),
          ErrorCode::dimension_mismatch,
          "integral definition needs a real Gaussian rule of dimension " +
              std::to_string(alpha.dim()));
  require(rule.exact_degree() >= alpha.order(), ErrorCode::domain,
          "quadrature rule is under-resolved: exact to degree " +
              std::to_string(rule.exact_degree()) + " < |alpha| = " +
              std::to_string(alpha.order()));
  Complex sum = 0.0;
  rule.for_each([&](std::span<const double> y, double w) {
    Complex prod = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j)
      prod *= std::pow(Complex(x[j], y[j]), alpha[j]);
    sum += w * prod;
  });
  return sum;
}

}  // namespace tailspace
