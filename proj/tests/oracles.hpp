#pragma once

#include <cmath>
#include <vector>

#include "hermite.hpp"
#include "quadrature.hpp"

namespace tailspace::oracle {

// min over real a of (E |g - sum_{k<=d} a_k H_k|^p)^{1/p} for real g on R and
// even p, by exhaustive coefficient grid followed by compass search. The
// Gauss rule is exact for the integrand, so only the search is approximate.
inline double brute_force_lp_error(const HermiteExpansion& g, int d, int p) {
  const int deg = std::max(g.max_degree(), d);
  const Rule1D rule = gauss_hermite_nodes(gauss_nodes_for_degree(p * deg));
  const std::size_t m = rule.nodes.size();
  std::vector<double> target(m);
  std::vector<std::vector<double>> basis(d + 1, std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const double x[] = {rule.nodes[i]};
    target[i] = evaluate(g, x).real();
    for (int k = 0; k <= d; ++k) basis[k][i] = hermite_eval(k, rule.nodes[i]);
  }
  auto objective = [&](const std::vector<double>& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double r = target[i];
      for (int k = 0; k <= d; ++k) r -= a[k] * basis[k][i];
      s += rule.weights[i] * std::pow(std::abs(r), p);
    }
    return s;
  };

  // Coarse grid around the least-squares coefficients.
  std::vector<double> center(d + 1, 0.0);
  for (int k = 0; k <= d; ++k) center[k] = g.coeff(MultiIndex{k}).real();
  double span = 1.0;
  for (const auto& [alpha, c] : g.terms())
    span = std::max(span, 2.0 * std::abs(c) * std::sqrt(alpha.factorial()));
  const int steps = d >= 2 ? 40 : 200;
  std::vector<double> best = center;
  double best_val = objective(best);
  std::vector<int> idx(d + 1, 0);
  while (true) {
    std::vector<double> a(d + 1);
    for (int k = 0; k <= d; ++k) a[k] = center[k] - span + 2.0 * span * idx[k] / steps;
    const double v = objective(a);
    if (v < best_val) {
      best_val = v;
      best = a;
    }
    int k = 0;
    while (k <= d && ++idx[k] > steps) idx[k++] = 0;
    if (k > d) break;
  }

  double h = 2.0 * span / steps;
  while (h > 1e-12) {
    bool moved = false;
    for (int k = 0; k <= d; ++k)
      for (double sgn : {1.0, -1.0}) {
        std::vector<double> a = best;
        a[k] += sgn * h;
        const double v = objective(a);
        if (v < best_val) {
          best_val = v;
          best = a;
          moved = true;
        }
      }
    if (!moved) h *= 0.5;
  }
  return std::pow(best_val, 1.0 / p);
}

}  // namespace tailspace::oracle
