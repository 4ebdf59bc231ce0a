#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <string>
#include <utility>

#include "errors.hpp"
#include "multi_index.hpp"

namespace tailspace {

using Complex = std::complex<double>;

/// Which family of basis functions the coefficients multiply.
///   hermite:  H_alpha(x) on R^n (probabilists', monic)
///   monomial: x^alpha on R^n
///   analytic: z^alpha on C^n
enum class Basis { hermite, monomial, analytic };

std::string basis_name(Basis b);
Basis parse_basis(const std::string& name);

/// Sparse polynomial: a finite map alpha -> c_alpha over one of the bases.
/// Zero coefficients are never stored. Immutable after construction.
template <Basis B>
class Expansion {
 public:
  using Terms = std::map<MultiIndex, Complex>;

  explicit Expansion(int dim) : dim_(dim) {
    require(dim >= 1, ErrorCode::invalid_argument, "dimension must be >= 1");
  }

  Expansion(int dim, Terms terms) : Expansion(dim) {
    for (auto& [alpha, c] : terms) {
      require(alpha.dim() == dim, ErrorCode::dimension_mismatch,
              "multi-index " + alpha.to_string() + " does not match dim " +
                  std::to_string(dim));
      if (c != Complex(0.0)) terms_.emplace(alpha, c);
    }
    refresh_degrees();
  }

  static Expansion single(const MultiIndex& alpha, Complex c = 1.0) {
    Terms t;
    t.emplace(alpha, c);
    return Expansion(alpha.dim(), std::move(t));
  }

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Minimum and maximum |alpha| over stored terms; both 0 for the zero
  /// polynomial.
  int min_degree() const { return min_degree_; }
  int max_degree() const { return max_degree_; }

  /// Membership in P^{>=d} and P^{<=d}. The zero polynomial belongs to both.
  bool in_tail(int d) const { return is_zero() || min_degree_ >= d; }
  bool in_cap(int d) const { return is_zero() || max_degree_ <= d; }

  Complex coeff(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? Complex(0.0) : it->second;
  }

  /// Applies f(alpha, c) -> c' to every stored coefficient.
  template <class F>
  Expansion transform(F&& f) const {
    Terms out;
    for (const auto& [alpha, c] : terms_) out.emplace(alpha, f(alpha, c));
    return Expansion(dim_, std::move(out));
  }

  /// Keeps the terms for which keep(alpha) is true.
  template <class Pred>
  Expansion filter(Pred&& keep) const {
    Terms out;
    for (const auto& [alpha, c] : terms_)
      if (keep(alpha)) out.emplace(alpha, c);
    return Expansion(dim_, std::move(out));
  }

  Expansion operator+(const Expansion& other) const {
    check_dim(other);
    Terms out = terms_;
    for (const auto& [alpha, c] : other.terms_) out[alpha] += c;
    return Expansion(dim_, std::move(out));
  }

  Expansion operator-(const Expansion& other) const {
    return *this + other * Complex(-1.0);
  }

  Expansion operator*(Complex s) const {
    return transform([s](const MultiIndex&, Complex c) { return s * c; });
  }

  friend Expansion operator*(Complex s, const Expansion& e) { return e * s; }

  friend bool operator==(const Expansion& a, const Expansion& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  /// Largest |c_alpha|.
  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [alpha, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

 private:
  void check_dim(const Expansion& other) const {
    require(other.dim_ == dim_, ErrorCode::dimension_mismatch,
            "expansions have different dimensions");
  }

  void refresh_degrees() {
    if (terms_.empty()) {
      min_degree_ = max_degree_ = 0;
      return;
    }
    // Graded ordering keeps the extremes at the ends of the map.
    min_degree_ = terms_.begin()->first.order();
    max_degree_ = terms_.rbegin()->first.order();
  }

  int dim_;
  Terms terms_;
  int min_degree_ = 0;
  int max_degree_ = 0;
};

using HermiteExpansion = Expansion<Basis::hermite>;
using MonomialExpansion = Expansion<Basis::monomial>;
using AnalyticPoly = Expansion<Basis::analytic>;

}  // namespace tailspace
