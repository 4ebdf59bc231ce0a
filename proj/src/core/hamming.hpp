#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "expansion.hpp"
#include "sphere_ascent.hpp"

namespace tailspace {

inline constexpr int kMaxCubeDim = 12;

/// In-place Walsh-Hadamard butterfly: out[S] = sum_x v[x] (-1)^{|S & x|}.
/// The length must be a power of two.
void walsh_hadamard(std::vector<Complex>& v);

/// f : {-1,1}^n -> C. Point index i encodes x_j = 1 - 2 * bit_j(i); subset
/// mask S encodes S = {j : bit_j(S) = 1} (coordinates numbered from 0).
class BooleanFunction {
 public:
  static BooleanFunction from_values(std::vector<Complex> values);
  static BooleanFunction from_walsh(std::vector<Complex> coefficients);
  /// chi_S = prod_{j in S} x_j.
  static BooleanFunction character(int n, std::uint32_t mask, Complex c = 1.0);

  int n() const { return n_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<Complex>& values() const { return values_; }
  const std::vector<Complex>& walsh() const { return walsh_; }
  Complex value_at(std::span<const int> x) const;

 private:
  BooleanFunction(int n, std::vector<Complex> values, std::vector<Complex> walsh)
      : n_(n), values_(std::move(values)), walsh_(std::move(walsh)) {}

  int n_;
  std::vector<Complex> values_;
  std::vector<Complex> walsh_;
};

/// a_S -> |S| a_S.
BooleanFunction cube_laplacian(const BooleanFunction& f);

/// sum_j D_j f with D_j f(x) = (f(x) - f(x with x_j flipped)) / 2.
BooleanFunction cube_laplacian_flip(const BooleanFunction& f);

/// D_j f by the flip definition.
BooleanFunction cube_derivative(const BooleanFunction& f, int j);

/// (2^{-n} sum_x |f(x)|^p)^{1/p}.
double cube_lp_norm(const BooleanFunction& f, double p);

struct CubeExtremalOptions {
  AscentOptions ascent;
  bool real_only = false;
  bool witness_start = true;
};

struct CubeEstimate {
  int n = 0;
  int d = 0;
  double p = 2.0;
  /// Smallest ||Delta f||_p / ||f||_p found over the tail span; an upper bound
  /// for the best constant.
  double value = 0.0;
  BooleanFunction extremizer = BooleanFunction::character(1, 0);
  int starts = 0;
  int iterations = 0;
  std::uint64_t seed = 0;
  double converged_fraction = 0.0;
  bool best_converged = false;
  bool monotone = true;
};

CubeEstimate cube_extremal(int n, int d, double p, const CubeExtremalOptions& opts = {});

}  // namespace tailspace
