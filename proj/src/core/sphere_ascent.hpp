#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace tailspace {

struct AscentOptions {
  int starts = 32;
  std::uint64_t seed = 20240611;
  int max_iter = 500;
  /// Stop when the tangential gradient norm drops below this.
  double grad_tol = 1e-8;
  /// Worker threads for the starts; results never depend on it.
  int jobs = 1;
};

/// Returns the objective at u (|u| = 1) and, when grad is non-null, its
/// Euclidean gradient.
using SphereObjective = std::function<double(const Eigen::VectorXd& u, Eigen::VectorXd* grad)>;

struct StartOutcome {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Every accepted step increased the objective.
  bool monotone = true;
};

struct AscentResult {
  Eigen::VectorXd best;
  double value = 0.0;
  int best_start = 0;
  std::vector<StartOutcome> starts;

  int converged_starts() const;
  int total_iterations() const;
  bool monotone() const;
};

/// Multi-start projected gradient ascent on the unit sphere of R^dim. Start k
/// is initial_points[k] when given, otherwise a Gaussian draw from a stream
/// seeded by (seed, k). Steps use a Barzilai-Borwein length with Armijo
/// backtracking and renormalization. The best start wins; ties go to the
/// lower start index.
AscentResult maximize_on_sphere(int dim, const SphereObjective& objective,
                                const AscentOptions& options,
                                const std::vector<Eigen::VectorXd>& initial_points = {});

/// A set of sample points with weights (a quadrature grid or the uniform cube
/// measure) and real linear maps from coefficients to sample values.
///
/// Coefficient vectors are real of length K (real_only) or 2K holding real
/// parts then imaginary parts. A "field" is a list of K-column matrices; its
/// pointwise length is (sum_j |M_j c|^2)^{1/2}.
struct LpField {
  std::vector<Eigen::MatrixXd> maps;
};

class LpRatio {
 public:
  /// ratio(c) = scale * ||num c||_p / ||den c||_p on the weighted samples.
  LpRatio(Eigen::VectorXd weights, LpField num, LpField den, double p, double scale,
          bool real_only);

  int coefficient_count() const { return static_cast<int>(num_.maps.front().cols()); }
  int variable_count() const { return real_only_ ? coefficient_count() : 2 * coefficient_count(); }
  bool real_only() const { return real_only_; }

  double value(const Eigen::VectorXd& u, Eigen::VectorXd* grad) const;

  /// sum_i w_i |field(c)_i|^p and its gradient with respect to u.
  double power_sum(const LpField& field, const Eigen::VectorXd& u, Eigen::VectorXd* grad) const;

  const LpField& numerator() const { return num_; }
  const LpField& denominator() const { return den_; }

  /// Complex coefficients from the packed real vector.
  Eigen::VectorXcd unpack(const Eigen::VectorXd& u) const;

 private:
  Eigen::VectorXd weights_;
  LpField num_;
  LpField den_;
  double p_;
  double scale_;
  bool real_only_;
};

}  // namespace tailspace
