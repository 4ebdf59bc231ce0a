#include "sphere_ascent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "errors.hpp"

namespace tailspace {

int AscentResult::converged_starts() const {
  return static_cast<int>(std::count_if(starts.begin(), starts.end(),
                                        [](const StartOutcome& s) { return s.converged; }));
}

int AscentResult::total_iterations() const {
  int total = 0;
  for (const auto& s : starts) total += s.iterations;
  return total;
}

bool AscentResult::monotone() const {
  return std::all_of(starts.begin(), starts.end(),
                     [](const StartOutcome& s) { return s.monotone; });
}

namespace {

struct StartRun {
  Eigen::VectorXd u;
  StartOutcome outcome;
};

Eigen::VectorXd tangent(const Eigen::VectorXd& g, const Eigen::VectorXd& u) {
  return g - g.dot(u) * u;
}

StartRun ascend(Eigen::VectorXd u, const SphereObjective& objective,
                const AscentOptions& opt) {
  StartRun run;
  u.normalize();
  Eigen::VectorXd g(u.size());
  double f = objective(u, &g);
  Eigen::VectorXd t = tangent(g, u);
  double step = 1.0 / std::max(t.norm(), 1e-300);
  step = std::min(step, 1.0);
  int it = 0;
  bool converged = t.norm() <= opt.grad_tol;
  while (!converged && it < opt.max_iter) {
    ++it;
    const double t2 = t.squaredNorm();
    Eigen::VectorXd u_new, g_new(u.size());
    double f_new = f;
    double eta = step;
    bool accepted = false;
    for (int back = 0; back < 60; ++back) {
      u_new = (u + eta * t).normalized();
      f_new = objective(u_new, nullptr);
      if (std::isfinite(f_new) && f_new >= f + 1e-4 * eta * t2) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) {
      // No ascent along the tangent within roundoff: stationary to working
      // precision.
      converged = t.norm() <= std::sqrt(opt.grad_tol);
      break;
    }
    if (f_new < f) run.outcome.monotone = false;
    objective(u_new, &g_new);
    Eigen::VectorXd t_new = tangent(g_new, u_new);
    // Barzilai-Borwein length for the next step.
    Eigen::VectorXd s = u_new - u;
    Eigen::VectorXd y = t_new - t;
    double sy = s.dot(y);
    step = sy < 0.0 ? s.squaredNorm() / -sy : 2.0 * eta;
    step = std::clamp(step, 1e-12, 1e6);
    u = std::move(u_new);
    f = f_new;
    t = std::move(t_new);
    converged = t.norm() <= opt.grad_tol;
  }
  run.u = std::move(u);
  run.outcome.value = f;
  run.outcome.iterations = it;
  run.outcome.converged = converged;
  return run;
}

Eigen::VectorXd random_start(int dim, std::uint64_t seed, int k) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(k)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  Eigen::VectorXd u(dim);
  for (int i = 0; i < dim; ++i) u(i) = normal(rng);
  return u;
}

}  // namespace

AscentResult maximize_on_sphere(int dim, const SphereObjective& objective,
                                const AscentOptions& options,
                                const std::vector<Eigen::VectorXd>& initial_points) {
  require(dim >= 1, ErrorCode::invalid_argument, "empty search space");
  require(options.starts >= 1, ErrorCode::invalid_argument, "need at least one start");
  require(options.max_iter >= 0, ErrorCode::invalid_argument, "max_iter must be >= 0");
  const int n_starts = std::max<int>(options.starts, static_cast<int>(initial_points.size()));
  std::vector<StartRun> runs(static_cast<std::size_t>(n_starts));
  auto work = [&](int k) {
    Eigen::VectorXd u0 = k < static_cast<int>(initial_points.size())
                             ? initial_points[static_cast<std::size_t>(k)]
                             : random_start(dim, options.seed, k);
    require(u0.size() == dim && u0.norm() > 0.0, ErrorCode::invalid_argument,
            "bad initial point");
    runs[static_cast<std::size_t>(k)] = ascend(u0, objective, options);
  };
  const int workers = std::clamp(options.jobs, 1, n_starts);
  if (workers == 1) {
    for (int k = 0; k < n_starts; ++k) work(k);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (int k = w; k < n_starts; k += workers) work(k);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  AscentResult result;
  for (int k = 0; k < n_starts; ++k) {
    const auto& r = runs[static_cast<std::size_t>(k)];
    result.starts.push_back(r.outcome);
    if (k == 0 || r.outcome.value > result.value) {
      result.value = r.outcome.value;
      result.best = r.u;
      result.best_start = k;
    }
  }
  return result;
}

LpRatio::LpRatio(Eigen::VectorXd weights, LpField num, LpField den, double p, double scale,
                 bool real_only)
    : weights_(std::move(weights)),
      num_(std::move(num)),
      den_(std::move(den)),
      p_(p),
      scale_(scale),
      real_only_(real_only) {
  require(!num_.maps.empty() && !den_.maps.empty(), ErrorCode::invalid_argument,
          "ratio needs non-empty fields");
  require(p_ > 0.0, ErrorCode::invalid_argument, "p must be positive");
  const auto k = num_.maps.front().cols();
  for (const auto* field : {&num_, &den_})
    for (const auto& m : field->maps)
      require(m.cols() == k && m.rows() == weights_.size(), ErrorCode::dimension_mismatch,
              "field maps have inconsistent shapes");
}

Eigen::VectorXcd LpRatio::unpack(const Eigen::VectorXd& u) const {
  const int k = coefficient_count();
  Eigen::VectorXcd c(k);
  for (int i = 0; i < k; ++i) c(i) = {u(i), real_only_ ? 0.0 : u(k + i)};
  return c;
}

double LpRatio::power_sum(const LpField& field, const Eigen::VectorXd& u,
                          Eigen::VectorXd* grad) const {
  const int k = coefficient_count();
  const Eigen::Index m = weights_.size();
  std::vector<Eigen::VectorXd> re, im;
  Eigen::VectorXd abs2 = Eigen::VectorXd::Zero(m);
  for (const auto& map : field.maps) {
    re.push_back(map * u.head(k));
    im.push_back(real_only_ ? Eigen::VectorXd::Zero(m) : Eigen::VectorXd(map * u.tail(k)));
    abs2 += re.back().cwiseAbs2() + im.back().cwiseAbs2();
  }
  double sum = 0.0;
  Eigen::VectorXd dens(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double a = abs2(i);
    const double pw = a > 0.0 ? std::pow(a, 0.5 * p_) : 0.0;
    sum += weights_(i) * pw;
    // d/d(component) of |v|^p is p |v|^{p-2} component.
    dens(i) = a > 0.0 ? weights_(i) * p_ * pw / a : 0.0;
  }
  if (grad) {
    grad->setZero(variable_count());
    for (std::size_t j = 0; j < field.maps.size(); ++j) {
      grad->head(k) += field.maps[j].transpose() * dens.cwiseProduct(re[j]);
      if (!real_only_) grad->tail(k) += field.maps[j].transpose() * dens.cwiseProduct(im[j]);
    }
  }
  return sum;
}

double LpRatio::value(const Eigen::VectorXd& u, Eigen::VectorXd* grad) const {
  Eigen::VectorXd gn, gd;
  const double sn = power_sum(num_, u, grad ? &gn : nullptr);
  const double sd = power_sum(den_, u, grad ? &gd : nullptr);
  if (sd <= 0.0) {
    // Outside the domain of the ratio; the line search rejects NaN.
    if (grad) grad->setZero(variable_count());
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double r = scale_ * std::pow(sn / sd, 1.0 / p_);
  if (grad) {
    // log r = log scale + (log sn - log sd) / p.
    *grad = (r / p_) * ((sn > 0.0 ? Eigen::VectorXd(gn / sn) : Eigen::VectorXd(gn * 0.0)) -
                        gd / sd);
  }
  return r;
}

}  // namespace tailspace
