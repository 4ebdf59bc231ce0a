#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "report.hpp"

namespace tailspace {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// One batch job. Built from a JSON object whose keys mirror the CLI flags;
/// unset optional values take command-specific defaults.
struct JobConfig {
  std::string command;
  std::string sub;
  int n = 1;
  double p = 2.0;
  std::optional<double> q;
  std::optional<int> d;
  std::optional<int> D;
  std::optional<double> t;
  std::optional<double> rho;
  int k = 4;
  int nodes = 0;
  double tol = 1e-8;
  int starts = 32;
  std::uint64_t seed = kDefaultSeed;
  int max_iter = 500;
  int count = 20;
  int jobs = 1;
  bool real_only = false;
  std::string rule = "gauss_hermite";
  std::string method = "polar";
  std::string format = "csv";
  std::string out;
  std::string poly;

  /// Validates every key and range. Without a "seed" key the seed comes from
  /// TAILSPACE_SEED when set, else kDefaultSeed.
  static JobConfig from_json(const nlohmann::json& doc);
  nlohmann::ordered_json to_json() const;
};

/// Runs the job. Configuration errors throw Error; failed checks and
/// non-converged solves land in Report::failures().
Report run_command(const JobConfig& config);

}  // namespace tailspace
