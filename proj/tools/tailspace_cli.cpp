// tailspace: batch front end over the C API.

#include <cstdio>
#include <cstring>
#include <functional>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tailspace/tailspace.h"

namespace {

constexpr int kExitFailures = 1;
constexpr int kExitUsage = 2;

using json = nlohmann::json;

struct Flag {
  std::string key;
  CLI::Option* option;
  std::function<void(json&)> store;
};

template <class T>
void add_flag(CLI::App& app, std::vector<Flag>& flags, const std::string& name,
              const std::string& key, T& target, const std::string& help) {
  CLI::Option* opt = app.add_option(name, target, help);
  flags.push_back({key, opt, [&target, key](json& doc) { doc[key] = target; }});
}

std::string take(char* s) {
  std::string out = s ? s : "";
  ts_string_free(s);
  return out;
}

void print_failures(const std::string& list) { std::cerr << list << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian tail spaces and Hermite/OU calculus lab"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON job file; flags override its keys")
      ->check(CLI::ExistingFile);

  std::vector<Flag> flags;
  int n = 1, k = 4, nodes = 0, starts = 32, max_iter = 500, count = 20, jobs = 1, d = 0, D = 0;
  double p = 2.0, q = 0.0, t = 0.0, rho = 1.0, tol = 1e-8;
  std::string seed, format, out, poly, method, rule;
  bool real_only = false;
  add_flag(app, flags, "--n", "n", n, "dimension");
  add_flag(app, flags, "--p", "p", p, "exponent");
  add_flag(app, flags, "--q", "q", q, "second exponent");
  add_flag(app, flags, "--d", "d", d, "tail or degree level");
  add_flag(app, flags, "--D", "D", D, "search degree");
  add_flag(app, flags, "--t", "t", t, "heat time");
  add_flag(app, flags, "--rho", "rho", rho, "dilation factor");
  add_flag(app, flags, "--nodes", "nodes", nodes, "Gauss nodes per axis (0 = automatic)");
  add_flag(app, flags, "--tol", "tol", tol, "relative quadrature tolerance");
  add_flag(app, flags, "--starts", "starts", starts, "optimizer starts");
  add_flag(app, flags, "--seed", "seed", seed, "random seed");
  add_flag(app, flags, "--max-iter", "max_iter", max_iter, "optimizer iterations per start");
  add_flag(app, flags, "--format", "format", format, "csv or json");
  add_flag(app, flags, "--out", "out", out, "output path (default stdout)");
  add_flag(app, flags, "--jobs", "jobs", jobs, "worker threads");
  add_flag(app, flags, "--poly", "poly", poly, "polynomial file");
  add_flag(app, flags, "--k", "k", k, "largest Hermite degree or rule size");
  add_flag(app, flags, "--count", "count", count, "random polynomials per suite");
  add_flag(app, flags, "--method", "method", method, "polar or tensor");
  add_flag(app, flags, "--rule", "rule", rule, "quadrature rule kind");
  CLI::Option* real_flag = app.add_flag("--real-only", real_only, "real coefficients only");

  std::string sub;
  auto with_sub = [&](const std::string& name, const std::string& help,
                      std::vector<std::string> choices) {
    CLI::App* s = app.add_subcommand(name, help);
    if (!choices.empty())
      s->add_option("what", sub, "variant")->required()->check(CLI::IsMember(choices));
    return s;
  };
  with_sub("hermite", "Hermite tables and quadrature rules", {"table", "rule"});
  with_sub("norm", "L^p norm of a polynomial file", {});
  with_sub("verify", "theorem-backed check suites", {"analytic", "gauss", "cube"});
  with_sub("approx", "best L^p approximation from low degrees", {});
  with_sub("constant", "restricted extremal constant estimate",
           {"freud", "jackson", "riesz", "corollary"});
  with_sub("duality", "Jackson/Freud duality table", {});
  with_sub("cube", "hypercube extremal estimate", {});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  json doc = json::object();
  if (!config_path.empty()) {
    std::ifstream is(config_path);
    try {
      doc = json::parse(is);
    } catch (const json::exception& e) {
      std::cerr << "error: " << config_path << ": " << e.what() << "\n";
      return kExitUsage;
    }
    if (!doc.is_object()) {
      std::cerr << "error: " << config_path << ": config must be a JSON object\n";
      return kExitUsage;
    }
  }
  doc["command"] = app.get_subcommands().front()->get_name();
  if (!sub.empty()) doc["sub"] = sub;
  for (const auto& f : flags)
    if (f.option->count() > 0) f.store(doc);
  if (real_flag->count() > 0) doc["real_only"] = real_only;
  const std::string out_path = doc.value("out", std::string());
  const std::string fmt = doc.value("format", std::string("csv"));

  ts_report* report = nullptr;
  ts_status st = ts_run(doc.dump().c_str(), &report);
  if (st == TS_INVALID_ARGUMENT || st == TS_PARSE) {
    std::cerr << "error: " << ts_last_error() << "\n";
    return kExitUsage;
  }
  if (st != TS_OK) {
    nlohmann::ordered_json failure =
        nlohmann::ordered_json::array({{{"row", -1}, {"reason", ts_last_error()}}});
    print_failures(failure.dump());
    return kExitFailures;
  }

  int code = 0;
  if (out_path.empty()) {
    char* text = nullptr;
    st = ts_report_render(report, fmt.c_str(), &text);
    if (st == TS_OK) std::fwrite(text, 1, std::strlen(text), stdout);
    ts_string_free(text);
  } else {
    st = ts_report_write(report, fmt.c_str(), out_path.c_str());
  }
  if (st != TS_OK) {
    std::cerr << "error: " << ts_last_error() << "\n";
    code = kExitFailures;
  }
  if (!ts_report_passed(report)) {
    char* list = nullptr;
    if (ts_report_failures_json(report, &list) == TS_OK) print_failures(take(list));
    code = kExitFailures;
  }
  ts_report_free(report);
  return code;
}
