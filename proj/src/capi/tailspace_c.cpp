#include "tailspace/tailspace.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <new>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hermite.hpp"
#include "jobs.hpp"
#include "poly_io.hpp"
#include "quadrature.hpp"
#include "report.hpp"

using namespace tailspace;

struct ts_poly {
  AnyPoly poly;
};

struct ts_rule {
  int dim = 1;
  std::vector<double> points;
  std::vector<double> weights;
  QuadratureRule rule;
};

struct ts_report {
  Report report;
};

namespace {

thread_local std::string last_error;

ts_status to_status(ErrorCode code) {
  return static_cast<ts_status>(static_cast<int>(code));
}

template <class F>
ts_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return TS_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return TS_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TS_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TS_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return TS_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  require(p != nullptr, ErrorCode::invalid_argument, std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Basis to_basis(ts_basis b) {
  switch (b) {
    case TS_BASIS_HERMITE: return Basis::hermite;
    case TS_BASIS_MONOMIAL: return Basis::monomial;
    case TS_BASIS_ANALYTIC: return Basis::analytic;
  }
  fail(ErrorCode::invalid_argument, "unknown basis");
}

// <z^a, z^b> = delta_ab 2^{|a|} a! under d gamma_{2n}.
Complex analytic_inner(const AnalyticPoly& f, const AnalyticPoly& g) {
  require(f.dim() == g.dim(), ErrorCode::dimension_mismatch,
          "polynomials have different dimensions");
  Complex s = 0.0;
  for (const auto& [alpha, c] : f.terms())
    s += c * std::conj(g.coeff(alpha)) * std::ldexp(alpha.factorial(), alpha.order());
  return s;
}

}  // namespace

extern "C" {

const char* ts_last_error(void) { return last_error.c_str(); }

const char* ts_version(void) { return "0.1.0"; }

void ts_string_free(char* s) { delete[] s; }

ts_status ts_hermite_eval(int k, double x, double* out) {
  return guarded([&] {
    need(out, "out");
    require(k >= 0, ErrorCode::invalid_argument, "degree must be >= 0");
    *out = hermite_eval(k, x);
  });
}

ts_status ts_poly_from_json(const char* json, ts_poly** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new ts_poly{poly_from_json(nlohmann::json::parse(json))};
  });
}

ts_status ts_poly_load(const char* path, ts_poly** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new ts_poly{load_poly(path)};
  });
}

ts_status ts_poly_save(const ts_poly* poly, const char* path) {
  return guarded([&] {
    need(poly, "poly");
    need(path, "path");
    save_poly(poly->poly, path);
  });
}

ts_status ts_poly_to_json(const ts_poly* poly, char** out) {
  return guarded([&] {
    need(poly, "poly");
    need(out, "out");
    *out = copy_string(poly_to_json(poly->poly).dump());
  });
}

ts_status ts_poly_dim(const ts_poly* poly, int* out) {
  return guarded([&] {
    need(poly, "poly");
    need(out, "out");
    *out = dim_of(poly->poly);
  });
}

ts_status ts_poly_basis(const ts_poly* poly, ts_basis* out) {
  return guarded([&] {
    need(poly, "poly");
    need(out, "out");
    *out = static_cast<ts_basis>(static_cast<int>(basis_of(poly->poly)));
  });
}

ts_status ts_poly_degree(const ts_poly* poly, int* out) {
  return guarded([&] {
    need(poly, "poly");
    need(out, "out");
    *out = std::visit([](const auto& p) { return p.max_degree(); }, poly->poly);
  });
}

void ts_poly_free(ts_poly* poly) { delete poly; }

ts_status ts_poly_evaluate(const ts_poly* poly, const double* point, size_t len, double* re,
                           double* im) {
  return guarded([&] {
    need(poly, "poly");
    need(point, "point");
    const auto n = static_cast<std::size_t>(dim_of(poly->poly));
    Complex v;
    if (const auto* f = std::get_if<AnalyticPoly>(&poly->poly)) {
      require(len == 2 * n, ErrorCode::dimension_mismatch,
              "analytic evaluation takes 2n doubles");
      std::vector<Complex> z(n);
      for (std::size_t j = 0; j < n; ++j) z[j] = {point[2 * j], point[2 * j + 1]};
      v = evaluate(*f, std::span<const Complex>(z));
    } else {
      require(len == n, ErrorCode::dimension_mismatch, "point length must equal dim");
      v = std::visit(
          [&](const auto& p) -> Complex {
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>, AnalyticPoly>)
              return 0.0;
            else
              return evaluate(p, std::span<const double>(point, n));
          },
          poly->poly);
    }
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

ts_status ts_poly_convert(const ts_poly* poly, ts_basis target, ts_poly** out) {
  return guarded([&] {
    need(poly, "poly");
    need(out, "out");
    *out = new ts_poly{convert_basis(poly->poly, to_basis(target))};
  });
}

ts_status ts_poly_lp_norm(const ts_poly* poly, double p, double tol, double* value,
                          double* achieved_tol, int* converged) {
  return guarded([&] {
    need(poly, "poly");
    need(value, "value");
    NormRequest req;
    req.p = p;
    req.tol = tol;
    NormResult r;
    if (const auto* f = std::get_if<AnalyticPoly>(&poly->poly))
      r = lp_norm(*f, req);
    else
      r = lp_norm(as_hermite(poly->poly), req);
    *value = r.value;
    if (achieved_tol) *achieved_tol = r.tolerance;
    if (converged) *converged = r.converged ? 1 : 0;
  });
}

ts_status ts_poly_inner_product(const ts_poly* f, const ts_poly* g, double* re, double* im) {
  return guarded([&] {
    need(f, "f");
    need(g, "g");
    const bool fa = basis_of(f->poly) == Basis::analytic;
    const bool ga = basis_of(g->poly) == Basis::analytic;
    require(fa == ga, ErrorCode::invalid_argument,
            "cannot pair an analytic polynomial with a real one");
    Complex v = fa ? analytic_inner(std::get<AnalyticPoly>(f->poly),
                                    std::get<AnalyticPoly>(g->poly))
                   : inner_product(as_hermite(f->poly), as_hermite(g->poly));
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

ts_status ts_rule_build(const char* kind, const int* sizes, size_t n_sizes, int dim,
                        ts_rule** out) {
  return guarded([&] {
    need(kind, "kind");
    need(sizes, "sizes");
    need(out, "out");
    QuadratureRule rule =
        build_rule(parse_rule_kind(kind), std::span<const int>(sizes, n_sizes), dim);
    auto* r = new ts_rule{rule.real_dim(), {}, {}, rule};
    r->points.reserve(rule.size() * static_cast<std::size_t>(r->dim));
    r->weights.reserve(rule.size());
    rule.for_each([&](std::span<const double> x, double w) {
      r->points.insert(r->points.end(), x.begin(), x.end());
      r->weights.push_back(w);
    });
    *out = r;
  });
}

ts_status ts_rule_size(const ts_rule* rule, size_t* out) {
  return guarded([&] {
    need(rule, "rule");
    need(out, "out");
    *out = rule->weights.size();
  });
}

ts_status ts_rule_dim(const ts_rule* rule, int* out) {
  return guarded([&] {
    need(rule, "rule");
    need(out, "out");
    *out = rule->dim;
  });
}

ts_status ts_rule_node(const ts_rule* rule, size_t i, double* point, double* weight) {
  return guarded([&] {
    need(rule, "rule");
    require(i < rule->weights.size(), ErrorCode::invalid_argument, "node index out of range");
    const auto d = static_cast<std::size_t>(rule->dim);
    if (point)
      for (std::size_t j = 0; j < d; ++j) point[j] = rule->points[i * d + j];
    if (weight) *weight = rule->weights[i];
  });
}

ts_status ts_rule_write_csv(const ts_rule* rule, const char* path) {
  return guarded([&] {
    need(rule, "rule");
    need(path, "path");
    std::ofstream os(path, std::ios::binary);
    require(static_cast<bool>(os), ErrorCode::io, std::string("cannot open ") + path);
    write_rule_csv(rule->rule, os);
    require(static_cast<bool>(os), ErrorCode::io, std::string("cannot write ") + path);
  });
}

void ts_rule_free(ts_rule* rule) { delete rule; }

ts_status ts_run(const char* config_json, ts_report** out) {
  return guarded([&] {
    need(config_json, "config_json");
    need(out, "out");
    JobConfig cfg = JobConfig::from_json(nlohmann::json::parse(config_json));
    *out = new ts_report{run_command(cfg)};
  });
}

ts_status ts_report_render(const ts_report* report, const char* format, char** out) {
  return guarded([&] {
    need(report, "report");
    need(format, "format");
    need(out, "out");
    *out = copy_string(report->report.render(parse_report_format(format)));
  });
}

ts_status ts_report_write(const ts_report* report, const char* format, const char* path) {
  return guarded([&] {
    need(report, "report");
    need(format, "format");
    need(path, "path");
    report->report.write(parse_report_format(format), path);
  });
}

int ts_report_passed(const ts_report* report) {
  return report && report->report.passed() ? 1 : 0;
}

ts_status ts_report_failures_json(const ts_report* report, char** out) {
  return guarded([&] {
    need(report, "report");
    need(out, "out");
    *out = copy_string(report->report.failures().dump());
  });
}

void ts_report_free(ts_report* report) { delete report; }

}  // extern "C"
