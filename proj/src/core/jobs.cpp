#include "jobs.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <thread>

#include "analytic.hpp"
#include "approx.hpp"
#include "extremal.hpp"
#include "hamming.hpp"
#include "hermite.hpp"
#include "operators.hpp"
#include "poly_io.hpp"
#include "quadrature.hpp"

namespace tailspace {

namespace {

const std::set<std::string> kKeys = {
    "command", "sub", "n", "p", "q", "d", "D", "t", "rho", "k", "nodes", "tol", "starts",
    "seed", "max_iter", "count", "jobs", "real_only", "rule", "method", "format", "out", "poly"};

template <class T>
void read(const nlohmann::json& doc, const char* key, T& out) {
  if (!doc.contains(key) || doc.at(key).is_null()) return;
  try {
    out = doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::invalid_argument, std::string("config key '") + key + "' has the wrong type");
  }
}

template <class T>
void read(const nlohmann::json& doc, const char* key, std::optional<T>& out) {
  if (!doc.contains(key) || doc.at(key).is_null()) return;
  T v{};
  read(doc, key, v);
  out = v;
}

std::uint64_t parse_seed(const std::string& s, const char* origin) {
  try {
    // stoull would accept a sign or leading blanks and wrap negatives.
    require(!s.empty() && std::isdigit(static_cast<unsigned char>(s[0])),
            ErrorCode::invalid_argument, "");
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used, 0);
    require(used == s.size(), ErrorCode::invalid_argument, "");
    return v;
  } catch (...) {
    fail(ErrorCode::invalid_argument, std::string(origin) + " is not an unsigned integer: " + s);
  }
}

}  // namespace

JobConfig JobConfig::from_json(const nlohmann::json& doc) {
  require(doc.is_object(), ErrorCode::invalid_argument, "config must be a JSON object");
  for (const auto& [key, value] : doc.items())
    require(kKeys.contains(key), ErrorCode::invalid_argument, "unknown config key '" + key + "'");
  JobConfig c;
  read(doc, "command", c.command);
  read(doc, "sub", c.sub);
  read(doc, "n", c.n);
  read(doc, "p", c.p);
  read(doc, "q", c.q);
  read(doc, "d", c.d);
  read(doc, "D", c.D);
  read(doc, "t", c.t);
  read(doc, "rho", c.rho);
  read(doc, "k", c.k);
  read(doc, "nodes", c.nodes);
  read(doc, "tol", c.tol);
  read(doc, "starts", c.starts);
  read(doc, "max_iter", c.max_iter);
  read(doc, "count", c.count);
  read(doc, "jobs", c.jobs);
  read(doc, "real_only", c.real_only);
  read(doc, "rule", c.rule);
  read(doc, "method", c.method);
  read(doc, "format", c.format);
  read(doc, "out", c.out);
  read(doc, "poly", c.poly);
  if (doc.contains("seed") && !doc.at("seed").is_null()) {
    const auto& s = doc.at("seed");
    if (s.is_string())
      c.seed = parse_seed(s.get<std::string>(), "seed");
    else
      read(doc, "seed", c.seed);
  } else if (const char* env = std::getenv("TAILSPACE_SEED"); env && *env) {
    c.seed = parse_seed(env, "TAILSPACE_SEED");
  }

  auto bad = [](const std::string& msg) { fail(ErrorCode::invalid_argument, msg); };
  if (c.command.empty()) bad("missing command");
  if (c.n < 1) bad("n must be >= 1");
  if (!std::isfinite(c.p) || c.p <= 0.0) bad("p must be finite and positive");
  if (c.q && (!std::isfinite(*c.q) || *c.q <= 0.0)) bad("q must be finite and positive");
  if (c.d && *c.d < 0) bad("d must be >= 0");
  if (c.D && *c.D < 0) bad("D must be >= 0");
  if (c.t && (!std::isfinite(*c.t) || *c.t < 0.0)) bad("t must be >= 0");
  if (c.rho && !(*c.rho > 0.0 && *c.rho <= 1.0)) bad("rho must lie in (0, 1]");
  if (c.k < 0 || c.k > kMaxConversionDegree) bad("k must lie in 0..40");
  if (c.nodes < 0 || c.nodes > kMaxNodesPerAxis) bad("nodes must lie in 0..200");
  if (!(c.tol > 0.0)) bad("tol must be positive");
  if (c.starts < 1) bad("starts must be >= 1");
  if (c.max_iter < 0) bad("max_iter must be >= 0");
  if (c.count < 1) bad("count must be >= 1");
  if (c.jobs < 1) bad("jobs must be >= 1");
  if (c.method != "polar" && c.method != "tensor") bad("method must be polar or tensor");
  parse_report_format(c.format);
  parse_rule_kind(c.rule);
  return c;
}

nlohmann::ordered_json JobConfig::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["sub"] = sub;
  j["n"] = n;
  j["p"] = p;
  if (q) j["q"] = *q;
  if (d) j["d"] = *d;
  if (D) j["D"] = *D;
  if (t) j["t"] = *t;
  if (rho) j["rho"] = *rho;
  j["k"] = k;
  j["nodes"] = nodes;
  j["tol"] = tol;
  j["starts"] = starts;
  j["seed"] = seed;
  j["max_iter"] = max_iter;
  j["count"] = count;
  j["jobs"] = jobs;
  j["real_only"] = real_only;
  j["rule"] = rule;
  j["method"] = method;
  j["format"] = format;
  j["out"] = out;
  j["poly"] = poly;
  return j;
}

namespace {

using Row = std::vector<Cell>;

Cell num(double v) { return v; }
Cell integer(long long v) { return static_cast<std::int64_t>(v); }

// Runs body(i) for i in [0, count) on up to `jobs` threads; results are
// stored by index so the output order never depends on scheduling.
template <class T>
std::vector<T> parallel_map(int count, int jobs, const std::function<T(int)>& body) {
  std::vector<T> out(static_cast<std::size_t>(count));
  const int workers = std::clamp(jobs, 1, std::max(count, 1));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = body(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < count; i += workers) out[static_cast<std::size_t>(i)] = body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

ComplexMethod method_of(const JobConfig& c) {
  return c.method == "tensor" ? ComplexMethod::tensor : ComplexMethod::polar;
}

// ---- hermite ---------------------------------------------------------------

Report run_hermite(const JobConfig& c) {
  if (c.sub.empty() || c.sub == "table") {
    std::vector<std::string> cols{"k"};
    for (int j = 0; j <= c.k; ++j) cols.push_back("c" + std::to_string(j));
    Report rep(cols);
    const auto& table = hermite_to_monomial_table(c.k);
    for (int k = 0; k <= c.k; ++k) {
      Row row{integer(k)};
      for (int j = 0; j <= c.k; ++j)
        row.push_back(num(j <= k ? table[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] : 0.0));
      rep.add_row(std::move(row));
    }
    return rep;
  }
  if (c.sub == "rule") {
    RuleKind kind = parse_rule_kind(c.rule);
    const int m = c.nodes > 0 ? c.nodes : 8;
    std::vector<int> sizes{m};
    if (kind == RuleKind::polar_complex) sizes.push_back(m);
    QuadratureRule rule = build_rule(kind, sizes, c.n);
    std::vector<std::string> cols;
    for (int j = 1; j <= rule.real_dim(); ++j) cols.push_back("x" + std::to_string(j));
    cols.push_back("weight");
    Report rep(cols);
    rule.for_each([&](std::span<const double> x, double w) {
      Row row;
      for (double v : x) row.push_back(num(v));
      row.push_back(num(w));
      rep.add_row(std::move(row));
    });
    return rep;
  }
  fail(ErrorCode::invalid_argument, "hermite subcommand must be table or rule");
}

// ---- norm ------------------------------------------------------------------

Report run_norm(const JobConfig& c) {
  require(!c.poly.empty(), ErrorCode::invalid_argument, "norm needs --poly FILE");
  AnyPoly poly = load_poly(c.poly);
  NormRequest req;
  req.p = c.p;
  req.tol = c.tol;
  NormResult r;
  std::string method = "gauss_hermite";
  if (basis_of(poly) == Basis::analytic) {
    r = lp_norm(std::get<AnalyticPoly>(poly), req, method_of(c));
    method = c.method;
  } else {
    r = lp_norm(as_hermite(poly), req);
  }
  Report rep({"basis", "dim", "p", "value", "tolerance", "converged", "refinements", "nodes",
              "method"});
  rep.add_row({basis_name(basis_of(poly)), integer(dim_of(poly)), num(c.p), num(r.value),
               num(r.tolerance), r.converged, integer(r.refinements),
               integer(static_cast<long long>(r.nodes)), method});
  if (!r.converged) rep.add_failure(0, "norm did not reach the requested tolerance");
  return rep;
}

// ---- verify analytic -------------------------------------------------------

struct SuiteRow {
  Row row;
  bool pass = true;
  std::string reason;
};

std::vector<SuiteRow> analytic_rows(int index, const AnalyticPoly& f, const JobConfig& c) {
  const double p = c.p;
  const double q = c.q.value_or(std::max(2.0 * p, 1.0));
  const double rho = c.rho.value_or(std::sqrt(std::min(p / q, 1.0)));
  std::vector<double> ts = c.t ? std::vector<double>{*c.t} : std::vector<double>{0.1, 0.5, 1.0};
  const int dmin = f.min_degree();
  const int dmax = f.max_degree();
  InequalityParams base;
  base.p = p;
  base.q = q;
  base.rho = rho;
  base.tol = c.tol;
  base.method = method_of(c);

  struct Item {
    InequalityKind kind;
    InequalityParams prm;
  };
  std::vector<Item> items;
  auto with = [&](InequalityKind kind, int d, double t) {
    InequalityParams prm = base;
    prm.d = d;
    prm.t = t;
    items.push_back({kind, prm});
  };
  for (double t : ts) with(InequalityKind::heat_smoothing, dmin, t);
  with(InequalityKind::spectral_lower, dmin, 0.0);
  with(InequalityKind::grad_lower, dmin, 0.0);
  with(InequalityKind::bernstein, dmax, 0.0);
  with(InequalityKind::interpolation, dmax, 0.0);
  if (p < q) with(InequalityKind::moment, dmax, 0.0);
  if (p < q && p >= 1.0) with(InequalityKind::janson, dmax, 0.0);
  for (double t : ts) with(InequalityKind::reverse_heat, dmax, t);
  if (dmin >= 1) with(InequalityKind::gradient_ratio, dmin, 0.0);

  std::vector<SuiteRow> out;
  for (const auto& it : items) {
    SuiteRow sr;
    try {
      InequalityReport r = check_inequality(it.kind, f, it.prm);
      sr.row = {integer(index), inequality_kind_name(r.kind), integer(r.n), integer(dmin),
                integer(dmax), num(r.params.p), num(r.params.q), integer(r.params.d),
                num(r.params.t), num(r.params.rho), num(r.lhs), num(r.rhs), num(r.slack),
                num(r.lhs_tolerance), num(r.rhs_tolerance), num(r.allowance), r.converged,
                r.asserted, r.zero_input, r.pass};
      sr.pass = r.pass;
      if (!r.pass)
        sr.reason = r.converged ? "inequality violated beyond the quadrature allowance"
                                : "quadrature did not converge";
    } catch (const Error& e) {
      sr.row = {integer(index), inequality_kind_name(it.kind), integer(f.dim()), integer(dmin),
                integer(dmax), num(it.prm.p), num(it.prm.q), integer(it.prm.d), num(it.prm.t),
                num(it.prm.rho), Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, false, true,
                f.is_zero(), false};
      sr.pass = false;
      sr.reason = e.what();
    }
    out.push_back(std::move(sr));
  }
  return out;
}

Report run_verify_analytic(const JobConfig& c) {
  require(c.n <= 2, ErrorCode::invalid_argument, "verify analytic supports n <= 2");
  const int deg = c.d.value_or(4);
  require(deg >= 1 && deg <= 12, ErrorCode::invalid_argument,
          "verify analytic needs 1 <= d <= 12");
  std::mt19937_64 rng(c.seed);
  std::vector<AnalyticPoly> polys;
  for (int i = 0; i < c.count; ++i) {
    std::uniform_int_distribution<int> top(1, deg);
    const int hi = top(rng);
    std::uniform_int_distribution<int> bottom(0, hi);
    const int lo = bottom(rng);
    polys.push_back(random_analytic(c.n, lo, hi, rng));
  }
  auto blocks = parallel_map<std::vector<SuiteRow>>(
      c.count, c.jobs, [&](int i) { return analytic_rows(i, polys[static_cast<std::size_t>(i)], c); });
  Report rep({"poly", "kind", "n", "min_degree", "max_degree", "p", "q", "d", "t", "rho", "lhs",
              "rhs", "slack", "lhs_tol", "rhs_tol", "allowance", "converged", "asserted",
              "zero_input", "pass"});
  for (auto& block : blocks)
    for (auto& sr : block) {
      long idx = static_cast<long>(rep.rows().size());
      rep.add_row(std::move(sr.row));
      if (!sr.pass) rep.add_failure(idx, sr.reason);
    }
  return rep;
}

// ---- verify gauss / cube ---------------------------------------------------

struct CheckTable {
  Report rep{{"check", "value", "reference", "error", "tolerance", "pass"}};

  void add(const std::string& name, double value, double reference, double error,
           double tolerance) {
    const bool ok = error <= tolerance;
    long idx = static_cast<long>(rep.rows().size());
    rep.add_row({name, value, reference, error, tolerance, ok});
    if (!ok) rep.add_failure(idx, name + " exceeds tolerance");
  }
};

HermiteExpansion random_hermite(int n, int deg, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  HermiteExpansion::Terms t;
  for (const auto& alpha : indices_between(n, 0, deg))
    t[alpha] = Complex(normal(rng), normal(rng)) / std::sqrt(alpha.factorial());
  return HermiteExpansion(n, std::move(t));
}

Report run_verify_gauss(const JobConfig& c) {
  CheckTable tab;
  const int K = c.k > 4 ? c.k : 25;
  std::mt19937_64 rng(c.seed);

  // Orthogonality on a rule exact for degree 2K.
  Rule1D gh = gauss_hermite_nodes(K + 1);
  double orth = 0.0, norms = 0.0;
  std::vector<double> h(static_cast<std::size_t>(K) + 1);
  std::vector<std::vector<double>> gram(h.size(), std::vector<double>(h.size(), 0.0));
  for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
    hermite_values(gh.nodes[i], h);
    for (std::size_t a = 0; a < h.size(); ++a)
      for (std::size_t b = 0; b < h.size(); ++b) gram[a][b] += gh.weights[i] * h[a] * h[b];
  }
  for (std::size_t a = 0; a < h.size(); ++a)
    for (std::size_t b = 0; b < h.size(); ++b) {
      const double scale = std::sqrt(factorial(static_cast<int>(a)) * factorial(static_cast<int>(b)));
      if (a == b)
        norms = std::max(norms, std::abs(gram[a][b] / scale - 1.0));
      else
        orth = std::max(orth, std::abs(gram[a][b]) / scale);
    }
  tab.add("orthogonality_max_normalized", orth, 0.0, orth, 1e-10);
  tab.add("norms_relative_to_factorial", norms, 0.0, norms, 1e-10);

  // Integral definition against the recurrence.
  double integ = 0.0;
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (int n = 1; n <= 2; ++n) {
    QuadratureRule rule = QuadratureRule::tensor(8, n);
    for (const auto& alpha : indices_between(n, 0, 15)) {
      std::vector<double> x(static_cast<std::size_t>(n));
      for (auto& v : x) v = unif(rng);
      Complex a = hermite_via_integral(alpha, x, rule);
      Complex b = evaluate(HermiteExpansion::single(alpha), x);
      integ = std::max(integ, std::abs(a - b) / std::max(1.0, std::abs(b)));
    }
  }
  tab.add("integral_vs_recurrence", integ, 0.0, integ, 1e-10);

  // Eigenrelations are exact on coefficients.
  double eig = 0.0;
  for (int n = 1; n <= 2; ++n)
    for (const auto& alpha : indices_between(n, 0, 20)) {
      auto hh = spectral_apply(HermiteExpansion::single(alpha), SpectralMultiplier::power(1.0));
      auto zz = spectral_apply(AnalyticPoly::single(alpha), SpectralMultiplier::power(1.0));
      eig = std::max({eig, std::abs(hh.coeff(alpha) - double(alpha.order())),
                      std::abs(zz.coeff(alpha) - double(alpha.order()))});
    }
  tab.add("eigenrelation_exact", eig, 0.0, eig, 0.0);

  // ||grad g||_2 = ||L^{1/2} g||_2.
  double pars = 0.0;
  NormRequest two;
  for (int i = 0; i < c.count; ++i) {
    const int n = 1 + i % 2;
    HermiteExpansion g = random_hermite(n, 1 + i % 8, rng);
    auto gr = gradient(g);
    double a = lp_norm(std::span<const HermiteExpansion>(gr), two).value;
    double b = lp_norm(spectral_apply(g, SpectralMultiplier::power(0.5)), two).value;
    pars = std::max(pars, std::abs(a - b) / b);
  }
  tab.add("gradient_vs_sqrt_L_p2", pars, 0.0, pars, 1e-9);

  // ||z^d||_4 / ||z^d||_2 = binom(2d, d)^{1/4} <= 2^{d/2}.
  for (int d = 1; d <= 6; ++d) {
    NormRequest four;
    four.p = 4.0;
    AnalyticPoly z = AnalyticPoly::single(MultiIndex{d});
    const double ratio = lp_norm(z, four).value / lp_norm(z, two).value;
    const double ref = std::pow(factorial(2 * d) / (factorial(d) * factorial(d)), 0.25);
    tab.add("moment_closed_form_d" + std::to_string(d), ratio, ref,
            std::abs(ratio - ref) / ref, 1e-8);
    tab.add("moment_bound_d" + std::to_string(d), ratio, std::pow(2.0, 0.5 * d),
            std::max(0.0, ratio - std::pow(2.0, 0.5 * d)), 0.0);
  }
  return std::move(tab.rep);
}

Report run_verify_cube(const JobConfig& c) {
  CheckTable tab;
  const int nmax = c.d ? std::max(*c.d, 1) : 6;
  require(nmax <= kMaxCubeDim, ErrorCode::invalid_argument, "cube dimension must be <= 12");
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<int> small(-4, 4);
  double lap = 0.0, pars = 0.0;
  for (int i = 0; i < c.count; ++i) {
    const int n = 1 + i % std::min(nmax, 8);
    std::vector<Complex> v(std::size_t{1} << n);
    for (auto& x : v) x = Complex(small(rng), small(rng));
    auto f = BooleanFunction::from_values(v);
    auto a = cube_laplacian(f).values();
    auto b = cube_laplacian_flip(f).values();
    for (std::size_t j = 0; j < a.size(); ++j) lap = std::max(lap, std::abs(a[j] - b[j]));
    double l2 = std::pow(cube_lp_norm(f, 2.0), 2.0), coef = 0.0;
    for (const auto& w : f.walsh()) coef += std::norm(w);
    pars = std::max(pars, std::abs(l2 - coef) / std::max(coef, 1.0));
  }
  tab.add("laplacian_spectral_vs_flip", lap, 0.0, lap, 0.0);
  tab.add("parseval", pars, 0.0, pars, 1e-12);
  CubeExtremalOptions opt;
  opt.ascent.starts = std::min(c.starts, 4);
  opt.ascent.seed = c.seed;
  opt.ascent.max_iter = c.max_iter;
  for (int n = 1; n <= nmax; ++n)
    for (int d = 1; d <= n; ++d) {
      CubeEstimate e = cube_extremal(n, d, 2.0, opt);
      tab.add("cube_extremal_p2_n" + std::to_string(n) + "_d" + std::to_string(d), e.value,
              d, std::abs(e.value - d), 1e-9);
    }
  return std::move(tab.rep);
}

// ---- approx ----------------------------------------------------------------

Report run_approx(const JobConfig& c) {
  require(!c.poly.empty(), ErrorCode::invalid_argument, "approx needs --poly FILE");
  HermiteExpansion g = as_hermite(load_poly(c.poly));
  const int dmax = c.d.value_or(std::max(g.max_degree() - 1, 1));
  require(dmax >= 1, ErrorCode::invalid_argument, "approx needs d >= 1");
  ApproxOptions opt;
  opt.max_iter = c.max_iter;
  opt.nodes = c.nodes;
  opt.norm_tol = std::min(c.tol, 1e-10);
  Report rep({"d", "p", "error", "quotient", "error_tolerance", "grid_error", "iterations",
              "converged", "certificate"});
  auto results = parallel_map<JacksonResult>(dmax, c.jobs, [&](int i) {
    return jackson_quotient(g, i + 1, c.p, opt);
  });
  for (int i = 0; i < dmax; ++i) {
    const auto& j = results[static_cast<std::size_t>(i)];
    long idx = static_cast<long>(rep.rows().size());
    rep.add_row({integer(i + 1), num(c.p), num(j.approx.error), num(j.quotient),
                 num(j.approx.error_tolerance), num(j.approx.grid_error),
                 integer(j.approx.iterations), j.approx.converged,
                 num(j.approx.gradient_norm)});
    if (!j.approx.converged) rep.add_failure(idx, "best approximation did not converge");
  }
  return rep;
}

// ---- constants -------------------------------------------------------------

ExtremalOptions extremal_options(const JobConfig& c) {
  ExtremalOptions opt;
  opt.ascent.starts = c.starts;
  opt.ascent.seed = c.seed;
  opt.ascent.max_iter = c.max_iter;
  opt.ascent.jobs = c.jobs;
  opt.real_only = c.real_only;
  opt.nodes = c.nodes;
  opt.norm_tol = std::min(c.tol, 1e-10);
  return opt;
}

const std::vector<std::string> kConstantColumns = {
    "kind", "n", "p", "d", "D", "value", "value_tolerance", "grid_value", "seed", "starts",
    "converged_fraction", "best_converged", "iterations", "label", "extremizer"};

void add_estimate(Report& rep, const ConstantEstimate& e) {
  long idx = static_cast<long>(rep.rows().size());
  rep.add_row({constant_kind_name(e.kind), integer(e.n), num(e.p), integer(e.d), integer(e.D),
               num(e.value), num(e.value_tolerance), num(e.grid_value),
               std::to_string(e.seed), integer(e.starts), num(e.converged_fraction),
               e.best_converged, integer(e.iterations), e.label(),
               poly_to_json(AnyPoly(e.extremizer)).dump()});
  if (!e.best_converged)
    rep.add_failure(idx, constant_kind_name(e.kind) + ": best start did not converge");
}

Report run_constant(const JobConfig& c) {
  const int d = c.d.value_or(2);
  const int D = c.D.value_or(d + 3);
  std::vector<ConstantKind> kinds;
  if (c.sub == "freud") kinds = {ConstantKind::freud_F};
  else if (c.sub == "jackson") kinds = {ConstantKind::jackson_J};
  else if (c.sub == "riesz") kinds = {ConstantKind::riesz_lower_m, ConstantKind::riesz_upper_M};
  else if (c.sub == "corollary") kinds = {ConstantKind::corollary_S, ConstantKind::corollary_T};
  else fail(ErrorCode::invalid_argument, "constant needs freud, jackson, riesz or corollary");
  ExtremalOptions opt = extremal_options(c);
  Report rep(kConstantColumns);
  for (auto kind : kinds) add_estimate(rep, estimate_constant(kind, c.n, c.p, d, D, opt));
  return rep;
}

Report run_duality(const JobConfig& c) {
  const int dmax = c.d.value_or(4);
  const int D = c.D.value_or(8);
  ExtremalOptions opt = extremal_options(c);
  auto rows = duality_table(c.n, c.p, 1, dmax, D, opt);
  Report rep({"d", "J_hat", "F_hat", "ratio", "n", "p", "p_dual", "D", "J_converged",
              "F_converged", "label"});
  for (const auto& r : rows) {
    long idx = static_cast<long>(rep.rows().size());
    rep.add_row({integer(r.d), num(r.J.value), num(r.F.value), num(r.ratio), integer(c.n),
                 num(c.p), num(r.F.p), integer(D), r.J.best_converged, r.F.best_converged,
                 r.J.label()});
    if (!r.J.best_converged || !r.F.best_converged)
      rep.add_failure(idx, "duality row d=" + std::to_string(r.d) + " did not converge");
  }
  return rep;
}

Report run_cube(const JobConfig& c) {
  const int dmax = c.d.value_or(std::min(c.n, 3));
  require(dmax >= 1 && dmax <= c.n, ErrorCode::invalid_argument, "cube needs 1 <= d <= n");
  require(c.p >= 1.0, ErrorCode::invalid_argument, "cube needs p >= 1");
  CubeExtremalOptions opt;
  opt.ascent.starts = c.starts;
  opt.ascent.seed = c.seed;
  opt.ascent.max_iter = c.max_iter;
  opt.ascent.jobs = c.jobs;
  opt.real_only = c.real_only;
  Report rep({"n", "d", "p", "value", "seed", "starts", "converged_fraction", "best_converged",
              "iterations"});
  for (int d = 1; d <= dmax; ++d) {
    CubeEstimate e = cube_extremal(c.n, d, c.p, opt);
    long idx = static_cast<long>(rep.rows().size());
    rep.add_row({integer(c.n), integer(d), num(c.p), num(e.value), std::to_string(e.seed),
                 integer(e.starts), num(e.converged_fraction), e.best_converged,
                 integer(e.iterations)});
    if (!e.best_converged) rep.add_failure(idx, "cube_extremal did not converge");
  }
  return rep;
}

}  // namespace

Report run_command(const JobConfig& c) {
  if (c.command == "hermite") return run_hermite(c);
  if (c.command == "norm") return run_norm(c);
  if (c.command == "verify") {
    if (c.sub == "analytic") return run_verify_analytic(c);
    if (c.sub == "gauss") return run_verify_gauss(c);
    if (c.sub == "cube") return run_verify_cube(c);
    fail(ErrorCode::invalid_argument, "verify needs analytic, gauss or cube");
  }
  if (c.command == "approx") return run_approx(c);
  if (c.command == "constant") return run_constant(c);
  if (c.command == "duality") return run_duality(c);
  if (c.command == "cube") return run_cube(c);
  fail(ErrorCode::invalid_argument, "unknown command '" + c.command + "'");
}

}  // namespace tailspace
