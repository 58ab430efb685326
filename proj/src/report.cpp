#include "qfock/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>

#include "qfock/bounds.hpp"
#include "qfock/calculus.hpp"
#include "qfock/dual.hpp"
#include "qfock/partitions.hpp"
#include "qfock/qnumbers.hpp"
#include "qfock/univar.hpp"

namespace qfock {

using nlohmann::json;

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"commutator", "dual-agree", "wick-agree", "derivative-agree",
                                              "duality",    "gibbs",      "bounds",     "univar",
                                              "all"};
  return names;
}

const std::vector<std::string>& export_names() {
  static const std::vector<std::string> names{"xi", "gibbs", "partitions", "hermite", "fisher"};
  return names;
}

namespace {

struct Resolved {
  DeformationMatrix formal_or_exact;
  bool symbolic = false;
  /// Numeric deformations used by the numeric suites, with labels.
  std::vector<std::pair<std::string, DeformationMatrix>> numeric;
};

Rational parse_q(const std::string& text, const std::string& mode) {
  try {
    if (mode == "float") {
      std::size_t used = 0;
      double v = std::stod(text, &used);
      if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
      return Rational(v);
    }
    return parse_rational(text);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse q value '" + text + "'");
  }
}

Resolved resolve(const RunConfig& c) {
  if (c.mode != "exact" && c.mode != "symbolic" && c.mode != "float")
    throw ConfigError("mode must be exact, symbolic or float");
  if (c.format != "json" && c.format != "csv") throw ConfigError("format must be json or csv");
  if (c.d < 1 || c.d > 9) throw ConfigError("d must be between 1 and 9");
  if (c.level < 0 || c.level > 12) throw ConfigError("level must be between 0 and 12");
  if (c.series_m < 0) throw ConfigError("series-m must be nonnegative");
  if (c.q && c.q_matrix) throw ConfigError("give either --q or --q-matrix, not both");
  if (c.mode == "symbolic") {
    if (c.q || c.q_matrix) throw ConfigError("symbolic mode keeps q formal; do not pass --q or --q-matrix");
    Resolved r{DeformationMatrix::constant(c.d, Scalar::q()), true, {}};
    for (const char* g : {"1/2", "-1/2", "9/10", "-9/10"})
      r.numeric.emplace_back(std::string("q=") + g, DeformationMatrix::constant(c.d, Scalar(parse_rational(g))));
    return r;
  }
  if (c.q_matrix) {
    std::ifstream in(*c.q_matrix);
    if (!in) throw ConfigError("cannot read deformation matrix file " + *c.q_matrix);
    try {
      json doc = json::parse(in);
      if (c.mode == "float") {
        for (auto& row : doc.at("entries"))
          for (auto& e : row)
            if (e.is_string()) e = std::stod(e.get<std::string>());
      }
      auto m = DeformationMatrix::from_json(doc);
      m.require_open_interval();
      return Resolved{m, false, {{"q=matrix", m}}};
    } catch (const std::domain_error& e) {
      throw ConfigError(e.what());
    } catch (const std::exception& e) {
      throw ConfigError(std::string("bad deformation matrix: ") + e.what());
    }
  }
  Rational q = parse_q(c.q.value_or("1/2"), c.mode);
  if (abs(q) >= 1) throw ConfigError("|q| must be < 1 (got " + to_string(q) + ")");
  auto m = DeformationMatrix::constant(c.d, Scalar(q));
  return Resolved{m, false, {{"q=" + to_string(q), m}}};
}

json word_json(const Word& w) {
  json a = json::array();
  for (std::size_t p = 0; p < w.size(); ++p) a.push_back(w[p]);
  return a;
}

json coeff_json(const Scalar& s) {
  json o;
  o["coeff"] = s.to_string();
  switch (s.mode()) {
    case Scalar::Mode::Rational:
      o["coeff_num"] = s.as_rational().get_num().get_str();
      o["coeff_den"] = s.as_rational().get_den().get_str();
      break;
    case Scalar::Mode::Poly:
      o["poly"] = s.as_poly().to_string();
      break;
    case Scalar::Mode::RatFunc:
      o["poly"] = s.as_ratfunc().numerator().to_string();
      o["poly_den"] = s.as_ratfunc().denominator().to_string();
      break;
  }
  return o;
}

double q_float(const DeformationMatrix& m) { return to_nearest_double(m(1, 1).as_rational()); }

CheckResult make(std::string id, bool pass) {
  CheckResult r;
  r.id = std::move(id);
  r.pass = pass;
  return r;
}

// ---- suites -------------------------------------------------------------

std::vector<CheckResult> suite_commutator(const RunConfig& c, const Resolved& r) {
  FockSpace space(r.formal_or_exact, c.level);
  std::vector<CheckResult> out;
  const int limit = std::max(c.level - 1, 0);
  for (int i = 1; i <= space.d(); ++i)
    for (int j = 1; j <= space.d(); ++j) {
      auto rep = commutator_residual(space, i, j, limit);
      auto res = make("commutator/i=" + std::to_string(i) + ",j=" + std::to_string(j), rep.zero());
      res.params = {{"i", i}, {"j", j}, {"level_limit", limit}};
      res.value = to_string(rep.max_magnitude);
      res.bound = "0";
      if (rep.first_counterexample) res.counterexample = "e_" + rep.first_counterexample->to_string();
      out.push_back(std::move(res));
    }
  return out;
}

std::vector<CheckResult> suite_dual_agree(const RunConfig& c, const Resolved& r) {
  FockSpace space(r.formal_or_exact, c.level);
  std::vector<CheckResult> out;
  for (int i = 1; i <= space.d(); ++i) {
    DualOperator rec(space, i, DualStrategy::Recursive);
    std::size_t checked = 0;
    std::string bad;
    for (const auto& w : Word::all_up_to(space.d(), static_cast<std::size_t>(c.level))) {
      ++checked;
      if (!(rec.apply(w) == dual_partition(space, i, w)) && bad.empty()) bad = "e_" + w.to_string();
    }
    auto res = make("dual-agree/i=" + std::to_string(i), bad.empty());
    res.params = {{"i", i}, {"max_length", c.level}};
    res.value = checked;
    res.counterexample = bad;
    out.push_back(std::move(res));
  }
  return out;
}

std::vector<CheckResult> suite_wick_agree(const RunConfig& c, const Resolved& r) {
  FockSpace space(r.formal_or_exact, c.level);
  WickExpander wick(space);
  std::vector<CheckResult> out;
  std::string bad;
  std::size_t checked = 0;
  for (const auto& w : Word::all_up_to(space.d(), static_cast<std::size_t>(c.level))) {
    ++checked;
    if (!(wick.recursive(w) == wick.partition(w)) && bad.empty()) bad = "Q[" + w.to_string() + "]";
  }
  auto res = make("wick-agree/partition", bad.empty());
  res.params = {{"max_length", c.level}};
  res.value = checked;
  res.counterexample = bad;
  out.push_back(std::move(res));

  std::string bad_eval;
  for (const auto& w : Word::all_up_to(space.d(), static_cast<std::size_t>(c.level)))
    if (!(evaluate(space, wick.recursive(w)) == basis(w)) && bad_eval.empty()) bad_eval = "Q[" + w.to_string() + "]e_0";
  auto ev = make("wick-agree/vacuum", bad_eval.empty());
  ev.params = {{"max_length", c.level}};
  ev.counterexample = bad_eval;
  out.push_back(std::move(ev));

  if (space.d() == 1 && r.formal_or_exact.is_constant()) {
    std::string bad_h;
    for (int n = 0; n <= c.level; ++n) {
      NCPoly p = wick.recursive(Word::repeat(1, static_cast<std::size_t>(n)));
      Poly1 h = hermite(n, r.formal_or_exact.scalar());
      for (int k = 0; k <= n; ++k)
        if (!(p.coefficient(Word::repeat(1, static_cast<std::size_t>(k))) == h.coefficient(k)) && bad_h.empty())
          bad_h = "H_" + std::to_string(n);
    }
    auto hr = make("wick-agree/hermite", bad_h.empty());
    hr.params = {{"max_degree", c.level}};
    hr.counterexample = bad_h;
    out.push_back(std::move(hr));
  }
  return out;
}

std::vector<CheckResult> suite_derivative_agree(const RunConfig& c, const Resolved& r) {
  FockSpace space(r.formal_or_exact, c.level);
  WickExpander wick(space);
  std::vector<CheckResult> out;
  for (int i = 1; i <= space.d(); ++i) {
    std::string bad;
    std::size_t checked = 0;
    for (const auto& w : Word::all_up_to(space.d(), static_cast<std::size_t>(c.level))) {
      ++checked;
      if (!(diff_partition(wick, i, w) == diff_quotient(i, wick.recursive(w))) && bad.empty())
        bad = "e_" + w.to_string();
    }
    auto res = make("derivative-agree/i=" + std::to_string(i), bad.empty());
    res.params = {{"i", i}, {"max_length", c.level}};
    res.value = checked;
    res.counterexample = bad;
    out.push_back(std::move(res));
  }
  return out;
}

void require_series_room(const RunConfig& c) {
  if (2 * c.series_m + 1 > c.level)
    throw ConfigError("series-m = " + std::to_string(c.series_m) + " needs level >= " + std::to_string(2 * c.series_m + 1));
}

std::vector<CheckResult> suite_duality(const RunConfig& c, const Resolved& r) {
  require_series_room(c);
  std::vector<CheckResult> out;
  for (const auto& [label, m] : r.numeric) {
    FockSpace space(m, c.level);
    const int max_len = std::min(c.level, 2 * c.series_m + 1);
    for (int i = 1; i <= space.d(); ++i) {
      FockVector xi = conjugate_series(space, i, c.series_m);
      Rational worst(0);
      std::string bad;
      for (const auto& u : Word::all_up_to(space.d(), static_cast<std::size_t>(max_len))) {
        Scalar res = duality_residual(space, u, i, xi);
        Rational mag = res.magnitude();
        if (mag > worst) worst = mag;
        if (mag != 0 && bad.empty()) bad = "A^" + u.to_string();
      }
      auto res = make("duality/" + label + "/i=" + std::to_string(i), bad.empty());
      res.params = {{"q", label}, {"i", i}, {"M", c.series_m}, {"max_length", max_len}};
      res.value = to_string(worst);
      res.bound = "0";
      res.counterexample = bad;
      out.push_back(std::move(res));
    }
  }
  return out;
}

/// Per-degree residual of D_i V - xi_i; also used by the gibbs export.
std::vector<std::pair<int, Rational>> gibbs_residuals(const WickExpander& wick, const NCPoly& v, int i, int M) {
  NCPoly target = wick.vector_to_poly(conjugate_series(wick.space(), i, M));
  NCPoly diff = cyclic_derivative(i, v) - target;
  std::vector<std::pair<int, Rational>> out;
  const int top = std::max(degree(target), degree(cyclic_derivative(i, v)));
  for (int k = 0; k <= top; ++k) out.emplace_back(k, degree_part(diff, static_cast<std::size_t>(k)).max_magnitude());
  return out;
}

std::vector<CheckResult> suite_gibbs(const RunConfig& c, const Resolved& r) {
  require_series_room(c);
  std::vector<CheckResult> out;
  for (const auto& [label, m] : r.numeric) {
    FockSpace space(m, c.level);
    WickExpander wick(space);
    NCPoly v = gibbs_potential(wick, c.series_m);
    for (int i = 1; i <= space.d(); ++i) {
      auto per_degree = gibbs_residuals(wick, v, i, c.series_m);
      json values = json::object();
      std::string bad;
      for (const auto& [k, mag] : per_degree) {
        values[std::to_string(k)] = to_string(mag);
        if (k <= 2 * c.series_m && mag != 0 && bad.empty()) bad = "degree " + std::to_string(k);
      }
      auto res = make("gibbs/" + label + "/i=" + std::to_string(i), bad.empty());
      res.params = {{"q", label}, {"i", i}, {"M", c.series_m}};
      res.value = values;
      res.bound = "0";
      res.counterexample = bad;
      res.note = "pass requires degrees <= 2M; higher degrees reported only";
      out.push_back(std::move(res));
    }
  }
  return out;
}

std::vector<CheckResult> suite_bounds(const RunConfig& c, const Resolved& r) {
  std::vector<CheckResult> out;
  for (const auto& [label, m] : r.numeric) {
    const auto fq = FloatDeformation::from(m);
    const double qmax = fq.max_abs();
    const bool mixed = !m.is_constant();
    const auto consts = analytic_constants(qmax);
    if (!mixed) {
      for (int k = 0; k < c.level; ++k) {
        double v = gram_domination_residual(k, fq.q[0], fq.d);
        auto res = make("bounds/" + label + "/gram-domination/m=" + std::to_string(k), v >= -1e-9);
        res.params = {{"q", label}, {"m", k}, {"d", fq.d}};
        res.value = v;
        res.bound = -1e-9;
        out.push_back(std::move(res));
      }
    }
    for (int i = 1; i <= fq.d; ++i) {
      const double bound = 1 / std::sqrt(consts.w) + 1e-9;
      CheckResult res;
      try {
        double v = right_annihilation_norm(i, fq, c.level);
        res = make("bounds/" + label + "/r-norm/i=" + std::to_string(i), v <= bound);
        res.value = v;
      } catch (const GramFactorizationError& e) {
        res = make("bounds/" + label + "/r-norm/i=" + std::to_string(i), false);
        res.note = e.what();
      }
      res.params = {{"q", label}, {"i", i}, {"L", c.level}};
      res.bound = bound;
      if (mixed) res.note += "heuristic: w evaluated at max|q_ij|";
      out.push_back(std::move(res));
    }
    for (int k = 0; k <= std::min(4, c.level - 2); ++k) {
      const int lh = std::max(c.level, k + 2);
      auto h = haagerup_residual(k, fq, lh, 50, c.seed);
      auto res = make("bounds/" + label + "/haagerup/m=" + std::to_string(k), h.residual <= 0);
      res.params = {{"q", label}, {"m", k}, {"L", lh}, {"trials", 50}, {"seed", c.seed}};
      res.value = h.residual;
      res.bound = 0.0;
      if (h.heuristic) res.note = "heuristic: C evaluated at max|q_ij|";
      out.push_back(std::move(res));
    }
    for (SeriesId id : {SeriesId::Xi, SeriesId::Fisher, SeriesId::Lipschitz, SeriesId::Gibbs}) {
      bool ok = true;
      json values = json::array();
      double prev = std::numeric_limits<double>::infinity();
      for (int M = c.series_m; M <= c.series_m + 4; ++M) {
        auto t = series_tail(id, M, qmax, fq.d);
        ok = ok && t.finite() && t.log10_bound <= prev;
        prev = t.log10_bound;
        values.push_back({{"M", M}, {"log10_bound", std::isfinite(t.log10_bound) ? json(t.log10_bound) : json("-inf")}});
      }
      auto res = make("bounds/" + label + "/tail/" + to_string(id), ok);
      res.params = {{"q", label}, {"series", to_string(id)}, {"d", fq.d}};
      res.value = values;
      res.bound = "finite, nonincreasing in M";
      if (mixed) res.note = "heuristic: constants evaluated at max|q_ij|";
      out.push_back(std::move(res));
    }
  }
  return out;
}

std::vector<CheckResult> suite_univar(const RunConfig& c, const Resolved& r) {
  std::vector<CheckResult> out;
  if (r.symbolic) {
    std::string bad;
    for (int n = 0; n <= 4; ++n) {
      Scalar expect = Scalar::q().pow(n * (n + 1) / 2) * Scalar(n % 2 ? -1 : 1);
      if (!(trace_cheb(n) == expect) && bad.empty()) bad = "U_" + std::to_string(2 * n);
      if (n >= 1 && !trace_cheb_odd(n).is_zero() && bad.empty()) bad = "U_" + std::to_string(2 * n - 1);
    }
    auto res = make("univar/trace-cheb/symbolic", bad.empty());
    res.params = {{"max_n", 4}};
    res.counterexample = bad;
    out.push_back(std::move(res));
  }
  for (const auto& [label, m] : r.numeric) {
    if (!m.is_constant()) continue;
    const Scalar q = m.scalar();
    const double q0 = q_float(m);
    {
      std::string bad;
      for (int n = 0; n <= 4; ++n) {
        Scalar expect = q.pow(n * (n + 1) / 2) * Scalar(n % 2 ? -1 : 1);
        if (!(trace_cheb(n, q) == expect) && bad.empty()) bad = "U_" + std::to_string(2 * n);
        if (n >= 1 && !trace_cheb_odd(n, q).is_zero() && bad.empty()) bad = "U_" + std::to_string(2 * n - 1);
      }
      auto res = make("univar/" + label + "/trace-cheb", bad.empty());
      res.params = {{"q", label}, {"max_n", 4}};
      res.counterexample = bad;
      out.push_back(std::move(res));
    }
    {
      double worst = 0;
      for (int n = 0; n <= 8; ++n) worst = std::max(worst, rescale_identity_residual(n, q0));
      auto res = make("univar/" + label + "/rescale-identity", worst < 1e-10);
      res.params = {{"q", label}, {"max_n", 8}};
      res.value = worst;
      res.bound = 1e-10;
      out.push_back(std::move(res));
    }
    {
      double worst = 0;
      double tail = 0;
      for (int k = 0; k <= 5; ++k) {
        auto s = q_identity_residual(k, q0, 200);
        worst = std::max(worst, s.residual);
        tail = std::max(tail, s.tail_bound);
      }
      auto res = make("univar/" + label + "/q-identity", worst < 1e-12 + tail);
      res.params = {{"q", label}, {"max_m", 5}, {"N", 200}};
      res.value = worst;
      res.bound = 1e-12 + tail;
      out.push_back(std::move(res));
    }
    {
      const int top = 2 * c.series_m + 1;
      auto cheb_vec = conjugate_cheb_vector(top, q0);
      auto closed = conjugate_closed_form_coefficients(top, q0);
      double worst = 0;
      for (int k = 0; k <= top; ++k)
        worst = std::max(worst, std::abs(cheb_vec.coefficients[static_cast<std::size_t>(k)] - closed[static_cast<std::size_t>(k)]));
      auto res = make("univar/" + label + "/conjugate-cheb", worst < 1e-10);
      res.params = {{"q", label}, {"max_level", top}, {"chebyshev_terms", cheb_vec.terms}};
      res.value = worst;
      res.bound = 1e-10;
      out.push_back(std::move(res));
    }
  }
  return out;
}

using SuiteFn = std::function<std::vector<CheckResult>(const RunConfig&, const Resolved&)>;

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> table{
      {"commutator", suite_commutator}, {"dual-agree", suite_dual_agree},
      {"wick-agree", suite_wick_agree}, {"derivative-agree", suite_derivative_agree},
      {"duality", suite_duality},       {"gibbs", suite_gibbs},
      {"bounds", suite_bounds},         {"univar", suite_univar}};
  return table;
}

json check_json(const CheckResult& r) {
  json o;
  o["check"] = r.id;
  o["params"] = r.params.is_null() ? json::object() : r.params;
  o["value"] = r.value;
  o["bound"] = r.bound;
  o["pass"] = r.pass;
  if (!r.counterexample.empty()) o["counterexample"] = r.counterexample;
  if (!r.note.empty()) o["note"] = r.note;
  return o;
}

json config_json(const RunConfig& c) {
  json o;
  o["d"] = c.d;
  o["q"] = c.q ? json(*c.q) : json(nullptr);
  o["q_matrix"] = c.q_matrix ? json(*c.q_matrix) : json(nullptr);
  o["level"] = c.level;
  o["series_m"] = c.series_m;
  o["mode"] = c.mode;
  o["seed"] = c.seed;
  return o;
}

std::string csv_field(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  return s;
}

void write_output(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw ConfigError("cannot write output file " + c.out);
  f << text;
}

}  // namespace

std::vector<CheckResult> run_suite(const RunConfig& config, const std::string& suite) {
  Resolved r = resolve(config);
  std::vector<std::pair<std::string, SuiteFn>> chosen;
  for (const auto& entry : suites())
    if (suite == "all" || suite == entry.first) chosen.push_back(entry);
  if (chosen.empty()) throw ConfigError("unknown suite: " + suite);
  std::vector<std::future<std::vector<CheckResult>>> jobs;
  for (const auto& [name, fn] : chosen) jobs.push_back(std::async(std::launch::async, fn, std::cref(config), std::cref(r)));
  std::vector<CheckResult> all;
  for (auto& job : jobs) {
    auto part = job.get();
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::sort(all.begin(), all.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  return all;
}

json report_json(const RunConfig& config, const std::string& suite, std::vector<CheckResult> checks) {
  std::sort(checks.begin(), checks.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  json doc;
  doc["suite"] = suite;
  doc["config"] = config_json(config);
  doc["checks"] = json::array();
  std::size_t failed = 0;
  for (const auto& r : checks) {
    doc["checks"].push_back(check_json(r));
    if (!r.pass) {
      if (failed == 0) {
        doc["first_failure"] = r.id;
        if (!r.counterexample.empty()) doc["first_counterexample"] = r.counterexample;
      }
      ++failed;
    }
  }
  doc["total"] = checks.size();
  doc["failed"] = failed;
  doc["pass"] = failed == 0;
  return doc;
}

std::string report_csv(std::vector<CheckResult> checks) {
  std::sort(checks.begin(), checks.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  std::ostringstream os;
  os << "check,pass,value,bound,counterexample\n";
  for (const auto& r : checks)
    os << csv_field(r.id) << "," << (r.pass ? "true" : "false") << "," << csv_field(r.value) << ","
       << csv_field(r.bound) << "," << csv_field(r.counterexample) << "\n";
  return os.str();
}

int run_verify(const RunConfig& config, const std::string& suite, std::ostream& out, std::ostream& err) {
  std::vector<CheckResult> checks;
  try {
    checks = run_suite(config, suite);
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  }
  std::string text = config.format == "csv" ? report_csv(checks) : report_json(config, suite, checks).dump(2) + "\n";
  try {
    write_output(config, text, out);
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kExitConfig;
  }
  auto bad = std::find_if(checks.begin(), checks.end(), [](const CheckResult& r) { return !r.pass; });
  if (bad == checks.end()) return kExitPass;
  err << "FAIL " << bad->id;
  if (!bad->counterexample.empty()) err << " (first counterexample: " << bad->counterexample << ")";
  err << "\n";
  return kExitFail;
}

namespace {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  std::string csv() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < columns.size(); ++k) os << (k ? "," : "") << columns[k];
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_field(row[k]);
      os << "\n";
    }
    return os.str();
  }
};

std::pair<json, Table> export_partitions(const RunConfig& c) {
  Family f;
  try {
    f = family_from_string(c.family);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (c.n < 0 || c.n > 12) throw ConfigError("n must be between 0 and 12");
  json rows = json::array();
  Table t{{"family", "n", "blocks", "crossings"}, {}};
  for (const auto& p : *enumerate(f, c.n)) {
    json blocks = json::array();
    for (const auto& b : p.pairs()) blocks.push_back({b.lo, b.hi});
    for (int s : p.singletons()) blocks.push_back({s});
    rows.push_back({{"family", to_string(f)}, {"n", c.n}, {"blocks", blocks}, {"crossings", p.crossings()}});
    t.rows.push_back({to_string(f), c.n, p.to_string(), p.crossings()});
  }
  return {rows, t};
}

std::pair<json, Table> export_xi(const RunConfig& c, const Resolved& r) {
  require_series_room(c);
  FockSpace space(r.formal_or_exact, c.level);
  json out = json::array();
  Table t{{"i", "M", "word", "coeff"}, {}};
  for (int i = 1; i <= space.d(); ++i) {
    FockVector xi = conjugate_series(space, i, c.series_m);
    json terms = json::array();
    for (const auto& [w, s] : xi) {
      json term = coeff_json(s);
      term["word"] = word_json(w);
      terms.push_back(term);
      t.rows.push_back({i, c.series_m, w.to_string(), s.to_string()});
    }
    json doc{{"i", i}, {"M", c.series_m}, {"terms", terms}};
    if (r.symbolic) {
      doc["tail_bound"] = nullptr;
    } else {
      const double q0 = to_nearest_double(space.deformation().max_abs());
      auto tail = series_tail(SeriesId::Xi, c.series_m, q0, space.d());
      doc["tail_bound"] = tail.bound;
      doc["tail_log10"] = std::isfinite(tail.log10_bound) ? json(tail.log10_bound) : json("-inf");
      if (!space.deformation().is_constant()) doc["tail_note"] = "heuristic: constants evaluated at max|q_ij|";
    }
    out.push_back(doc);
  }
  return {out, t};
}

std::pair<json, Table> export_gibbs(const RunConfig& c, const Resolved& r) {
  require_series_room(c);
  FockSpace space(r.formal_or_exact, c.level);
  WickExpander wick(space);
  NCPoly v = gibbs_potential(wick, c.series_m);
  json terms = json::array();
  Table t{{"word", "coeff"}, {}};
  for (const auto& [w, s] : v) {
    json term{{"word", word_json(w)}, {"coeff", s.to_string()}};
    terms.push_back(term);
    t.rows.push_back({w.to_string(), s.to_string()});
  }
  json residuals = json::object();
  for (int i = 1; i <= space.d(); ++i) {
    json per = json::object();
    for (const auto& [k, mag] : gibbs_residuals(wick, v, i, c.series_m)) per[std::to_string(k)] = to_string(mag);
    residuals[std::to_string(i)] = per;
  }
  return {json{{"M", c.series_m}, {"terms", terms}, {"cyclic_residual_by_degree", residuals}}, t};
}

std::pair<json, Table> export_hermite(const RunConfig& c, const Resolved& r) {
  const Scalar q = r.formal_or_exact.is_constant() ? r.formal_or_exact.scalar() : r.formal_or_exact(1, 1);
  FockSpace space(DeformationMatrix::constant(1, q), c.level);
  WickExpander wick(space);
  json rows = json::array();
  Table t{{"n", "formula", "computed", "residual"}, {}};
  for (int n = 0; n <= c.level; ++n) {
    Poly1 h = hermite(n, q);
    NCPoly p = wick.vector_to_poly(basis(Word::repeat(1, static_cast<std::size_t>(n))));
    std::vector<Scalar> coeffs(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) coeffs[static_cast<std::size_t>(k)] = p.coefficient(Word::repeat(1, static_cast<std::size_t>(k)));
    Poly1 computed(coeffs);
    Poly1 diff = computed - h;
    Rational residual(0);
    for (const auto& s : diff.coefficients()) residual = std::max(residual, s.magnitude());
    rows.push_back({{"n", n}, {"formula", h.to_string()}, {"computed", computed.to_string()}, {"residual", to_string(residual)}});
    t.rows.push_back({n, h.to_string(), computed.to_string(), to_string(residual)});
  }
  return {rows, t};
}

std::pair<json, Table> export_fisher(const RunConfig& c, const Resolved& r) {
  require_series_room(c);
  FockSpace space(r.formal_or_exact, c.level);
  json rows = json::array();
  Table t{{"M", "value", "float", "tail_log10", "one_variable_series"}, {}};
  for (int M = 0; M <= c.series_m; ++M) {
    Scalar v = fisher_info(space, M);
    json row{{"M", M}, {"value", v.to_string()}};
    json fl = nullptr;
    json tail = nullptr;
    if (!r.symbolic) {
      fl = to_nearest_double(v.as_rational());
      auto tr = series_tail(SeriesId::Fisher, M, to_nearest_double(space.deformation().max_abs()), space.d());
      tail = std::isfinite(tr.log10_bound) ? json(tr.log10_bound) : json("-inf");
      row["tail_bound"] = tr.bound;
    }
    row["float"] = fl;
    row["tail_log10"] = tail;
    json series = nullptr;
    if (space.d() == 1 && space.deformation().is_constant()) {
      Scalar s(0);
      for (int m = 1; m <= M + 1; ++m) s += fisher_term_1d(m, space.deformation().scalar());
      series = s.to_string();
    }
    row["one_variable_series"] = series;
    rows.push_back(row);
    t.rows.push_back({M, v.to_string(), fl, tail, series});
  }
  return {rows, t};
}

}  // namespace

int run_export(const RunConfig& config, const std::string& what, std::ostream& out, std::ostream& err) {
  try {
    std::pair<json, Table> result;
    if (what == "partitions") {
      if (config.format != "json" && config.format != "csv") throw ConfigError("format must be json or csv");
      result = export_partitions(config);
    } else {
      Resolved r = resolve(config);
      if (what == "xi")
        result = export_xi(config, r);
      else if (what == "gibbs")
        result = export_gibbs(config, r);
      else if (what == "hermite")
        result = export_hermite(config, r);
      else if (what == "fisher")
        result = export_fisher(config, r);
      else
        throw ConfigError("unknown export: " + what);
    }
    std::string text = config.format == "csv" ? result.second.csv() : result.first.dump(2) + "\n";
    write_output(config, text, out);
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "check failed: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitPass;
}

}  // namespace qfock
