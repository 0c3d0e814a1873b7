#include "qgs/cli.hpp"

#include "qgs/errors.hpp"
#include "qgs/estimates.hpp"
#include "qgs/freewords.hpp"
#include "qgs/fusion.hpp"
#include "qgs/spectrum.hpp"
#include "qgs/templieb.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace qgs::cli {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Rounded to 12 significant digits so JSON and CSV agree byte for byte.
json num(double x) {
  if (!std::isfinite(x)) return fmt(x);
  return std::strtod(fmt(x).c_str(), nullptr);
}

json num(const BigFloat& x) { return num(x.to_double()); }

struct Report {
  std::string suite;
  json input = json::object();
  json result = json::object();
  json tolerances = json::object();
  std::string verdict;  // empty when the suite only tabulates
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void write_csv(const Report& r, std::ostream& os) {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_cell(cells[i]);
    os << "\n";
  };
  line(r.header);
  for (const auto& row : r.rows) line(row);
}

json table_json(const Report& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json o = json::object();
    for (std::size_t i = 0; i < r.header.size(); ++i) o[r.header[i]] = row[i];
    rows.push_back(std::move(o));
  }
  return rows;
}

struct Common {
  std::string q = "0.5";
  int N = 3;
  std::string format = "json";
  std::string output;
  std::optional<unsigned> precision_bits;
  bool timing = false;
  std::string expect;
  bool table = false;  // include the CSV table in JSON output

  unsigned bits() const {
    if (precision_bits) return *precision_bits;
    if (const char* env = std::getenv("QGS_PRECISION_BITS"); env && *env) {
      char* end = nullptr;
      unsigned long v = std::strtoul(env, &end, 10);
      if (*end || v < 32 || v > 1u << 20) throw DomainError("QGS_PRECISION_BITS must be an integer in [32, 1048576]");
      return static_cast<unsigned>(v);
    }
    return kDefaultPrecisionBits;
  }
  QParameter param() const { return QParameter::from_string(q, N, bits()); }
  json echo() const {
    return json{{"q", q}, {"N", N}, {"precision_bits", bits()}};
  }
};

std::string b2s(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------- suites

struct SpectrumOpts { unsigned alpha_max = 100; };
Report spectrum_suite(const Common& c, const SpectrumOpts& o) {
  Report r;
  r.suite = "spectrum";
  QParameter p = c.param();
  r.input = c.echo();
  r.input["alpha_max"] = o.alpha_max;
  std::vector<SpectralDatum> data = spectral_data(p, o.alpha_max);
  DimensionTable d = dims(p, o.alpha_max);
  r.header = {"alpha", "n", "qdim", "delta", "gap"};
  for (unsigned a = 0; a <= o.alpha_max; ++a) {
    std::string gap = a == 0 ? "" : fmt((data[a].delta - data[a - 1].delta).to_double());
    r.rows.push_back({std::to_string(a), data[a].n.str(), fmt(d.qdim[a].to_double()), fmt(data[a].delta.to_double()), gap});
  }
  r.result["consistent"] = p.is_consistent();
  r.result["q0"] = num(p.q0());
  r.result["Nq"] = num(p.Nq());
  if (!p.is_classical()) r.result["gap_asymptote"] = num(delta_asymptote(p));
  return r;
}

struct FusionOpts { unsigned alpha_max = 40; unsigned growth_probe = 60; };
Report fusion_suite(const Common& c, const FusionOpts& o) {
  Report r;
  r.suite = "fusion";
  QParameter p = c.param();
  r.input = c.echo();
  r.input["alpha_max"] = o.alpha_max;
  r.input["growth_probe"] = o.growth_probe;
  SumRuleReport s = sum_rules(p, o.alpha_max);
  GrowthRecord g = growth_rate(p, o.growth_probe);
  r.result["pairs"] = s.pairs;
  r.result["classical_failures"] = s.classical_failures.size();
  r.result["quantum_checked"] = s.quantum_checked;
  r.result["quantum_failures"] = s.quantum_failures.size();
  r.result["growth"] = {{"q0", num(g.q0)}, {"root", num(g.root)}, {"limsup_product", num(g.limsup_product)}};
  r.verdict = s.pass() ? "pass" : "fail";
  std::vector<Integer> n = classical_dims(p.N(), o.alpha_max);
  std::optional<Rational> Nq = p.Nq_exact();
  std::vector<Rational> qd;
  if (Nq) qd = quantum_dims_exact(*Nq, o.alpha_max);
  DimensionTable d = dims(p, o.alpha_max);
  r.header = {"alpha", "n", "qdim", "qdim_exact"};
  for (unsigned a = 0; a <= o.alpha_max; ++a)
    r.rows.push_back({std::to_string(a), n[a].str(), fmt(d.qdim[a].to_double()), Nq ? qd[a].str() : ""});
  return r;
}

struct HSOpts {
  double t = 0;
  unsigned alpha_max = 200;
  HSOptions options;
};
Report hs_suite(const Common& c, const HSOpts& o) {
  Report r;
  r.suite = "hs-cert";
  QParameter p = c.param();
  r.input = c.echo();
  r.input["t"] = num(o.t);
  r.input["alpha_max"] = o.alpha_max;
  HSCertificate cert = hs_certificate(p, o.t, o.alpha_max, o.options);
  Regime reg = regime_classify(p);
  r.result["ratio_value"] = num(cert.ratio_value);
  r.result["early_scale"] = num(cert.early_scale);
  r.result["tail_term"] = num(cert.tail_term);
  r.result["partial_sum"] = num(cert.partial_sums.back());
  r.result["compressed_partial_sum"] = num(cert.compressed_partial_sums.back());
  r.result["regime"] = {{"kac", reg.kac}, {"ighs", reg.ighs}, {"ghs", reg.ghs}};
  r.tolerances = {{"ratio_margin", num(o.options.ratio_margin)},
                  {"term_floor", num(o.options.term_floor)},
                  {"early_alpha", o.options.early_alpha}};
  r.verdict = cert.verdict;
  r.header = {"alpha", "term", "partial_sum", "compressed_term", "compressed_partial_sum"};
  for (std::size_t a = 0; a < cert.terms.size(); ++a)
    r.rows.push_back({std::to_string(a), fmt(cert.terms[a]), fmt(cert.partial_sums[a]), fmt(cert.compressed_terms[a]),
                      fmt(cert.compressed_partial_sums[a])});
  return r;
}

struct GapOpts { unsigned alpha_max = 200, gamma_max = 5; double tolerance = 0.10; };
Report gap_suite(const Common& c, const GapOpts& o) {
  Report r;
  r.suite = "gap-scan";
  QParameter p = c.param();
  r.input = c.echo();
  r.input["alpha_max"] = o.alpha_max;
  r.input["gamma_max"] = o.gamma_max;
  GapScanReport s = gap_constant_scan(p, o.alpha_max, o.gamma_max, o.tolerance);
  r.result["cells"] = s.cells;
  r.result["sup_ratio"] = num(s.sup_ratio);
  r.result["argmax"] = {{"alpha", s.argmax.alpha}, {"beta", s.argmax.beta}, {"gamma", s.argmax.gamma}};
  r.result["inner_sup"] = num(s.inner_sup);
  r.result["outer_sup"] = num(s.outer_sup);
  r.result["finite"] = s.finite;
  r.result["stable"] = s.stable;
  r.result["precision_bits"] = s.precision_bits;
  r.tolerances = {{"stability", num(o.tolerance)}};
  r.verdict = s.finite && s.stable ? "pass" : "fail";
  r.header = {"sup_ratio", "argmax_alpha", "argmax_beta", "argmax_gamma", "inner_sup", "outer_sup", "finite", "stable"};
  r.rows.push_back({fmt(s.sup_ratio), std::to_string(s.argmax.alpha), std::to_string(s.argmax.beta),
                    std::to_string(s.argmax.gamma), fmt(s.inner_sup), fmt(s.outer_sup), b2s(s.finite), b2s(s.stable)});
  return r;
}

struct JWOpts {
  unsigned n_max = 10, fusion_max = 8;
  double tl_tol = 1e-12, jw_tol = 1e-9, trace_tol = 1e-8, resolution_tol = 1e-8;
};
Report jw_suite(const Common& c, const JWOpts& o) {
  Report r;
  r.suite = "jw-verify";
  QParameter p = c.param();
  r.input = c.echo();
  r.input["n_max"] = o.n_max;
  r.input["fusion_max"] = o.fusion_max;
  TLConfig cfg;
  cfg.max_strands = std::max({cfg.max_strands, o.n_max, o.fusion_max});
  bool ok = true;
  double worst_tl = 0, worst_jw = 0, worst_trace = 0, worst_res = 0;
  r.header = {"n", "idempotent", "braid", "commute", "orthonormality", "annihilation", "trace_error", "extended"};
  for (unsigned n = 1; n <= o.n_max; ++n) {
    TLResiduals tl;
    if (n >= 2) tl = tl_relations(tl_rep(p, n, cfg));
    auto jw = jones_wenzl(p, n, cfg);
    const auto& res = jw->residuals;
    worst_tl = std::max({worst_tl, tl.idempotent, tl.braid, tl.commute});
    worst_jw = std::max({worst_jw, res.orthonormality, res.annihilation});
    worst_trace = std::max(worst_trace, res.trace_error);
    r.rows.push_back({std::to_string(n), fmt(tl.idempotent), fmt(tl.braid), fmt(tl.commute), fmt(res.orthonormality),
                      fmt(res.annihilation), fmt(res.trace_error), b2s(jw->extended_precision)});
  }
  for (unsigned a = 0; a <= o.fusion_max; ++a)
    for (unsigned b = 0; a + b <= o.fusion_max; ++b) worst_res = std::max(worst_res, resolution_of_identity(p, a, b, cfg));
  ok = worst_tl <= o.tl_tol && worst_jw <= o.jw_tol && worst_trace <= o.trace_tol && worst_res <= o.resolution_tol;
  r.result = {{"tl_relations", num(worst_tl)},
              {"jw_residual", num(worst_jw)},
              {"trace_error", num(worst_trace)},
              {"resolution_of_identity", num(worst_res)}};
  r.tolerances = {{"tl_relations", num(o.tl_tol)},
                  {"jw_residual", num(o.jw_tol)},
                  {"trace_error", num(o.trace_tol)},
                  {"resolution_of_identity", num(o.resolution_tol)}};
  r.verdict = ok ? "pass" : "fail";
  return r;
}

struct PentagonOpts {
  unsigned alpha = 3, r = 1, s = 1;
  int k = 1, l = 1;
  bool no_align = false;
  double max_constant = 2;
};
Report pentagon_suite(const Common& c, const PentagonOpts& o) {
  Report r;
  r.suite = "pentagon";
  QParameter p = c.param();
  r.input = c.echo();
  r.input.update(json{{"alpha", o.alpha}, {"r", o.r}, {"s", o.s}, {"k", o.k}, {"l", o.l}, {"align_phase", !o.no_align}});
  PentagonResult pr = pentagon_defect(p, o.alpha, o.r, o.s, o.k, o.l, !o.no_align);
  r.result = {{"defect", num(pr.defect)},
              {"raw_defect", num(pr.raw_defect)},
              {"phase", num(pr.phase)},
              {"bound", num(pr.bound)},
              {"constant", num(pr.constant)}};
  r.tolerances = {{"max_constant", num(o.max_constant)}};
  r.verdict = pr.constant <= o.max_constant ? "pass" : "fail";
  r.header = {"alpha", "defect", "raw_defect", "phase", "bound", "constant"};
  r.rows.push_back({std::to_string(o.alpha), fmt(pr.defect), fmt(pr.raw_defect), fmt(pr.phase), fmt(pr.bound),
                    fmt(pr.constant)});
  return r;
}

struct Lemma65Opts { unsigned alpha_min = 2, alpha_max = 8; int k = -1, l = -1; };
Report lemma65_suite(const Common& c, const Lemma65Opts& o) {
  if (o.alpha_min > o.alpha_max) throw DomainError("alpha-min exceeds alpha-max");
  Report r;
  r.suite = "lemma65";
  QParameter p = c.param();
  r.input = c.echo();
  r.input.update(json{{"alpha_min", o.alpha_min}, {"alpha_max", o.alpha_max}, {"k", o.k}, {"l", o.l}});
  bool ok = true;
  double worst = 0;
  r.header = {"alpha", "q_alpha", "vector_ratio", "coefficient_ratio", "assembled_ratio", "bound_constant", "within_bound"};
  for (unsigned a = o.alpha_min; a <= o.alpha_max; ++a) {
    CommutatorEstimate e = commutator_estimate(p, a, 1, 1, o.k, o.l);
    ok = ok && e.within_bound;
    worst = std::max(worst, o.k == -1 && o.l == -1 ? e.assembled_ratio : e.coefficient_ratio);
    r.rows.push_back({std::to_string(a), fmt(e.q_alpha), fmt(e.vector_ratio), fmt(e.coefficient_ratio),
                      fmt(e.assembled_ratio), fmt(e.bound_constant), b2s(e.within_bound)});
  }
  r.result = {{"worst_ratio", num(worst)}};
  r.tolerances = {{"bound_constant", o.k == -1 && o.l == -1 ? 6 : 2}};
  r.verdict = ok ? "pass" : "fail";
  return r;
}

struct FreeOpts {
  freewords::PatternLimits limits;
  unsigned threads = 1;
  std::string pattern;
};

std::vector<int> parse_types(const std::string& s) {
  std::vector<int> out;
  if (s == "-") return out;
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw DomainError("pattern words are digit strings, e.g. b=01,x=1,a=10");
    out.push_back(ch - '0');
  }
  return out;
}

freewords::Pattern parse_pattern(const std::string& text) {
  freewords::Pattern p;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos || eq != 1) throw DomainError("malformed pattern component '" + part + "'");
    std::vector<int> w = parse_types(part.substr(2));
    switch (part[0]) {
      case 'b': p.b = w; break;
      case 'x': p.x = w; break;
      case 'a': p.a = w; break;
      default: throw DomainError("pattern components are b, x and a");
    }
  }
  return p;
}

Report freeprod_suite(const Common& c, const FreeOpts& o) {
  Report r;
  r.suite = "freeprod-verify";
  r.input = {{"n_max", o.limits.n_max}, {"m_max", o.limits.m_max}, {"k_max", o.limits.k_max},
             {"algebras", o.limits.algebras}};
  (void)c;
  if (!o.pattern.empty()) {
    r.input["pattern"] = o.pattern;
    freewords::IdentityDetail d = freewords::verify_identity_detail(parse_pattern(o.pattern), o.limits);
    r.result = {{"lhs", freewords::render(d.calc, d.lhs.total)},
                {"main", freewords::render(d.calc, d.main)},
                {"residual", freewords::render(d.calc, d.residual)},
                {"ledger", freewords::render(d.calc, d.ledger.remainder)},
                {"main_indices", d.check.main_indices},
                {"max_ledger_length", d.check.max_ledger_length}};
    r.verdict = d.check.pass ? "pass" : "fail";
    r.header = {"pattern", "lhs_terms", "main_terms", "residual_terms", "ledger_terms", "max_ledger_length", "pass"};
    r.rows.push_back({freewords::render_pattern(d.check.pattern), std::to_string(d.check.lhs_terms),
                      std::to_string(d.check.main_terms), std::to_string(d.check.residual_terms),
                      std::to_string(d.check.ledger_terms), std::to_string(d.check.max_ledger_length),
                      b2s(d.check.pass)});
    return r;
  }
  freewords::SweepReport s = freewords::verify_all(o.limits, o.threads);
  r.result = {{"patterns", s.patterns},
              {"passed", s.passed},
              {"residual_failures", s.residual_failures},
              {"length_failures", s.length_failures},
              {"long_patterns", s.long_patterns},
              {"long_nonzero", s.long_nonzero}};
  json fails = json::array();
  for (const auto& f : s.failures) fails.push_back(freewords::render_pattern(f.pattern));
  r.result["failures"] = fails;
  r.verdict = s.passed == s.patterns && s.long_nonzero == 0 ? "pass" : "fail";
  r.header = {"patterns", "passed", "residual_failures", "length_failures", "long_patterns", "long_nonzero"};
  r.rows.push_back({std::to_string(s.patterns), std::to_string(s.passed), std::to_string(s.residual_failures),
                    std::to_string(s.length_failures), std::to_string(s.long_patterns), std::to_string(s.long_nonzero)});
  return r;
}

struct AmenOpts { AmenabilityOptions options; };
Report amenability_suite(const Common& c, const AmenOpts& o) {
  Report r;
  r.suite = "amenability";
  QParameter p = c.param();
  r.input = c.echo();
  r.input["n_max"] = o.options.n_max;
  AmenabilityReport a = amenability_criterion(quantum_model(p), o.options);
  r.result = {{"warmup", a.warmup}, {"liminf_estimate", num(a.liminf_estimate)},
              {"final_ratio", num(a.samples.back().ratio)}};
  r.tolerances = {{"threshold", num(a.threshold)}};
  r.verdict = a.verdict;
  r.header = {"n", "lambda", "ratio", "envelope", "alpha"};
  for (const auto& s : a.samples)
    r.rows.push_back({std::to_string(s.n), fmt(s.lambda), fmt(s.ratio), fmt(s.envelope), std::to_string(s.alpha)});
  return r;
}

struct CesaroOpts { std::string function = "x"; std::uint64_t k = 100000; double tolerance = 1e-3; };
Report cesaro_suite(const Common& c, const CesaroOpts& o) {
  (void)c;
  // P and P'(0)
  static const std::map<std::string, std::pair<std::function<double(double)>, double>> table = {
      {"x", {[](double x) { return x; }, 1.0}},
      {"x2", {[](double x) { return x * x; }, 0.0}},
      {"exp2x", {[](double x) { return std::exp(2 * x); }, 2.0}},
  };
  auto it = table.find(o.function);
  if (it == table.end()) throw DomainError("cesaro: --function must be one of x, x2, exp2x");
  Report r;
  r.suite = "cesaro";
  r.input = {{"function", o.function}, {"k", o.k}};
  double value = cesaro_limit(it->second.first, o.k);
  double target = std::log(2.0) * it->second.second;
  r.result = {{"value", num(value)}, {"target", num(target)}, {"error", num(std::abs(value - target))}};
  r.tolerances = {{"absolute", num(o.tolerance)}};
  r.verdict = std::abs(value - target) <= o.tolerance ? "pass" : "fail";
  r.header = {"function", "k", "value", "target"};
  r.rows.push_back({o.function, std::to_string(o.k), fmt(value), fmt(target)});
  return r;
}

void add_common(CLI::App& app, Common& c) {
  app.add_option("--q", c.q, "deformation parameter: decimal, a/b, or q0")->capture_default_str();
  app.add_option("--N", c.N, "dimension N >= 2")->capture_default_str();
  app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--output,-o", c.output, "write the report here instead of standard output");
  app.add_option("--precision-bits", c.precision_bits, "MPFR mantissa width (overrides QGS_PRECISION_BITS)")
      ->check(CLI::Range(32u, 1u << 20));
  app.add_flag("--timing", c.timing, "record wall time in the JSON report");
  app.add_option("--expect", c.expect, "exit 1 unless the verdict equals this value");
  app.add_flag("--table", c.table, "embed the CSV table in JSON output");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification suites for free orthogonal quantum groups", "qgs"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  add_common(app, common);

  std::function<Report()> job;
  auto sub = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };

  SpectrumOpts spec;
  auto* s_spec = sub("spectrum", "Dirichlet eigenvalues with dimensions");
  s_spec->add_option("--alpha-max", spec.alpha_max)->capture_default_str();
  s_spec->callback([&] { job = [&] { return spectrum_suite(common, spec); }; });

  FusionOpts fus;
  auto* s_fus = sub("fusion", "exact dimension sum rules and growth");
  s_fus->add_option("--alpha-max", fus.alpha_max)->capture_default_str();
  s_fus->add_option("--growth-probe", fus.growth_probe)->capture_default_str();
  s_fus->callback([&] { job = [&] { return fusion_suite(common, fus); }; });

  HSOpts hs;
  auto* s_hs = sub("hs-cert", "Hilbert-Schmidt summability certificate");
  s_hs->add_option("--t", hs.t)->capture_default_str();
  s_hs->add_option("--alpha-max", hs.alpha_max)->capture_default_str();
  s_hs->add_option("--ratio-margin", hs.options.ratio_margin)->capture_default_str();
  s_hs->add_option("--term-floor", hs.options.term_floor)->capture_default_str();
  s_hs->add_option("--early-alpha", hs.options.early_alpha)->capture_default_str();
  s_hs->callback([&] { job = [&] { return hs_suite(common, hs); }; });

  GapOpts gs;
  auto* s_gap = sub("gap-scan", "sup of the eigenvalue gap ratio");
  s_gap->add_option("--alpha-max", gs.alpha_max)->capture_default_str();
  s_gap->add_option("--gamma-max", gs.gamma_max)->capture_default_str();
  s_gap->add_option("--tolerance", gs.tolerance)->capture_default_str();
  s_gap->callback([&] { job = [&] { return gap_suite(common, gs); }; });

  JWOpts jw;
  auto* s_jw = sub("jw-verify", "Temperley-Lieb relations, Jones-Wenzl projections, fusion isometries");
  s_jw->add_option("--n-max", jw.n_max)->capture_default_str();
  s_jw->add_option("--fusion-max", jw.fusion_max)->capture_default_str();
  s_jw->callback([&] { job = [&] { return jw_suite(common, jw); }; });

  PentagonOpts pg;
  auto* s_pg = sub("pentagon", "intertwiner defect against q^{alpha+(k-r)/2}");
  s_pg->add_option("--alpha", pg.alpha)->capture_default_str();
  s_pg->add_option("--r", pg.r)->capture_default_str();
  s_pg->add_option("--s", pg.s)->capture_default_str();
  s_pg->add_option("--k", pg.k)->capture_default_str();
  s_pg->add_option("--l", pg.l)->capture_default_str();
  s_pg->add_flag("--no-align", pg.no_align, "skip the phase minimization");
  s_pg->add_option("--max-constant", pg.max_constant)->capture_default_str();
  s_pg->callback([&] { job = [&] { return pentagon_suite(common, pg); }; });

  Lemma65Opts lm;
  auto* s_lm = sub("lemma65", "commutator estimate for r = s = 1");
  s_lm->add_option("--alpha-min", lm.alpha_min)->capture_default_str();
  s_lm->add_option("--alpha-max", lm.alpha_max)->capture_default_str();
  s_lm->add_option("--k", lm.k)->capture_default_str();
  s_lm->add_option("--l", lm.l)->capture_default_str();
  s_lm->callback([&] { job = [&] { return lemma65_suite(common, lm); }; });

  FreeOpts fr;
  auto* s_fr = sub("freeprod-verify", "symbolic free-product identity over all type patterns");
  s_fr->add_option("--n-max", fr.limits.n_max)->capture_default_str();
  s_fr->add_option("--m-max", fr.limits.m_max)->capture_default_str();
  s_fr->add_option("--k-max", fr.limits.k_max)->capture_default_str();
  s_fr->add_option("--algebras", fr.limits.algebras)->check(CLI::Range(1u, 10u))->capture_default_str();
  s_fr->add_option("--threads", fr.threads)->check(CLI::Range(1u, 256u))->capture_default_str();
  s_fr->add_option("--pattern", fr.pattern, "single pattern, e.g. b=01,x=1,a=10 (use - for an empty word)");
  s_fr->callback([&] { job = [&] { return freeprod_suite(common, fr); }; });

  AmenOpts am;
  auto* s_am = sub("amenability", "eigenvalue growth criterion");
  s_am->add_option("--n-max", am.options.n_max)->capture_default_str();
  s_am->add_option("--warmup", am.options.warmup, "0 selects n_max/10")->capture_default_str();
  s_am->add_option("--threshold", am.options.threshold)->capture_default_str();
  s_am->add_option("--checkpoints-per-decade", am.options.checkpoints_per_decade)->capture_default_str();
  s_am->callback([&] { job = [&] { return amenability_suite(common, am); }; });

  CesaroOpts ce;
  auto* s_ce = sub("cesaro", "Cesaro limit against log(2) P'(0)");
  s_ce->add_option("--function", ce.function, "x, x2 or exp2x")->capture_default_str();
  s_ce->add_option("--k", ce.k)->capture_default_str();
  s_ce->add_option("--tolerance", ce.tolerance)->capture_default_str();
  s_ce->callback([&] { job = [&] { return cesaro_suite(common, ce); }; });

  auto error_record = [&err](const char* kind, const std::string& message) {
    err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
  };

  std::vector<const char*> argv{"qgs"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    error_record("usage", e.what());
    return kUsage;
  }

  try {
    auto t0 = std::chrono::steady_clock::now();
    Report r = job();
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::ofstream file;
    if (!common.output.empty()) {
      file.open(common.output);
      if (!file) throw ResourceError("cannot open output file '" + common.output + "'");
    }
    std::ostream& os = common.output.empty() ? out : file;
    if (common.format == "csv") {
      write_csv(r, os);
    } else {
      json doc;
      doc["suite"] = r.suite;
      doc["input"] = r.input;
      doc["result"] = r.result;
      if (!r.tolerances.empty()) doc["tolerances"] = r.tolerances;
      if (!r.verdict.empty()) doc["verdict"] = r.verdict;
      if (common.table) doc["table"] = table_json(r);
      if (common.timing) doc["wall_time_s"] = num(wall);
      os << doc.dump(2) << "\n";
    }
    if (r.verdict == "fail") return kVerdictFailure;
    if (!common.expect.empty() && r.verdict != common.expect) return kVerdictFailure;
    return kPass;
  } catch (const ResourceError& e) {
    error_record("resource", e.what());
    return kResource;
  } catch (const DomainError& e) {
    error_record("usage", e.what());
    return kUsage;
  } catch (const NumericalDegradation& e) {
    error_record("numerical-degradation", e.what());
    return kVerdictFailure;
  } catch (const Error& e) {
    error_record("error", e.what());
    return kVerdictFailure;
  }
}

}  // namespace qgs::cli
