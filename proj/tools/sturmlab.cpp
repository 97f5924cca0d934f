#include <cmath>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "emit.hpp"
#include "sturmlab/approx.hpp"
#include "sturmlab/exponents.hpp"
#include "sturmlab/minima.hpp"
#include "sturmlab/paramgeo.hpp"
#include "sturmlab/xi.hpp"

using namespace sturmlab;
using namespace sturmlab::cli;
using nlohmann::json;

namespace {

struct Outputs {
  json result = json::object();
  std::string csv;  // body with header row
  std::string svg;
};

void emit(const std::string& command, const RunConfig& cfg, const Outputs& out) {
  if (auto p = cfg.output("json"); !p.empty()) write_file(p, envelope(command, cfg, out.result).dump(2) + "\n");
  if (auto p = cfg.output("csv"); !p.empty()) {
    if (out.csv.empty()) std::cerr << "warning: " << command << " has no CSV output\n";
    else write_file(p, config_comment(cfg) + out.csv);
  }
  if (auto p = cfg.output("svg"); !p.empty()) {
    if (out.svg.empty()) std::cerr << "warning: " << command << " has no SVG output\n";
    else write_file(p, out.svg);
  }
}

std::string zstr(const Int& z) { return z.get_str(); }

json exp_json(const ExpValue& v) {
  json j;
  j["kind"] = v.kind_name();
  if (v.known()) {
    j["lo"] = v.lo.to_double();
    j["hi"] = v.hi.to_double();
  }
  if (!v.window.empty()) j["window"] = v.window;
  if (v.low_confidence) j["low_confidence"] = true;
  return j;
}

// δ as forced by the config, else exact zero or the late estimate.
std::pair<BigReal, std::string> pick_delta(const RunConfig& cfg, MatrixSequence& seq) {
  if (cfg.has("delta")) return {BigReal::from_string(cfg.str("delta")), "forced"};
  DeltaReport d = delta_estimate(seq, cfg.integer("delta_depth"));
  if (d.exact_zero) return {BigReal(0L), "exact"};
  return {d.delta_hat, "estimate"};
}

// Early and late halves of a k window, the first k left out.
std::pair<std::pair<long, long>, std::pair<long, long>> halves(long lo, long hi) {
  long mid = (lo + hi + 2) / 2;
  return {{lo + 1, mid - 1}, {mid, hi}};
}

struct Sampled {
  std::vector<MinimaSample> samples;
  mpfr_prec_t bits = 0;
  long i_max = 0;
};

Sampled sample_minima(const RunConfig& cfg, ApproxSeq& ap, const SystemBreakpoints& P,
                      const std::vector<BigReal>& grid) {
  Sampled s;
  const SturmianProgram& prog = ap.prog();
  s.i_max = prog.t(P.k_hi + 1) + 3;
  s.bits = std::max<long>(cfg.integer("precision"), long(4 * P.span_hi().to_double() / std::log(2.0)) + 512);
  XiValue xi = xi_value(ap, s.bits);
  CandidateSet C = CandidateSet::build(ap, xi.u, s.i_max);
  for (const auto& q : grid) s.samples.push_back(minima_candidates(C, q.with_prec(xi.prec), true, &P));
  return s;
}

int cmd_verify(const RunConfig& cfg) {
  SturmianProgram prog = cfg.program();
  MatrixSeed seed = cfg.seed();
  if (seed.TrJN == 0) std::cerr << "warning: " << seed.label() << " is not proper-capable (Tr(JN)=0)\n";
  MatrixSequence seq(seed, prog);
  ApproxSeq ap(seq);
  long K = cfg.integer("up_to");
  if (K < 1) throw UsageError("up_to must be >= 1");
  long i_max = prog.t(K);

  Outputs out;
  IdentityReport ids = verify_identities(ap, i_max);
  std::cout << "seed " << seed.label() << "  program " << prog.spec() << "  indices up to t_" << K << " = " << i_max
            << "\n";
  json jid = json::array();
  for (const auto& c : ids.checks) {
    std::cout << (c.ok ? "  ok   " : "  FAIL ") << c.name << "  (" << c.checked << " checked"
              << (c.ok ? "" : ", first failure at " + std::to_string(c.witness)) << ")\n";
    jid.push_back({{"name", c.name}, {"checked", c.checked}, {"ok", c.ok}, {"witness", c.witness}});
  }

  ContentReport cr = contents_report(ap, i_max);
  std::cout << "contents: " << (cr.all_ok() ? "ok" : "FAIL") << "  max content(y) " << zstr(cr.max_content_y)
            << "  bound " << zstr(cr.bound) << (cr.cor44_hypotheses ? "" : "  (hypotheses of the bound not met)")
            << "\n";
  std::ostringstream csv;
  csv << "i,content_y,y_divides_detN,content_z,z_integral,z_divides_bound\n";
  for (const auto& r : cr.rows)
    csv << r.i << "," << zstr(r.content_y) << "," << r.y_divides_detN << "," << zstr(r.content_z) << ","
        << r.z_integral << "," << r.z_divides_bound << "\n";
  out.csv = csv.str();

  GrowthReport g = check_mult_growth(seq, K);
  std::cout << "growth ratios in [" << fmt(g.ratio_min) << ", " << fmt(g.ratio_max) << "] over " << g.count
            << " products\n";
  DeltaReport d = delta_estimate(seq, std::min(K, cfg.integer("delta_depth")));
  std::cout << "delta " << (d.exact_zero ? std::string("0 (exact)") : d.delta_hat.to_fixed(8)) << "\n";
  if (d.certified_bracket)
    std::cout << "certified bracket [" << d.certified_bracket->first.to_fixed(6) << ", "
              << d.certified_bracket->second.to_fixed(6) << "]\n";

  out.result = {{"seed", seed.label()},
                {"program", prog.spec()},
                {"i_max", i_max},
                {"identities", jid},
                {"identities_ok", ids.all_ok()},
                {"contents_ok", cr.all_ok()},
                {"max_content_y", zstr(cr.max_content_y)},
                {"content_bound", zstr(cr.bound)},
                {"growth", {{"ratio_min", g.ratio_min}, {"ratio_max", g.ratio_max}, {"count", g.count}}},
                {"delta", d.exact_zero ? 0.0 : d.delta_hat.to_double()},
                {"delta_exact_zero", d.exact_zero}};
  emit("verify", cfg, out);
  return ids.all_ok() ? 0 : 1;
}

int cmd_three_system(const RunConfig& cfg) {
  SturmianProgram prog = cfg.program();
  MatrixSeed seed = cfg.seed();
  MatrixSequence seq(seed, prog);
  ApproxSeq ap(seq);
  auto [klo, khi] = cfg.window("k");
  auto [delta, source] = pick_delta(cfg, seq);
  long k0 = cfg.has("k0") ? cfg.integer("k0") : -1;
  SystemBreakpoints P = predicted_system(seq, klo, khi, delta, source, k0);
  BigReal tol = BigReal::from_string(cfg.str("tol"));
  ThreeSystemVerdict v = three_system_verdict(P, tol);

  std::cout << "seed " << seed.label() << "  k " << klo << ":" << khi << "  delta " << delta.to_fixed(8) << " ("
            << source << ")  threshold " << P.threshold.to_fixed(8) << "\n";
  std::cout << "span q in [" << P.span_lo().to_fixed(4) << ", " << P.span_hi().to_fixed(4) << "], "
            << P.pieces.size() << " pieces\n";

  Outputs out;
  out.result = {{"seed", seed.label()},
                {"k", {klo, khi}},
                {"delta", delta.to_double()},
                {"delta_source", source},
                {"threshold", P.threshold.to_double()},
                {"pieces", P.pieces.size()},
                {"valid", v.valid()},
                {"conditions_valid", v.conditions.valid()},
                {"structure_ok", v.structure.ok()},
                {"delta_proper", v.delta_proper}};
  if (!v.valid()) out.result["reason"] = v.reason();

  if (!cfg.flag("no_samples")) {
    auto grid = q_grid(P, P.span_lo(), P.span_hi(), cfg.integer("grid"));
    Sampled s = sample_minima(cfg, ap, P, grid);
    std::ostringstream csv;
    csv << "q,L1,L2,L3,P1,P2,P3,gray\n";
    for (const auto& m : s.samples) {
      auto p = P.P(m.q);
      csv << fmt(m.q.to_double(), 9);
      for (const auto& x : m.L) csv << "," << fmt(x.to_double(), 9);
      for (const auto& x : p) csv << "," << fmt(x.to_double(), 9);
      csv << "," << (m.gray ? 1 : 0) << "\n";
    }
    out.csv = csv.str();
    out.svg = combined_svg(P, s.samples, cfg);
    std::cout << s.samples.size() << " candidate samples (xi at " << s.bits << " bits, indices up to " << s.i_max
              << ")\n";
    if (cfg.flag("bruteforce")) {
      // brute-force oracle on the samples with q <= bf_q_max
      BruteForceOptions bo;
      bo.R_max = cfg.real("radius_cap");
      double q_max = cfg.real("bf_q_max"), gap = 0;
      long n = 0;
      XiValue xi = xi_value(ap, s.bits);
      CandidateSet C = CandidateSet::build(ap, xi.u, s.i_max);
      for (const auto& m : s.samples) {
        if (m.q.to_double() > q_max) continue;
        MinimaSample b = minima_bruteforce(xi.u, m.q.with_prec(xi.prec), bound_hint(C, m.q), bo);
        for (int j = 0; j < 3; ++j) gap = std::max(gap, std::abs((m.L[j] - b.L[j]).to_double()));
        ++n;
      }
      std::cout << "brute force at " << n << " samples with q <= " << fmt(q_max, 2) << ": max |candidate - exact| "
                << fmt(gap, 6) << "\n";
      out.result["bruteforce"] = {{"n", n}, {"q_max", q_max}, {"max_gap", gap}};
    }
    if (khi - klo >= 3) {
      auto [early, late] = halves(klo, khi);
      ComparisonReport rep = compare(P, s.samples, early, late);
      auto win = [](const ComparisonReport::Window& w) {
        return json{{"k", {w.k_lo, w.k_hi}}, {"L1", w.item1}, {"L2_on_I", w.item2_L2}, {"L3_on_I", w.item2_L3},
                    {"n", w.n}};
      };
      std::cout << "max |L1-P1|: early " << fmt(rep.early.item1, 4) << "  late " << fmt(rep.late.item1, 4)
                << "\nmax |L2-P2|, |L3-P3| on I_j: early " << fmt(rep.early.item2_L2, 4) << ", "
                << fmt(rep.early.item2_L3, 4) << "  late " << fmt(rep.late.item2_L2, 4) << ", "
                << fmt(rep.late.item2_L3, 4) << "\ngray constant C " << fmt(rep.C_gray, 4) << " over " << rep.n_gray
                << " samples\nnon-growth: " << (rep.ok() ? "yes" : "no") << "\n";
      out.result["comparison"] = {{"early", win(rep.early)}, {"late", win(rep.late)}, {"C_gray", rep.C_gray},
                                  {"n_gray", rep.n_gray}, {"nongrowth", rep.ok()}};
    }
  }
  emit("three-system", cfg, out);
  if (!v.valid()) {
    std::cout << "not a 3-system: " << v.reason() << "\n";
    return 1;
  }
  std::cout << "valid 3-system\n";
  return 0;
}

int cmd_exponents(const RunConfig& cfg) {
  SturmianProgram prog = cfg.program();
  mpfr_prec_t prec = cfg.integer("precision");
  CFQuantities q = quantities(prog, 64, prec);
  std::optional<MatrixSequence> seq;
  BigReal delta;
  std::string source;
  if (cfg.has("delta") && !cfg.flag("empirical")) {
    delta = BigReal::from_string(cfg.str("delta"), prec);
    source = "forced";
  } else {
    seq.emplace(cfg.seed(), prog);
    std::tie(delta, source) = pick_delta(cfg, *seq);
  }
  ExponentSet cf = closed_form(q, delta);

  std::optional<ExponentSet> em;
  if (cfg.flag("empirical")) {
    auto [klo, khi] = cfg.window("k");
    SystemBreakpoints P = predicted_system(*seq, klo, khi, delta, source);
    long lo = khi - klo >= 3 ? halves(klo, khi).second.first : klo;
    ApproxSeq ap(*seq);
    Sampled s = sample_minima(cfg, ap, P, empirical_abscissas(P, lo, khi));
    em = empirical(P, s.samples, lo, khi);
  }

  std::cout << "sigma " << q.sigma.to_fixed(10) << "  tau " << q.tau.to_fixed(10) << "  sigma' "
            << (q.sigma_prime_infinite ? std::string("inf") : q.sigma_prime.to_fixed(10)) << "  delta "
            << delta.to_fixed(10) << " (" << source << ")\n";
  if (cf.crossover) std::cout << "lower psi_2 exact for delta <= " << cf.crossover->to_fixed(10) << "\n";

  const std::vector<std::pair<const char*, ExpValue ExponentSet::*>> rows = {
      {"psi1_lo", &ExponentSet::psi1_lo},       {"psi1_hi", &ExponentSet::psi1_hi},
      {"psi2_lo", &ExponentSet::psi2_lo},       {"psi2_hi", &ExponentSet::psi2_hi},
      {"psi3_lo", &ExponentSet::psi3_lo},       {"psi3_hi", &ExponentSet::psi3_hi},
      {"omega2", &ExponentSet::omega2},         {"omega2_hat", &ExponentSet::omega2_hat},
      {"lambda2", &ExponentSet::lambda2},       {"lambda2_hat", &ExponentSet::lambda2_hat}};
  Outputs out;
  std::ostringstream csv;
  csv << "exponent,kind,lo,hi,empirical,abs_diff\n";
  std::printf("%-12s %-30s %-12s %s\n", "exponent", "closed form", "empirical", "|diff|");
  json jrows = json::object();
  for (const auto& [name, mem] : rows) {
    const ExpValue& c = cf.*mem;
    json jr = {{"closed_form", exp_json(c)}};
    std::string e = "-", diff = "-";
    if (em && (*em.*mem).known()) {
      const ExpValue& ev = *em.*mem;
      e = ev.lo.to_fixed(6);
      // distance to the closed-form value or interval
      BigReal d = ev.lo < c.lo ? c.lo - ev.lo : (ev.lo > c.hi ? ev.lo - c.hi : BigReal(0L));
      diff = d.to_fixed(6);
      jr["empirical"] = exp_json(ev);
      jr["abs_diff"] = d.to_double();
    }
    std::printf("%-12s %-30s %-12s %s\n", name, c.str(8).c_str(), e.c_str(), diff.c_str());
    csv << name << "," << c.kind_name() << "," << c.lo.to_fixed(12) << "," << c.hi.to_fixed(12) << "," << e << ","
        << diff << "\n";
    jrows[name] = jr;
  }
  if (em && em->psi3_lo_jarnik)
    std::cout << "psi3_lo from psi1_hi via the Jarnik relation: " << em->psi3_lo_jarnik->to_fixed(6) << "\n";
  std::cout << "Jarnik residual (closed form): "
            << jarnik_residual(cf.lambda2_hat.lo, cf.omega2_hat.lo).to_sci(3) << "\n";
  out.csv = csv.str();
  out.result = {{"sigma", q.sigma.to_double()},
                {"tau", q.tau.to_double()},
                {"sigma_prime_infinite", q.sigma_prime_infinite},
                {"delta", delta.to_double()},
                {"delta_source", source},
                {"exponents", jrows}};
  if (!q.sigma_prime_infinite) out.result["sigma_prime"] = q.sigma_prime.to_double();
  if (cf.crossover) out.result["psi2_crossover"] = cf.crossover->to_double();
  emit("exponents", cfg, out);
  return 0;
}

int cmd_xi(const RunConfig& cfg) {
  SturmianProgram prog = cfg.program();
  MatrixSeed seed = cfg.seed();
  MatrixSequence seq(seed, prog);
  ApproxSeq ap(seq);
  long digits = cfg.integer("digits");
  if (digits < 1) throw UsageError("digits must be >= 1");
  long bits = long(std::ceil(digits * std::log2(10.0))) + 16;
  XiValue xi = xi_value(ap, bits);
  std::cout << "xi = " << xi.digits(int(digits)) << "  (y_" << xi.index << ")\n";
  Outputs out;
  out.result = {{"seed", seed.label()},
                {"digits", digits},
                {"xi", xi.value.to_fixed(int(digits))},
                {"index", xi.index},
                {"lo", xi.lo.get_str()},
                {"hi", xi.hi.get_str()}};
  int rc = 0;
  if (seed.family == Family::BL) {
    mpq_class cf = bl_continued_fraction(seed, prog, bits + 32);
    mpz_class ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, digits);
    mpq_class eps(1, ten);
    bool agree = cf >= xi.lo - eps && cf <= xi.hi + eps;
    std::cout << "continued fraction [0; m_phi]: " << (agree ? "agrees" : "DISAGREES") << " to 1e-" << digits << "\n";
    out.result["cf_agrees"] = agree;
    if (!agree) rc = 1;
  }
  Properness pr = properness_check(ap, cfg.integer("delta_depth"));
  std::cout << "delta " << pr.delta_hat.to_fixed(6) << " vs threshold " << pr.threshold.to_fixed(6)
            << "  contents bounded " << (pr.content_bounded ? "yes" : "no") << "  proper "
            << (pr.proper ? "yes" : "no") << "\n";
  out.result["proper"] = pr.proper;
  emit("xi", cfg, out);
  return rc;
}

int cmd_gray(const RunConfig& cfg) {
  SturmianProgram prog = cfg.program();
  MatrixSeed seed = cfg.seed();
  MatrixSequence seq(seed, prog);
  ApproxSeq ap(seq);
  GrayFan g = gray_fan(ap, cfg.integer("i"));
  std::cout << "i " << g.i << "  Tr(w_{i+1}) " << zstr(g.t_next) << "  det(w_{i+1}) " << zstr(g.d_next)
            << "  lambda " << zstr(g.lambda) << "\n";
  std::ostringstream csv;
  csv << "m,a,p,q,x0,x1,x2,content\n";
  json pts = json::array();
  for (const auto& p : g.pts) {
    csv << p.m << "," << zstr(p.a) << "," << zstr(p.p) << "," << zstr(p.q) << "," << zstr(p.x.x0) << ","
        << zstr(p.x.x1) << "," << zstr(p.x.x2) << "," << zstr(p.content) << "\n";
    pts.push_back({{"m", p.m}, {"x", {zstr(p.x.x0), zstr(p.x.x1), zstr(p.x.x2)}}, {"content", zstr(p.content)}});
    std::cout << "  x_" << p.m << " = " << p.x.str() << "  content " << zstr(p.content) << "\n";
  }
  const std::vector<std::pair<const char*, bool>> flags = {
      {"endpoints", g.endpoints_ok},          {"recurrence", g.recurrence_ok},
      {"wedge", g.wedge_ok},                  {"content product divides d_i", g.content_product_ok},
      {"content product divides wedge", g.content_product_wedge_ok},
      {"content gcd", g.content_gcd_ok},      {"decomposition", g.decomposition_ok}};
  json jf = json::object();
  for (const auto& [n, ok] : flags) {
    std::cout << (ok ? "  ok   " : "  FAIL ") << n << "\n";
    jf[n] = ok;
  }
  Outputs out;
  out.csv = csv.str();
  out.result = {{"i", g.i}, {"points", pts}, {"checks", jf}, {"all_ok", g.all_ok()}};
  emit("gray", cfg, out);
  return g.all_ok() ? 0 : 1;
}

int cmd_spectrum(const RunConfig& cfg) {
  mpfr_prec_t prec = cfg.integer("precision");
  Outputs out;
  bool any = false;
  if (cfg.flag("endpoints") || (!cfg.has("sweep") && !cfg.has("curve"))) {
    any = true;
    json je = json::array();
    for (const auto& e : spectrum_endpoints(prec)) {
      std::cout << e.label << " = " << e.exact.str() << " = " << e.value.to_fixed(15) << "\n";
      je.push_back({{"label", e.label}, {"exact", e.exact.str()}, {"value", e.value.to_double()}});
    }
    json ji = json::array();
    std::cout << "closure of the spectrum of omega_2 over Fibonacci-type programs:\n";
    for (const auto& [lo, hi] : spectrum_intervals()) {
      std::cout << "  [" << lo.str() << ", " << (hi ? hi->str() : std::string("inf")) << "]\n";
      ji.push_back({{"lo", lo.str()}, {"hi", hi ? hi->str() : std::string("inf")}});
    }
    out.result["endpoints"] = je;
    out.result["intervals"] = ji;
  }
  std::ostringstream csv;
  if (cfg.has("sweep")) {
    any = true;
    SturmianProgram prog = cfg.program();
    long kmax = cfg.integer("sweep");
    SweepReport R = omega2_sweep(prog, recipe_triples(kmax), cfg.flag("estimate") ? cfg.integer("delta_depth") : 0);
    csv << "a,b,c,delta_lo,delta_hi,proper,omega2_lo,omega2_hi,delta_hat,in_bracket,error\n";
    json rows = json::array();
    for (const auto& r : R.rows) {
      csv << r.a << "," << r.b << "," << r.c << "," << fmt(r.bracket.first.to_double(), 9) << ","
          << fmt(r.bracket.second.to_double(), 9) << "," << r.proper << "," << fmt(r.omega2.first.to_double(), 9)
          << "," << fmt(r.omega2.second.to_double(), 9) << ","
          << (r.delta_hat ? fmt(r.delta_hat->to_double(), 9) : std::string()) << "," << r.in_bracket << ","
          << r.error << "\n";
      json jr = {{"abc", {r.a, r.b, r.c}},
                 {"delta_bracket", {r.bracket.first.to_double(), r.bracket.second.to_double()}},
                 {"proper", r.proper},
                 {"omega2", {r.omega2.first.to_double(), r.omega2.second.to_double()}}};
      if (r.delta_hat) jr["delta_hat"] = r.delta_hat->to_double(), jr["in_bracket"] = r.in_bracket;
      if (!r.error.empty()) jr["error"] = r.error;
      rows.push_back(jr);
    }
    long proper = std::count_if(R.rows.begin(), R.rows.end(), [](const SweepRow& r) { return r.proper; });
    std::cout << R.rows.size() << " recipe triples (k <= " << kmax << "), " << proper
              << " certified proper\nmax gap in delta over [0, " << R.threshold.to_fixed(6)
              << "]: " << R.delta_max_gap.to_fixed(6) << "\nmax gap in omega_2: " << R.omega_max_gap.to_fixed(6)
              << "\n";
    out.result["sweep"] = {{"sigma", R.sigma.to_double()},
                           {"threshold", R.threshold.to_double()},
                           {"rows", rows},
                           {"delta_max_gap", R.delta_max_gap.to_double()},
                           {"omega_max_gap", R.omega_max_gap.to_double()}};
  }
  if (cfg.has("curve")) {
    any = true;
    SturmianProgram prog = cfg.program();
    CFQuantities q = quantities(prog, 64, prec);
    BigReal c_lo = BigReal::from_string(cfg.has("c_lo") ? cfg.str("c_lo") : "0", prec);
    auto pts = joint_curve(q.sigma, c_lo, cfg.integer("curve"));
    json jc = json::array();
    for (const auto& p : pts)
      jc.push_back({p[0].to_double(), p[1].to_double(), p[2].to_double(), p[3].to_double()});
    std::cout << pts.size() << " points on the joint curve (lambda2, lambda2_hat, omega2, omega2_hat)\n";
    out.result["joint_curve"] = jc;
  }
  if (!any) throw UsageError("nothing to do");
  out.csv = csv.str();
  emit("spectrum", cfg, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sturmian-type numbers: exact identities, exponents and parametric geometry of numbers"};
  app.require_subcommand(1);
  app.fallthrough();

  // Flag values land in `given` and override the config file after parsing.
  std::map<std::string, std::string> given;
  struct Bound {
    std::string key;
    CLI::Option* opt;
    bool is_flag;
  };
  std::vector<Bound> opts;
  auto value = [&](CLI::App* a, const std::string& flag, const std::string& key, const std::string& help) {
    opts.push_back({key, a->add_option(flag, given[key], help), false});
  };
  auto toggle = [&](CLI::App* a, const std::string& flag, const std::string& key, const std::string& help) {
    opts.push_back({key, a->add_flag(flag, help), true});
  };

  std::string config_file;
  app.add_option("--config", config_file, "key=value configuration file");
  value(&app, "--precision", "precision", "working precision in bits");
  value(&app, "--seed-file", "seed_file", "JSON seed: {family, abc|ab, s1} or {w0, w1}");
  value(&app, "--out-dir", "out_dir", "directory for output files");
  value(&app, "--json", "json", "write a JSON report");
  value(&app, "--csv", "csv", "write a CSV table");
  value(&app, "--svg", "svg", "write an SVG plot");
  value(&app, "--program", "program", "Sturmian program, e.g. prefix=[-1,1];period=[1]");
  value(&app, "--family", "family", "roy or bl");
  value(&app, "--abc", "abc", "Roy triple a,b,c");
  value(&app, "--ab", "ab", "Bugeaud-Laurent pair a,b");
  value(&app, "--s1", "s1", "Bugeaud-Laurent s1'");
  value(&app, "--delta-depth", "delta_depth", "k used for the delta estimate");

  auto* verify = app.add_subcommand("verify", "check the exact identities and contents");
  value(verify, "--up-to", "up_to", "check indices up to t_K");

  auto* three = app.add_subcommand("three-system", "build and validate the predicted 3-system");
  value(three, "--k", "k", "k window lo:hi");
  value(three, "--delta", "delta", "force delta");
  value(three, "--k0", "k0", "anchor index for W");
  value(three, "--tol", "tol", "validity tolerance");
  value(three, "--grid", "grid", "uniform q samples added to the breakpoints");
  toggle(three, "--no-samples", "no_samples", "skip the minima samples");
  toggle(three, "--bruteforce", "bruteforce", "check the samples against brute-force minima");
  value(three, "--bf-q-max", "bf_q_max", "largest q checked by brute force");
  value(three, "--radius-cap", "radius_cap", "brute-force radius cap");

  auto* expo = app.add_subcommand("exponents", "closed-form and empirical exponents");
  value(expo, "--delta", "delta", "force delta");
  value(expo, "--k", "k", "k window lo:hi for --empirical");
  toggle(expo, "--empirical", "empirical", "estimate the exponents from candidate minima");

  auto* xi = app.add_subcommand("xi", "digits of xi");
  value(xi, "--digits", "digits", "decimal digits");

  auto* gray = app.add_subcommand("gray", "gray-area points for index i");
  value(gray, "--i", "i", "index i");

  auto* spec = app.add_subcommand("spectrum", "spectrum endpoints, delta sweep, joint curve");
  toggle(spec, "--endpoints", "endpoints", "endpoint table and closure intervals");
  value(spec, "--sweep", "sweep", "recipe triples with k <= K");
  toggle(spec, "--estimate", "estimate", "estimate delta for every swept triple");
  value(spec, "--curve", "curve", "points on the joint curve");
  value(spec, "--c-lo", "c_lo", "left end of the joint curve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    RunConfig cfg = RunConfig::defaults();
    if (!config_file.empty()) cfg.load_file(config_file);
    for (const auto& b : opts)
      if (b.opt->count() > 0) cfg.set(b.key, b.is_flag ? "1" : given[b.key]);

    if (verify->parsed()) return cmd_verify(cfg);
    if (three->parsed()) return cmd_three_system(cfg);
    if (expo->parsed()) return cmd_exponents(cfg);
    if (xi->parsed()) return cmd_xi(cfg);
    if (gray->parsed()) {
      if (!cfg.has("i")) throw UsageError("gray needs --i");
      return cmd_gray(cfg);
    }
    if (spec->parsed()) return cmd_spectrum(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << (e.code() == Errc::Parse ? "usage error: " : "error: ") << e.what() << "\n";
    return e.code() == Errc::Parse ? 2 : 1;
  }
  return 2;
}
