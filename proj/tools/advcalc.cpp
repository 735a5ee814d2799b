#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "advcalc/errors.hpp"
#include "advcalc/gauge.hpp"
#include "advcalc/io.hpp"
#include "advcalc/morphology.hpp"
#include "advcalc/optimize.hpp"
#include "advcalc/render.hpp"
#include "advcalc/risk.hpp"
#include "advcalc/strings.hpp"
#include "advcalc/suite.hpp"

namespace {

using namespace advcalc;
using io::json;
namespace fs = std::filesystem;

struct Globals {
  std::uint64_t seed = 7;
  std::string out;
  std::string format = "csv";
  std::string config;
};

struct Args {
  std::string op, eps = "0", norm, in, set, dist, mode, body, x, v, probe = "none", name = "all", inject, alphabet,
              maxlen = "3", swaps, strings_set, domain;
  std::vector<std::string> family;
  std::size_t cells = 8, samples = 10000, max_iters = 1000, scale = 8;
  std::optional<std::size_t> cases;
  unsigned threads = 0;
  bool literal = false;
  std::string witness;
};

Rational radius(const std::string& text) {
  Rational r = parse_rational(text);
  if (r < 0) throw ParseError("eps must be nonnegative, got '" + text + "'");
  return r;
}

std::string decimal(const Rational& r) { return suite::format_double(r.get_d()); }

std::vector<double> doubles(const std::string& csv) {
  std::vector<double> out;
  for (const auto& r : parse_rational_list(csv)) out.push_back(r.get_d());
  return out;
}

gauge::Vec as_vec(const std::vector<double>& v) {
  gauge::Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

IntervalContext line_context(const Args& a) {
  IntervalContext ctx{parse_norm(a.norm.empty() ? "l1" : a.norm, 1), radius(a.eps), std::nullopt};
  if (!a.domain.empty()) {
    auto lohi = parse_rational_list(a.domain);
    if (lohi.size() != 2 || lohi[0] > lohi[1]) throw ParseError("--domain expects lo,hi");
    ctx.domain = Interval::closed(lohi[0], lohi[1]);
  }
  return ctx;
}

GridContext grid_context(const Args& a, const GridSet& g) {
  if (!a.domain.empty()) throw ParseError("--domain applies to interval sets only");
  return {parse_norm(a.norm.empty() ? "l2" : a.norm, g.dimension()), radius(a.eps), std::nullopt};
}

std::string require(const std::string& value, const char* flag) {
  if (value.empty()) throw ParseError(std::string("missing ") + flag);
  return value;
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
  } else {
    io::write_text(g.out, text);
  }
}

int cmd_morph(const Globals& g, const Args& a) {
  const MorphOp op = parse_morph_op(require(a.op, "--op"));
  const fs::path in = require(a.in, "--in");
  if (io::is_grid_path(in)) {
    const GridSet s = io::read_grid(in);
    const GridSet r = apply(op, s, grid_context(a, s));
    std::cout << r.count() << " cells\n";
    if (!g.out.empty()) io::write_grid(g.out, r.box().volume() ? r : s.reboxed(s.box()));
  } else {
    const IntervalSet r = apply(op, io::interval_set_from_json(io::read_json(in)), line_context(a));
    std::cout << r.to_string() << "\n";
    if (!g.out.empty()) io::write_json(g.out, io::to_json(r));
  }
  return 0;
}

template <class Set, class Ctx>
int identity_table(const Globals& g, const std::vector<Set>& sets, const Ctx& ctx, const char* ext) {
  const auto report = finite_family_identities(sets, ctx);
  std::ostringstream csv;
  csv << "identity,status,witness_file\n";
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const auto& c = report.checks[i];
    std::string witness;
    if (!c.holds && !g.out.empty()) {
      witness = "witnesses/identity_" + std::to_string(i) + ext;
      if constexpr (std::is_same_v<Set, GridSet>) {
        io::write_grid(fs::path(g.out) / witness, c.witness);
      } else {
        io::write_json(fs::path(g.out) / witness, io::to_json(c.witness));
      }
    }
    csv << io::csv_field(c.name) << ',' << (c.holds ? "pass" : "fail") << ',' << witness << '\n';
  }
  if (g.out.empty()) {
    std::cout << csv.str();
  } else {
    io::write_text(fs::path(g.out) / "identities.csv", csv.str());
  }
  return report.all_hold() ? 0 : 1;
}

int cmd_check_identities(const Globals& g, const Args& a) {
  if (a.family.empty()) throw ParseError("missing --family");
  if (io::is_grid_path(a.family.front())) {
    std::vector<GridSet> sets;
    for (const auto& f : a.family) sets.push_back(io::read_grid(f));
    return identity_table(g, sets, grid_context(a, sets.front()), ".pbm");
  }
  std::vector<IntervalSet> sets;
  for (const auto& f : a.family) sets.push_back(io::interval_set_from_json(io::read_json(f)));
  return identity_table(g, sets, line_context(a), ".json");
}

int cmd_risk(const Globals&, const Args& a) {
  const fs::path set = require(a.set, "--set");
  const auto d = io::distribution_from_json(io::read_json(require(a.dist, "--dist")));
  const RiskMode mode = a.mode.empty() ? RiskMode::kMorphology : parse_risk_mode(a.mode);
  Rational adv, std_risk;
  if (io::is_grid_path(set)) {
    const GridSet s = io::read_grid(set);
    adv = adversarial_risk(s, d, grid_context(a, s), mode);
    std_risk = standard_risk(s, d);
  } else {
    const IntervalSet s = io::interval_set_from_json(io::read_json(set));
    adv = adversarial_risk(s, d, line_context(a), mode);
    std_risk = standard_risk(s, d);
  }
  std::cout << "adversarial_risk " << to_string(adv) << " " << decimal(adv) << "\n";
  std::cout << "standard_risk " << to_string(std_risk) << " " << decimal(std_risk) << "\n";
  std::cout << "bayes_risk " << to_string(d.bayes_risk()) << " " << decimal(d.bayes_risk()) << "\n";
  return 0;
}

// 1-D: `cells` points spanning the atoms. 2-D: a cells x cells patch whose
// corners are the atoms' bounding box.
SearchInstance search_instance(const Args& a) {
  const auto d = io::distribution_from_json(io::read_json(require(a.dist, "--dist")));
  const Rational eps = radius(a.eps);
  if (a.cells < 2) throw ParseError("--cells must be at least 2");
  const std::size_t dim = d.atoms().front().x.dimension();
  std::vector<Rational> lo(dim), hi(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    lo[i] = hi[i] = d.atoms().front().x[i];
    for (const auto& atom : d.atoms()) {
      lo[i] = std::min(lo[i], atom.x[i]);
      hi[i] = std::max(hi[i], atom.x[i]);
    }
  }
  if (dim == 1) {
    if (lo[0] == hi[0]) hi[0] = lo[0] + 1;
    SearchInstance inst = SearchInstance::on_segment(lo[0], hi[0], a.cells, d, eps);
    if (!a.norm.empty()) inst.norm = parse_norm(a.norm, 1);
    return inst;
  }
  if (dim != 2) throw DimensionMismatch("optimize supports 1-D and 2-D distributions");
  Rational span = std::max(Rational(hi[0] - lo[0]), Rational(hi[1] - lo[1]));
  if (span == 0) span = 1;
  const Rational cell = span / static_cast<long>(a.cells - 1);
  const auto n = static_cast<std::int64_t>(a.cells);
  return {Lattice{lo, cell}, GridBox{{0, 0}, {n, n}}, d, parse_norm(a.norm.empty() ? "l2" : a.norm, 2), eps};
}

int cmd_optimize(const Globals& g, const Args& a) {
  const SearchInstance inst = search_instance(a);
  const std::string mode = a.mode.empty() ? "oracle" : a.mode;
  SearchResult r;
  json extra = json::object();
  if (mode == "oracle") {
    r = oracle_search(inst, a.threads);
  } else if (mode == "greedy") {
    GridSet start = bayes_classifier(inst.dist, inst.lattice).reboxed(inst.domain);
    r = greedy_flip_descent(inst, start, a.max_iters);
  } else if (mode == "pipeline") {
    const auto rep = mollified_optimality_check(inst, a.threads);
    r = rep.oracle;
    extra = {{"mollified_set", io::to_json(rep.mollified)},
             {"mollified_risk", to_string(rep.mollified_risk)},
             {"risk_equal", rep.risk_equal},
             {"pseudo_robust", rep.pseudo_robust}};
  } else {
    throw ParseError("--mode must be oracle, greedy or pipeline");
  }
  std::cout << "best_risk " << to_string(r.best_risk) << " " << decimal(r.best_risk) << "\n";
  if (g.out.empty()) return 0;

  const fs::path out = g.out;
  const fs::path trace = fs::path(out).replace_extension(".trace.csv");
  std::ostringstream csv;
  csv << "iteration,risk\n";
  for (const auto& t : r.trace) csv << t.iteration << ',' << to_string(t.risk) << '\n';
  io::write_text(trace, csv.str());
  json result = {{"mode", mode},
                 {"cells", inst.cells()},
                 {"best_set", io::to_json(r.best_set)},
                 {"best_risk", to_string(r.best_risk)},
                 {"best_risk_decimal", r.best_risk.get_d()},
                 {"optimal", r.optimal},
                 {"trace", trace.filename().string()}};
  result.update(extra);
  io::write_json(out, result);
  return 0;
}

int cmd_gauge(const Globals& g, const Args& a) {
  const auto body = io::body_from_json(io::read_json(require(a.body, "--body")));
  if (a.probe == "none") {
    const gauge::Vec x = as_vec(doubles(require(a.x, "--x"))), v = as_vec(doubles(require(a.v, "--v")));
    const auto [tmin, tmax] = gauge::line_range(body, x, v);
    std::cout << "lambda " << suite::format_double(tmax) << "\n";
    std::cout << "range " << suite::format_double(tmin) << " " << suite::format_double(tmax) << "\n";
    return 0;
  }
  std::vector<gauge::ProbeRow> rows;
  bool passed = false;
  if (a.probe == "concavity") {
    auto rep = gauge::concavity_probe(body, a.samples, g.seed);
    rows = std::move(rep.rows);
    passed = rep.passed;
    std::cout << "max_violation " << suite::format_double(rep.max_violation) << "\n";
  } else if (a.probe == "semicontinuity") {
    const gauge::Vec x = as_vec(doubles(require(a.x, "--x"))), v = as_vec(doubles(require(a.v, "--v")));
    const gauge::Vec z = body.is_polytope() ? body.as_polytope().interior_point() : body.as_ball().center;
    std::vector<gauge::Vec> path;
    for (int n = 0; n < 48; ++n) path.push_back(x + std::ldexp(1.0, -n) * (z - x));
    auto rep = gauge::semicontinuity_probe(body, path, x, v);
    rows = std::move(rep.rows);
    passed = rep.passed;
    std::cout << "final_gap " << suite::format_double(rep.final_gap) << "\n";
  } else {
    throw ParseError("--probe must be none, concavity or semicontinuity");
  }
  std::ostringstream csv;
  csv << "sample,lhs,rhs,violation\n";
  for (const auto& r : rows) {
    csv << r.sample << ',' << suite::format_double(r.lhs) << ',' << suite::format_double(r.rhs) << ','
        << suite::format_double(r.violation) << '\n';
  }
  if (g.out.empty()) {
    std::cout << csv.str();
  } else {
    io::write_text(fs::path(g.out) / (a.probe + ".csv"), csv.str());
  }
  return passed ? 0 : 1;
}

strings::StringSet parse_strings(const std::string& csv) {
  strings::StringSet out;
  std::stringstream in(csv);
  for (std::string w; std::getline(in, w, ',');) out.insert(w);
  return out;
}

int cmd_strings(const Globals&, const Args& a) {
  const auto u = strings::StringUniverse::make(require(a.alphabet, "--alphabet"), std::stoul(a.maxlen));
  const auto b = strings::SwapFamily::parse(require(a.swaps, "--swaps"), !a.literal);
  const std::string mode = a.mode.empty() ? "risk" : a.mode;
  if (mode == "identities") {
    bool ok = true;
    for (const auto& p : b.pairs) {
      for (const auto& w : u.all()) ok = ok && strings::swap_apply(p, strings::swap_apply(p, w)) == w;
    }
    std::cout << "involution " << (ok ? "pass" : "fail") << "\n";
    return ok ? 0 : 1;
  }
  const auto d = io::string_distribution_from_json(io::read_json(require(a.dist, "--dist")));
  if (mode == "risk") {
    const auto s = parse_strings(a.strings_set);
    const Rational r = strings::string_adversarial_risk(s, d, b, u);
    std::cout << "adversarial_risk " << to_string(r) << " " << decimal(r) << "\n";
    return 0;
  }
  if (mode == "oracle") {
    const auto r = strings::string_oracle_search(d, b, u);
    std::cout << "best_risk " << to_string(r.best_risk) << " " << decimal(r.best_risk) << "\n";
    std::string members;
    for (const auto& w : r.best_set) members += (members.empty() ? "" : ",") + ("\"" + w + "\"");
    std::cout << "best_set {" << members << "}\n";
    return 0;
  }
  throw ParseError("--mode must be risk, oracle or identities");
}

int cmd_suite(const Globals& g, const Args& a) {
  suite::SuiteOptions opts;
  opts.seed = g.seed;
  opts.cases = a.cases;
  opts.threads = a.threads;
  if (!a.inject.empty()) opts.inject = a.inject;
  const auto format = suite::parse_format(g.format);
  suite::SuiteResult all{a.name, {}};
  const std::vector<std::string> names = a.name == "all" ? suite::suite_names() : std::vector<std::string>{a.name};
  for (const auto& n : names) {
    auto o = opts;
    if (a.name == "all" && opts.inject) {
      // inject into whichever suite owns the family
      try {
        suite::generate_suite(n, {opts.seed, 1, opts.inject, 1});
      } catch (const Error&) {
        o.inject.reset();
      }
    }
    auto r = suite::run_suite(n, o);
    for (auto& f : r.families) all.families.push_back(std::move(f));
  }
  const fs::path out = g.out.empty() ? fs::path("advcalc_out") : fs::path(g.out);
  const int code = suite::write_suite(all, out, format);
  for (const auto& f : all.families) {
    std::cout << f.label() << " cases=" << f.cases << " failures=" << f.failures << "\n";
  }
  return code;
}

int cmd_render(const Globals& g, const Args& a) {
  const fs::path in = require(a.in, "--in");
  if (io::is_grid_path(in)) {
    const GridSet s = io::read_grid(in);
    emit(g, render_ppm(s, grid_context(a, s), static_cast<int>(a.scale)));
  } else {
    emit(g, render_svg(io::interval_set_from_json(io::read_json(in)), line_context(a)));
  }
  return 0;
}

int cmd_replay(const Globals&, const Args& a) {
  const auto r = suite::replay_witness(require(a.witness, "witness path"));
  std::cout << r.message;
  if (r.status != suite::ReplayStatus::kMalformed) std::cout << ": lhs=" << r.outcome.lhs << " rhs=" << r.outcome.rhs;
  std::cout << "\n";
  return static_cast<int>(r.status);
}

// Values from a JSON config object override the parsed flags of the same name.
void apply_config(CLI::App& app, CLI::App* sub, const std::string& path) {
  const json cfg = io::read_json(path);
  if (!cfg.is_object()) throw ParseError("config must be a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    CLI::Option* opt = nullptr;
    for (CLI::App* scope : {sub, &app}) {
      if (!opt && scope) {
        try {
          opt = scope->get_option("--" + key);
        } catch (const CLI::OptionNotFound&) {
        }
      }
    }
    if (!opt) throw ParseError("unknown config key '" + key + "'");
    std::vector<std::string> values;
    for (const auto& v : value.is_array() ? value : json::array({value})) {
      values.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    opt->clear();
    opt->add_result(values);
    opt->run_callback();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact adversarial set calculus: morphology, risk, search, gauges and property suites"};
  app.require_subcommand(1);
  Globals g;
  Args a;
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--out", g.out, "output file or directory");
  app.add_option("--format", g.format, "table format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--config", g.config, "JSON object overriding flags");

  auto common = [&](CLI::App* s) {
    s->fallthrough();
    s->add_option("--eps", a.eps, "radius (rational)");
    s->add_option("--norm", a.norm, "norm tag: l1, l2, linf, wlinf:w1,w2, poly:...");
  };
  auto* morph = app.add_subcommand("morph", "apply a morphological operator");
  common(morph);
  morph->add_option("--op", a.op, "dilate|erode|open|close|fringe|mollify");
  morph->add_option("--in", a.in, "interval-set JSON or PBM grid");
  morph->add_option("--domain", a.domain, "lo,hi window for 1-D sets");

  auto* ids = app.add_subcommand("check-identities", "family identities for a list of sets");
  common(ids);
  ids->add_option("--family", a.family, "set files")->expected(1, -1);
  ids->add_option("--domain", a.domain, "lo,hi window for 1-D sets");

  auto* risk = app.add_subcommand("risk", "exact adversarial risk of a set");
  common(risk);
  risk->add_option("--set", a.set, "set file");
  risk->add_option("--dist", a.dist, "distribution JSON");
  risk->add_option("--mode", a.mode, "morphology|distance");
  risk->add_option("--domain", a.domain, "lo,hi window for 1-D sets");

  auto* opt = app.add_subcommand("optimize", "adversarial Bayes classifier search on a lattice");
  common(opt);
  opt->add_option("--mode", a.mode, "oracle|greedy|pipeline");
  opt->add_option("--dist", a.dist, "distribution JSON");
  opt->add_option("--cells", a.cells, "lattice points per axis");
  opt->add_option("--threads", a.threads, "oracle threads (0: all cores)");
  opt->add_option("--max-iters", a.max_iters, "greedy iteration cap");

  auto* gg = app.add_subcommand("gauge", "lambda_C(x, v) and its probes");
  gg->fallthrough();
  gg->add_option("--body", a.body, "convex body JSON");
  gg->add_option("--x", a.x, "point, comma separated");
  gg->add_option("--v", a.v, "direction, comma separated");
  gg->add_option("--probe", a.probe, "none|concavity|semicontinuity");
  gg->add_option("--samples", a.samples, "probe samples");

  auto* str = app.add_subcommand("strings", "string-swap perturbation model");
  str->fallthrough();
  str->add_option("--alphabet", a.alphabet, "symbols, at most 4");
  str->add_option("--maxlen", a.maxlen, "longest string, at most 5");
  str->add_option("--swaps", a.swaps, "pairs such as 1,2;2,3");
  str->add_option("--dist", a.dist, "string distribution JSON");
  str->add_option("--mode", a.mode, "risk|oracle|identities");
  str->add_option("--set", a.strings_set, "comma separated members of A (risk mode)");
  str->add_flag("--literal", a.literal, "leave the identity out of the swap family");

  auto* su = app.add_subcommand("suite", "run a property suite");
  su->fallthrough();
  su->add_option("--name", a.name, "identities|grid|risk|optimize|gauge|strings|all");
  su->add_option("--cases", a.cases, "cases per random family");
  su->add_option("--inject", a.inject, "family whose first case is forced to fail");
  su->add_option("--threads", a.threads, "worker threads (0: all cores)");

  auto* render = app.add_subcommand("render", "SVG (1-D) or PPM (2-D) of A, A^eps and A^-eps");
  common(render);
  render->add_option("--in", a.in, "interval-set JSON or PBM grid");
  render->add_option("--scale", a.scale, "pixels per grid cell");

  auto* replay = app.add_subcommand("replay", "re-evaluate a suite witness (0 holds, 1 reproduced, 2 malformed)");
  replay->fallthrough();
  replay->add_option("witness", a.witness, "witness JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!g.config.empty()) apply_config(app, sub, g.config);
    const std::map<std::string, int (*)(const Globals&, const Args&)> commands{
        {"morph", cmd_morph},   {"check-identities", cmd_check_identities},
        {"risk", cmd_risk},     {"optimize", cmd_optimize},
        {"gauge", cmd_gauge},   {"strings", cmd_strings},
        {"suite", cmd_suite},   {"render", cmd_render},
        {"replay", cmd_replay}};
    return commands.at(sub->get_name())(g, a);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
