#include "tickcheck/cli.hpp"

#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "tickcheck/bundled.hpp"
#include "tickcheck/checker.hpp"
#include "tickcheck/errors.hpp"
#include "tickcheck/mtl.hpp"
#include "tickcheck/trace.hpp"

namespace tickcheck::cli {

namespace {

struct Common {
  std::string model;
  std::string init = "default";
  std::vector<std::string> params;
  std::string sampling = "maximal";
  std::string time_bound;
  std::optional<std::size_t> step_bound;
  std::optional<std::size_t> state_bound;
  std::size_t zeno_limit = 10000;
  std::size_t jobs = 1;
  std::string format = "text";
  bool project = false;
};

struct Property {
  std::string p, q, r;
  bool with_liveness = false;
  std::string emit;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("model", c.model, "model file, or bundled model name")->required();
  cmd->add_option("--init", c.init, "initial state name");
  cmd->add_option("--param", c.params, "constant override name=value")->take_all();
  cmd->add_option("--sampling", c.sampling, "maximal, maximal:<d> or fixed:<d>");
  cmd->add_option("--time-bound", c.time_bound, "stop exploring past this elapsed time");
  cmd->add_option("--step-bound", c.step_bound, "stop exploring past this many steps");
  cmd->add_option("--state-bound", c.state_bound, "stop after this many distinct states");
  cmd->add_option("--zeno-limit", c.zeno_limit, "max consecutive zero-duration steps");
  cmd->add_option("--jobs", c.jobs, "worker threads for successor generation");
  cmd->add_option("--format", c.format, "text or json-trace")->check(CLI::IsMember({"text", "json-trace"}));
  cmd->add_flag("--project", c.project, "strip the observer clock from reported states");
}

struct Loaded {
  Model model;
  Configuration init;
};

Loaded load(const Common& c) {
  ParseOptions opts;
  for (const auto& kv : c.params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--param", "expected name=value, got '" + kv + "'");
    opts.params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  ModelSource src = find_model(c.model);
  Model m = parse_model(src.text, opts);
  Configuration init = m.init(c.init);
  return {std::move(m), std::move(init)};
}

SearchOptions search_options(const Common& c) {
  SearchOptions o;
  o.strategy = SamplingStrategy::parse(c.sampling);
  if (!c.time_bound.empty()) o.time_bound = TimeValue::parse(c.time_bound);
  o.step_bound = c.step_bound;
  o.state_bound = c.state_bound;
  o.zeno_limit = c.zeno_limit;
  o.jobs = c.jobs;
  return o;
}

int exit_code(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Satisfied:
      return Satisfied;
    case Verdict::Kind::Counterexample:
      return Counterexample;
    case Verdict::Kind::BoundReached:
      return Unknown;
    case Verdict::Kind::PreconditionFailed:
      return PreconditionFailed;
  }
  return Unknown;
}

TimedPath projected(const TimedPath& path) {
  TimedPath out;
  out.initial = project(path.initial);
  for (const auto& s : path.steps) out.steps.push_back(Step{s.label, s.duration, project(s.target), s.rule});
  out.end = path.end;
  return out;
}

bool has_clock(const TimedPath& path) {
  for (const auto& o : path.initial.config.objects()) {
    if (o.cls == kClockClass) return true;
  }
  return false;
}

void report(const Common& c, const Model& model, const std::string& property, const Verdict& v, std::ostream& out) {
  bool show_path = v.kind == Verdict::Kind::Counterexample || v.kind == Verdict::Kind::PreconditionFailed;
  bool clocked = show_path && has_clock(v.path);
  TimedPath path = c.project && clocked ? projected(v.path) : v.path;
  if (c.format == "json-trace") {
    TraceHeader h{model_hash(model), property, SamplingStrategy::parse(c.sampling).str(), to_string(v.kind)};
    out << json_trace(h, show_path ? path : TimedPath{}, v.loop_start);
    return;
  }
  switch (v.kind) {
    case Verdict::Kind::Satisfied:
      out << "Property satisfied\n" << v.message << "\n";
      return;
    case Verdict::Kind::BoundReached:
      out << "No counterexample within bounds\n" << v.message << "\n";
      return;
    case Verdict::Kind::PreconditionFailed:
      out << "Precondition failed: " << v.message << "\nWitness path:\n" << render_path(path);
      return;
    case Verdict::Kind::Counterexample:
      out << "Property not satisfied\n";
      if (!v.message.empty() && v.loop_start) out << v.message << "\n";
      out << "Counterexample path:\n" << render_path(path, v.loop_start);
      if (clocked) {
        ClockReading clk = read_clock(v.path.last().config);
        out << "observer clock: " << clk.value.str() << (clk.on ? " (on)" : " (off)") << "\n";
      }
      return;
  }
}

int check_property(bool br, const Common& c, const Property& prop, std::ostream& out) {
  Loaded l = load(c);
  SearchOptions opts = search_options(c);
  Proposition p = parse_proposition(l.model, prop.p);
  TimeValue r = TimeValue::parse(prop.r);
  TransformResult t;
  std::string property;
  if (br) {
    Proposition q = parse_proposition(l.model, prop.q);
    t = br_transform(l.model, l.init, p, q, r);
    property = mtl::bounded_response(p, q, r)->str();
  } else {
    t = ms_transform(l.model, l.init, p, r);
    property = mtl::min_separation(p, r, true)->str();
  }
  if (!prop.emit.empty()) {
    std::ofstream f(prop.emit);
    if (!f) throw Error("cannot write '" + prop.emit + "'");
    f << print_model(t.model);
  }
  Verdict v = check_instrumented(t, opts);
  if (br && prop.with_liveness && v.kind == Verdict::Kind::Satisfied) {
    Verdict live = check_response_liveness(l.model, l.init, t.p, t.q, opts);
    if (live.kind != Verdict::Kind::Satisfied) v = std::move(live);
  }
  report(c, l.model, property, v, out);
  return exit_code(v.kind);
}

int run_search(const Common& c, const std::string& predicate, std::size_t n, std::ostream& out) {
  Loaded l = load(c);
  SearchResult r = search(l.model, GlobalState{l.init, 0}, predicate, n, search_options(c));
  if (r.kind == Verdict::Kind::PreconditionFailed) {
    out << "Precondition failed: " << r.message << "\nWitness path:\n" << render_path(r.witness);
    return PreconditionFailed;
  }
  if (c.format == "json-trace") {
    TraceHeader h{model_hash(l.model), predicate, SamplingStrategy::parse(c.sampling).str(),
                  r.matches.empty() ? to_string(r.kind) : "match"};
    out << json_trace(h, r.matches.empty() ? TimedPath{} : r.matches.front());
  } else {
    if (r.matches.empty()) out << "No solution\n";
    for (std::size_t i = 0; i < r.matches.size(); ++i) {
      out << "Solution " << i + 1 << " (elapsed " << r.matches[i].last().elapsed.str() << ")\n"
          << render_path(r.matches[i]);
    }
    out << r.message << "\n";
  }
  if (!r.matches.empty()) return Counterexample;
  return r.kind == Verdict::Kind::BoundReached ? Unknown : Satisfied;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded response and minimum separation checking for real-time rewrite models", "tickcheck"};
  app.require_subcommand(1);

  Common c;
  Property prop;

  auto* br = app.add_subcommand("br", "check [] (p -> <>le(r) q)");
  add_common(br, c);
  br->add_option("-p", prop.p, "trigger proposition")->required();
  br->add_option("-q", prop.q, "response proposition")->required();
  br->add_option("-r", prop.r, "response bound")->required();
  br->add_flag("--with-liveness", prop.with_liveness, "also check [] (p -> <> q) on the reachable graph");
  br->add_option("--emit-instrumented", prop.emit, "write the instrumented model to a file");

  auto* ms = app.add_subcommand("ms", "check that p-blocks are separated by at least r");
  add_common(ms, c);
  ms->add_option("-p", prop.p, "proposition")->required();
  ms->add_option("-r", prop.r, "minimum separation")->required();
  ms->add_option("--emit-instrumented", prop.emit, "write the instrumented model to a file");

  std::string predicate;
  std::size_t n = 1;
  auto* srch = app.add_subcommand("search", "breadth-first search for states satisfying a predicate");
  add_common(srch, c);
  srch->add_option("--such-that", predicate, "state predicate, e.g. 'exists < L : Lamp | lit : true >'")->required();
  srch->add_option("-n", n, "number of solutions");

  std::string bound;
  std::string policy = "first";
  std::uint64_t seed = 0;
  auto* sim = app.add_subcommand("simulate", "follow one path up to a time bound");
  add_common(sim, c);
  sim->add_option("--bound", bound, "time bound")->required();
  sim->add_option("--policy", policy, "first or random")->check(CLI::IsMember({"first", "random"}));
  sim->add_option("--seed", seed, "seed for the random policy");

  std::string formula;
  std::size_t path_budget = 1000000;
  auto* orc = app.add_subcommand("oracle", "evaluate an MTL formula on every path within bounds");
  add_common(orc, c);
  orc->add_option("--formula", formula, "e.g. '[] (p -> <>le(5) q)'")->required();
  orc->add_option("--path-budget", path_budget, "max paths to enumerate");

  std::string validate_model;
  auto* val = app.add_subcommand("validate", "report model diagnostics");
  val->add_option("model", validate_model, "model file, or bundled model name")->required();

  std::string kind;
  auto* ins = app.add_subcommand("instrument", "print the BR or MS instrumented model");
  ins->add_option("kind", kind, "br or ms")->required()->check(CLI::IsMember({"br", "ms"}));
  add_common(ins, c);
  ins->add_option("-p", prop.p, "trigger proposition")->required();
  ins->add_option("-q", prop.q, "response proposition (br)");
  ins->add_option("-r", prop.r, "bound")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : UsageError;
  }

  try {
    if (br->parsed()) return check_property(true, c, prop, out);
    if (ms->parsed()) return check_property(false, c, prop, out);
    if (srch->parsed()) return run_search(c, predicate, n, out);
    if (sim->parsed()) {
      Loaded l = load(c);
      SimulateOptions so;
      so.policy = policy == "random" ? ChoicePolicy::Random : ChoicePolicy::First;
      so.seed = seed;
      so.zeno_limit = c.zeno_limit;
      TimedPath path = simulate(l.model, GlobalState{l.init, 0}, SamplingStrategy::parse(c.sampling),
                                TimeValue::parse(bound), so);
      if (c.format == "json-trace") {
        out << json_trace({model_hash(l.model), "simulate", SamplingStrategy::parse(c.sampling).str(), "path"}, path);
      } else {
        out << render_path(path);
        if (!path.diagnostic.empty()) out << path.diagnostic << "\n";
      }
      return Satisfied;
    }
    if (orc->parsed()) {
      Loaded l = load(c);
      FormulaPtr f = mtl::parse(l.model, formula);
      OracleOptions oo;
      if (!c.time_bound.empty()) oo.time_bound = TimeValue::parse(c.time_bound);
      if (c.step_bound) oo.step_bound = *c.step_bound;
      oo.path_budget = path_budget;
      OracleResult res = check_all_paths(l.model, l.init, SamplingStrategy::parse(c.sampling), f, oo);
      out << f->str() << ": " << to_string(res.verdict) << " (" << res.paths << " paths"
          << (res.budget_exhausted ? ", budget exhausted" : "") << ")\n";
      if (res.counterexample) {
        const OraclePath& cp = *res.counterexample;
        std::optional<std::size_t> loop;
        if (cp.kind == OraclePath::Kind::Lasso) loop = cp.loop_start;
        if (cp.kind == OraclePath::Kind::Deadlock) loop = cp.path.steps.size();
        out << "Counterexample path:\n" << render_path(cp.path, loop);
      }
      return res.verdict == Truth::True ? Satisfied : res.verdict == Truth::False ? Counterexample : Unknown;
    }
    if (val->parsed()) {
      ModelSource src = find_model(validate_model);
      auto diags = check_model(src.text);
      for (const auto& d : diags) out << src.origin << ":" << d.str() << "\n";
      if (diags.empty()) out << src.origin << ": ok\n";
      return diags.empty() ? Satisfied : UsageError;
    }
    if (ins->parsed()) {
      Loaded l = load(c);
      Proposition p = parse_proposition(l.model, prop.p);
      TimeValue r = TimeValue::parse(prop.r);
      if (kind == "br") {
        if (prop.q.empty()) throw CLI::ValidationError("-q", "required for br");
        out << print_model(br_transform(l.model, l.init, p, parse_proposition(l.model, prop.q), r).model);
      } else {
        out << print_model(ms_transform(l.model, l.init, p, r).model);
      }
      return Satisfied;
    }
  } catch (const ModelError& e) {
    std::string origin = c.model.empty() ? validate_model : c.model;
    for (const auto& d : e.diagnostics()) err << origin << ":" << d.str() << "\n";
    if (e.diagnostics().empty()) err << "error: " << e.what() << "\n";
    return UsageError;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return UsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return UsageError;
  }
  return UsageError;
}

}  // namespace tickcheck::cli
