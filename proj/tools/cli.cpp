#include "cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mvdl/error.hpp"
#include "mvdl/harness.hpp"
#include "mvdl/io.hpp"
#include "mvdl/presets.hpp"
#include "mvdl/reduction.hpp"
#include "mvdl/semantics.hpp"

namespace mvdl::cli {

using nlohmann::json;

namespace {

struct Options {
  std::string algebra = "B2";
  std::string preset;
  std::string model;
  std::string formula;
  std::vector<std::string> gamma;
  std::string op, test, lifting, variant, kind, template_text, strategy = "innermost";
  std::string assignment, alpha;
  std::vector<std::string> liftings;
  std::string output;
  std::string format = "json";
  std::string mode = "exhaustive";
  int min_n = 1, max_n = 2, max_n_target = 2, n = 2, max_k = 2, state = -1;
  std::uint64_t budget = kDefaultSweepBudget;
  std::uint64_t trials = 10000;
  std::uint64_t seed = kDefaultSeed;
  unsigned jobs = 1;
  bool strict = false;
};

Bounds bounds_of(const Options& o) {
  Bounds b;
  b.min_n = o.min_n;
  b.max_n = o.max_n;
  b.max_n_target = o.max_n_target;
  b.budget = o.budget;
  b.mode = mode_from_name(o.mode);
  b.trials = o.trials;
  b.seed = o.seed;
  b.jobs = o.jobs;
  if (b.min_n < 1 || b.max_n < b.min_n || b.max_n_target < 1)
    throw Error(ErrorCode::InvalidParameter, "carrier bounds must satisfy 1 <= min-n <= max-n");
  return b;
}

std::shared_ptr<const LogicConfig> logic_of(const Options& o) {
  if (o.preset.empty()) throw Error(ErrorCode::InvalidParameter, "--preset is required");
  PresetOptions po;
  po.max_k = o.max_k;
  return make_preset(o.preset, load_algebra(o.algebra), po);
}

std::string verdict_text(const json& v) {
  std::ostringstream s;
  s << v.at("check").get<std::string>() << ": " << v.at("status").get<std::string>() << " (" << v.at("cases")
    << " cases)";
  if (v.contains("counterexample")) s << "\ncounterexample: " << v.at("counterexample").dump();
  return s.str();
}

struct Report {
  json body;
  int status = 0;
  std::string text;  // used when --format text; falls back to the JSON dump
};

Report verdict_report(const Verdict& v) {
  Report r{v.to_json(), v.ok() ? 0 : 1, {}};
  r.text = verdict_text(r.body);
  return r;
}

Report run_validate(const Options& o) {
  auto alg = load_algebra(o.algebra);
  LawReport rep = validate_flew(*alg);
  json laws = json::array();
  std::string text = alg->name() + ": ";
  for (const auto& l : rep.laws) {
    json j = {{"family", l.family}, {"law", l.law}, {"pass", l.pass}};
    if (!l.pass) j["witness"] = l.witness;
    laws.push_back(j);
  }
  if (const auto* f = rep.first_failure())
    text += "fails " + f->family + "/" + f->law;
  else
    text += "all " + std::to_string(rep.laws.size()) + " laws pass";
  return {{{"algebra", alg->name()}, {"size", alg->size()}, {"linear", alg->linear()}, {"ok", rep.ok()}, {"laws", laws}},
          rep.ok() ? 0 : 1,
          text};
}

Report run_semiprimal(const Options& o) {
  auto alg = load_algebra(o.algebra);
  UnaryTermClone clone = unary_term_closure(*alg);
  const bool sp = is_semiprimal(*alg);
  json chis = json::array();
  for (int d = 0; d < alg->size(); ++d) {
    std::vector<bool> subset(alg->size(), false);
    subset[d] = true;
    auto term = chi_term(*alg, subset, "x");
    json j = {{"element", alg->label(static_cast<Elem>(d))}, {"definable", term.has_value()}};
    if (term) j["term"] = *term;
    chis.push_back(j);
  }
  return {{{"algebra", alg->name()}, {"semiprimal", sp}, {"unary_clone_size", clone.size()}, {"chi", chis}},
          sp ? 0 : 1,
          alg->name() + (sp ? " is semi-primal" : " is not semi-primal")};
}

Report run_eval(const Options& o) {
  if (o.model.empty()) throw Error(ErrorCode::InvalidParameter, "--model is required");
  Model m = model_from_json(read_json_file(o.model));
  auto phi = parse_formula(o.formula, m.logic->signature());
  Predicate p = eval(m, *phi);
  const Algebra& T = *m.logic->truth;
  json vals = json::array();
  for (Elem e : p) vals.push_back(T.label(e));
  json body = {{"formula", render(*phi)}, {"values", vals}};
  std::string text = format_predicate(T, p);
  if (o.state >= 0) {
    if (o.state >= m.n) throw Error(ErrorCode::InvalidParameter, "state out of range");
    body["state"] = o.state;
    body["value"] = T.label(p[o.state]);
    text = T.label(p[o.state]);
  }
  return {body, 0, text};
}

Report run_reduce(const Options& o) {
  auto logic = logic_of(o);
  RuleRegistry reg = builtin_rules(logic, o.strict);
  auto phi = parse_formula(o.formula, logic->signature());
  Strategy s = o.strategy == "outermost" ? Strategy::OutermostLeftmost : Strategy::InnermostLeftmost;
  if (o.strategy != "outermost" && o.strategy != "innermost")
    throw Error(ErrorCode::InvalidParameter, "strategy must be innermost or outermost");
  auto nf = reduce_full(phi, reg, s, o.budget);
  json body = {{"formula", render(*phi)}, {"normal_form", render(*nf)}};
  if (!reg.notes().empty()) body["notes"] = reg.notes();
  return {body, 0, render(*nf)};
}

Report run_verify_rules(const Options& o) {
  auto logic = logic_of(o);
  const Bounds b = bounds_of(o);
  std::vector<ReductionRule> rules;
  if (!o.template_text.empty()) {
    if (o.lifting.empty() || (o.op.empty() == o.test.empty()))
      throw Error(ErrorCode::InvalidParameter, "--template needs --lifting and one of --op/--test");
    ReductionRule r;
    r.is_test = !o.test.empty();
    r.target = r.is_test ? o.test : o.op;
    r.lifting = o.lifting;
    r.rhs = parse_template(o.template_text, logic->signature());
    const int arity = logic->lifting(o.lifting).arity;
    r.rhs.n = r.is_test ? 0 : logic->operation(r.target).arity;
    r.rhs.k = r.is_test ? arity + 1 : arity;
    rules.push_back(r);
  } else {
    RuleRegistry reg = builtin_rules(logic, o.strict);
    for (const auto& [key, r] : reg.rules()) {
      if (!o.op.empty() && (r.is_test || r.target != o.op)) continue;
      if (!o.test.empty() && (!r.is_test || r.target != o.test)) continue;
      if (!o.lifting.empty() && r.lifting != o.lifting) continue;
      rules.push_back(r);
    }
  }
  json out = json::array();
  std::string text;
  int status = 0;
  for (const auto& r : rules) {
    Verdict v = verify_reduction_rule(r, *logic, b);
    json j = v.to_json();
    j["rule"] = r.to_json();
    out.push_back(j);
    text += (r.is_test ? "test " : "op ") + r.target + " / " + r.lifting + ": " + status_name(v.status) + "\n";
    if (!v.ok()) status = 1;
  }
  if (!text.empty()) text.pop_back();
  return {{{"preset", logic->name}, {"algebra", logic->structure->name()}, {"results", out}}, status, text};
}

Report run_safety(const Options& o) {
  const Bounds b = bounds_of(o);
  if (!o.variant.empty()) {
    if (o.kind.empty()) throw Error(ErrorCode::InvalidParameter, "--variant needs --kind");
    auto alg = load_algebra(o.algebra);
    OperationSpec op;
    op.variant = op_variant_from_name(o.variant);
    op.kind = kind_from_name(o.kind);
    op.id = o.variant;
    op.arity = (op.variant == OpVariant::Dual || op.variant == OpVariant::Star ||
                op.variant == OpVariant::CounterDomain)
                   ? 1
                   : 2;
    return verdict_report(check_safety(op, make_context(op.kind, *alg), b));
  }
  auto logic = logic_of(o);
  if (o.op.empty() == o.test.empty()) throw Error(ErrorCode::InvalidParameter, "give exactly one of --op/--test");
  const Context ctx = logic->context(0);
  if (!o.op.empty()) return verdict_report(check_safety(logic->operation(o.op), ctx, b));
  return verdict_report(check_safety(logic->test_spec(o.test), ctx, b));
}

Report run_separation(const Options& o) {
  auto logic = logic_of(o);
  Bounds b = bounds_of(o);
  std::vector<LiftingSpec> ls;
  if (o.liftings.empty())
    ls = logic->liftings;
  else
    for (const auto& id : o.liftings) ls.push_back(logic->lifting(id));
  if (o.n < 1) throw Error(ErrorCode::InvalidParameter, "--n must be positive");
  return verdict_report(check_separation(ls, logic->context(o.n), b));
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ','))
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "expected integer list, got '" + s + "'");
    }
  return out;
}

Report run_one_step(const Options& o) {
  const OneStepKind k = onestep_kind_from_name(o.kind);
  auto alg = load_algebra(o.algebra);
  RankOneAssignment h;
  if (!o.assignment.empty())
    h = RankOneAssignment::from_json(read_json_file(o.assignment));
  else if (!o.alpha.empty()) {
    auto ints = parse_ints(o.alpha);
    FValue alpha(ints.begin(), ints.end());
    int n = static_cast<int>(alpha.size());
    if (k == OneStepKind::MonotoneEval) {
      n = 0;
      for (std::uint64_t c = 1; c < alpha.size(); c *= alg->size()) ++n;
    }
    h = induced_assignment(k, *alg, n, alpha);
  } else {
    throw Error(ErrorCode::InvalidParameter, "give --assignment or --alpha");
  }
  OneStepResult r = one_step_witness(k, *alg, h);
  json body = r.to_json();
  body["kind"] = onestep_kind_name(k);
  body["assignment"] = h.to_json();
  std::string text = r.satisfiable ? "satisfiable: alpha = " + body["alpha"].dump() : "unsatisfiable: " + r.axiom;
  return {body, r.satisfiable ? 0 : 1, text};
}

Report run_entail(const Options& o) {
  auto logic = logic_of(o);
  const Bounds b = bounds_of(o);
  const Signature sig = logic->signature();
  std::vector<FormulaPtr> gamma;
  for (const auto& g : o.gamma) gamma.push_back(parse_formula(g, sig));
  return verdict_report(bounded_entailment(gamma, parse_formula(o.formula, sig), logic, b));
}

void add_algebra(CLI::App* sub, Options& o) {
  sub->add_option("--algebra,--builtin", o.algebra, "Built-in algebra (B2, L<n>, G<n>, optional +chi/+const) or JSON file")
      ->capture_default_str();
}

void add_preset(CLI::App* sub, Options& o) {
  sub->add_option("--preset", o.preset, "pdl-crisp | pdl-labelled | pdl-threshold | game | neighbourhood | instantial");
  sub->add_option("--max-k", o.max_k, "Instantial presets: largest k, liftings i1..i(k+1)")->capture_default_str();
}

void add_bounds(CLI::App* sub, Options& o) {
  sub->add_option("--min-n", o.min_n, "Smallest carrier size")->capture_default_str();
  sub->add_option("--max-n", o.max_n, "Largest carrier size")->capture_default_str();
  sub->add_option("--mode", o.mode, "exhaustive | random | auto")->capture_default_str();
  sub->add_option("--trials", o.trials, "Samples per carrier size in random mode")->capture_default_str();
  sub->add_option("--seed", o.seed, "Seed for random mode")->capture_default_str();
  sub->add_option("--jobs", o.jobs, "Worker threads, 0 for all cores")->capture_default_str();
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Many-valued coalgebraic dynamic logic toolkit", "mvdl"};
  app.set_version_flag("--version", std::string("mvdl 0.1.0"));
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--budget", o.budget, "Case budget for sweeps and rewrites")
      ->envname("MVDL_BUDGET")
      ->capture_default_str();
  app.add_option("--format", o.format, "json | text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--output,-o", o.output, "Write the report to a file instead of stdout");

  std::map<CLI::App*, std::function<Report(const Options&)>> handlers;
  auto sub = [&](const char* name, const char* desc, std::function<Report(const Options&)> fn) {
    CLI::App* s = app.add_subcommand(name, desc);
    handlers[s] = std::move(fn);
    return s;
  };

  auto* s = sub("validate-algebra", "Check the FLew laws on an algebra", run_validate);
  add_algebra(s, o);

  s = sub("semiprimal", "Decide semi-primality through the unary term clone", run_semiprimal);
  add_algebra(s, o);

  s = sub("eval", "Evaluate a formula on a model file", run_eval);
  s->add_option("--model", o.model, "Model JSON file")->required();
  s->add_option("--formula,--phi", o.formula, "Formula text")->required();
  s->add_option("--state", o.state, "Report a single state");

  s = sub("reduce", "Rewrite a formula to normal form with the built-in reduction rules", run_reduce);
  add_algebra(s, o);
  add_preset(s, o);
  s->add_option("--formula,--phi", o.formula, "Formula text")->required();
  s->add_option("--strategy", o.strategy, "innermost | outermost")->capture_default_str();
  s->add_flag("--strict", o.strict, "Fail instead of skipping rules that need a missing characteristic function");

  s = sub("verify-rules", "Sweep reduction rules for soundness", run_verify_rules);
  add_algebra(s, o);
  add_preset(s, o);
  add_bounds(s, o);
  s->add_option("--op", o.op, "Only rules for this operation");
  s->add_option("--test", o.test, "Only rules for this test");
  s->add_option("--lifting", o.lifting, "Only rules for this lifting");
  s->add_option("--template", o.template_text, "Verify this template instead of the built-in rule");
  s->add_flag("--strict", o.strict, "Fail on rules that need a missing characteristic function");

  s = sub("check-safety", "Check that an operation or test preserves coalgebra morphisms", run_safety);
  add_algebra(s, o);
  add_preset(s, o);
  add_bounds(s, o);
  s->add_option("--max-n-target", o.max_n_target, "Largest codomain carrier")->capture_default_str();
  s->add_option("--op", o.op, "Operation id of the preset");
  s->add_option("--test", o.test, "Test id of the preset");
  s->add_option("--variant", o.variant, "Operation variant, used with --kind instead of a preset");
  s->add_option("--kind", o.kind, "Functor kind for --variant");

  s = sub("check-separation", "Check that a family of liftings is jointly separating", run_separation);
  add_algebra(s, o);
  add_preset(s, o);
  s->add_option("--n", o.n, "Carrier size")->capture_default_str();
  s->add_option("--liftings", o.liftings, "Lifting ids (default: all of the preset)")->delimiter(',');
  s->add_option("--mode", o.mode, "exhaustive | random | auto")->capture_default_str();
  s->add_option("--trials", o.trials, "Sampled pairs in random mode")->capture_default_str();
  s->add_option("--seed", o.seed, "Seed for random mode")->capture_default_str();

  s = sub("one-step", "Build a one-step witness for a rank-1 assignment", run_one_step);
  add_algebra(s, o);
  s->add_option("--kind", o.kind, "labelled-diamond | threshold | monotone-eval")->required();
  s->add_option("--assignment", o.assignment, "Rank-1 assignment JSON file");
  s->add_option("--alpha", o.alpha, "Comma-separated F-value whose induced assignment is used");

  s = sub("entail", "Search for a countermodel to gamma |= phi", run_entail);
  add_algebra(s, o);
  add_preset(s, o);
  add_bounds(s, o);
  s->add_option("--phi,--formula", o.formula, "Conclusion")->required();
  s->add_option("--gamma", o.gamma, "Premise, repeatable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Report r;
    for (auto& [cmd, fn] : handlers)
      if (cmd->parsed()) r = fn(o);
    std::string text = o.format == "text" && !r.text.empty() ? r.text : r.body.dump(2);
    if (o.output.empty())
      out << text << "\n";
    else {
      std::ofstream f(o.output);
      if (!f) throw Error(ErrorCode::InvalidInput, "cannot write '" + o.output + "'");
      f << text << "\n";
    }
    return r.status;
  } catch (const Error& e) {
    err << "mvdl: " << e.what() << "\n";
    return e.code() == ErrorCode::BudgetExceeded ? 3 : 2;
  } catch (const std::exception& e) {
    err << "mvdl: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace mvdl::cli
