#include "harness_internal.hpp"
#include "mvdl/error.hpp"
#include "mvdl/io.hpp"

namespace mvdl {

using nlohmann::json;
using namespace detail;

namespace {

std::vector<ActionPtr> fresh_atoms(int k) {
  std::vector<ActionPtr> out;
  for (int i = 1; i <= k; ++i) out.push_back(atomic("a" + std::to_string(i)));
  return out;
}

std::vector<FormulaPtr> fresh_props(int k) {
  std::vector<FormulaPtr> out;
  for (int i = 1; i <= k; ++i) out.push_back(prop("p" + std::to_string(i)));
  return out;
}

void check_shape(const ReductionRule& rule, const LogicConfig& logic) {
  const LiftingSpec& lift = logic.lifting(rule.lifting);
  if (rule.is_test) {
    logic.test_spec(rule.target);
    if (rule.rhs.n != 0 || rule.rhs.k != lift.arity + 1)
      throw Error(ErrorCode::ArityMismatch, "test template for '" + rule.lifting + "' needs header (0, " +
                                                std::to_string(lift.arity + 1) + ")");
  } else {
    const OperationSpec& op = logic.operation(rule.target);
    if (rule.rhs.n != op.arity || rule.rhs.k != lift.arity)
      throw Error(ErrorCode::ArityMismatch, "template for '" + rule.target + "' under '" + rule.lifting +
                                                "' needs header (" + std::to_string(op.arity) + ", " +
                                                std::to_string(lift.arity) + ")");
  }
}

// Wraps a borrowed config so it can sit in a Model.
std::shared_ptr<const LogicConfig> borrow(const LogicConfig& logic) {
  return std::shared_ptr<const LogicConfig>(std::shared_ptr<const LogicConfig>(), &logic);
}

json countermodel(const LogicConfig& logic, int n, const std::map<std::string, Coalgebra>& atoms,
                  const std::map<std::string, Predicate>& props) {
  Model m{borrow(logic), n, atoms, props};
  return model_to_json(m);
}

}  // namespace

FormulaPtr rule_lhs(const ReductionRule& rule, const LogicConfig& logic) {
  const LiftingSpec& lift = logic.lifting(rule.lifting);
  if (rule.is_test) return modal(lift.id, test(rule.target, prop("q")), fresh_props(lift.arity));
  return modal(lift.id, op(rule.target, fresh_atoms(logic.operation(rule.target).arity)), fresh_props(lift.arity));
}

FormulaPtr rule_rhs(const ReductionRule& rule, const LogicConfig& logic) {
  const LiftingSpec& lift = logic.lifting(rule.lifting);
  if (rule.is_test) {
    auto vars = fresh_props(lift.arity);
    vars.insert(vars.begin(), prop("q"));
    return instantiate(rule.rhs, {}, vars);
  }
  return instantiate(rule.rhs, fresh_atoms(logic.operation(rule.target).arity), fresh_props(lift.arity));
}

FormulaPtr reduction_axiom(const ReductionRule& rule, const LogicConfig& logic) {
  auto l = rule_lhs(rule, logic), r = rule_rhs(rule, logic);
  return conn(conns::kMeet, {conn(conns::kImpl, {l, r}), conn(conns::kImpl, {r, l})});
}

Verdict verify_reduction_rule(const ReductionRule& rule, const LogicConfig& logic, const Bounds& b) {
  check_shape(rule, logic);
  Stopwatch clock;
  const LiftingSpec& lift = logic.lifting(rule.lifting);
  const int la = lift.arity;
  const int mt = logic.truth->size();
  const std::string what = (rule.is_test ? "test " : "operation ") + rule.target + " under " + rule.lifting;
  Verdict v;
  v.check = "reduction-rule";
  v.bounds = b.to_json();
  const FormulaPtr lhs_f = rule_lhs(rule, logic), rhs_f = rule_rhs(rule, logic);

  for (int n = b.min_n; n <= b.max_n && v.ok(); ++n) {
    const Context ctx = logic.context(n);
    const FunctorSpace space = ctx.space();
    std::vector<Predicate> preds;
    for (std::uint64_t i = 0; i < predicate_count(mt, n); ++i) preds.push_back(predicate_decode(i, mt, n));
    const int k = rule.is_test ? 0 : logic.operation(rule.target).arity;
    const int nvars = rule.is_test ? la + 1 : la;
    const std::uint64_t sig_count = sat_pow(preds.size(), nvars);
    std::uint64_t outer = rule.is_test ? preds.size() : sat_pow(space.raw_count(), static_cast<std::uint64_t>(k) * n);
    const std::uint64_t total = sat_mul(sat_mul(outer, rule.is_test ? sig_count / preds.size() : sig_count), n);
    const SweepMode mode = resolve_mode(b.mode, total, b.budget, what + " at n=" + std::to_string(n));

    std::vector<FValue> vals;
    if (mode == SweepMode::Exhaustive && !rule.is_test) {
      vals = space.enumerate(b.budget);
      outer = sat_pow(vals.size(), static_cast<std::uint64_t>(k) * n);
    }

    // Compares both sides for one choice of coalgebras and predicates.
    auto check = [&](const std::vector<Coalgebra>& gammas, const Coalgebra& composed,
                     const std::vector<Predicate>& vars, std::uint64_t& cases) -> std::optional<json> {
      std::span<const Predicate> sigmas(vars);
      if (rule.is_test) sigmas = sigmas.subspan(1);
      Predicate rhs = eval_template(logic, n, rule.rhs, gammas, vars);
      for (int x = 0; x < n; ++x) {
        ++cases;
        const Elem lhs = apply_lifting(lift, sigmas, composed[x], ctx);
        if (lhs == rhs[x]) continue;
        std::map<std::string, Coalgebra> atoms;
        std::map<std::string, Predicate> props;
        for (int i = 0; i < k; ++i) atoms["a" + std::to_string(i + 1)] = gammas[i];
        for (int i = 0; i < la; ++i) props["p" + std::to_string(i + 1)] = sigmas[i];
        if (rule.is_test) props["q"] = vars[0];
        return json{{"check", "reduction-rule"},
                    {"rule", rule.to_json()},
                    {"model", countermodel(logic, n, atoms, props)},
                    {"lhs", render(*lhs_f)},
                    {"rhs", render(*rhs_f)},
                    {"state", x},
                    {"lhs_value", logic.truth->label(lhs)},
                    {"rhs_value", logic.truth->label(rhs[x])}};
      }
      return std::nullopt;
    };

    SearchResult r;
    if (mode == SweepMode::Exhaustive) {
      r = search(outer, b.jobs, [&](std::uint64_t i, std::uint64_t& cases) -> std::optional<json> {
        std::vector<std::size_t> d;
        std::vector<Coalgebra> gammas;
        Coalgebra composed;
        std::vector<Predicate> vars(nvars);
        std::uint64_t inner = sig_count;
        if (rule.is_test) {
          vars[0] = preds[i];
          composed = apply_test(logic.test_spec(rule.target), vars[0], ctx);
          inner = sig_count / preds.size();
        } else {
          decode(i, vals.size(), static_cast<std::size_t>(k) * n, d);
          gammas = coalgebras_from_digits(vals, d, 0, k, n);
          composed = apply_op(logic.operation(rule.target), gammas, ctx);
        }
        const int first = rule.is_test ? 1 : 0;
        for (std::uint64_t j = 0; j < inner; ++j) {
          decode(j, preds.size(), nvars - first, d);
          for (int a = first; a < nvars; ++a) vars[a] = preds[d[a - first]];
          if (auto cex = check(gammas, composed, vars, cases)) return cex;
        }
        return std::nullopt;
      });
    } else {
      r = search(b.trials, b.jobs, [&](std::uint64_t i, std::uint64_t& cases) -> std::optional<json> {
        auto rng = case_rng(b.seed, n, i);
        std::uniform_int_distribution<std::size_t> pick(0, preds.size() - 1);
        std::vector<Coalgebra> gammas(k, Coalgebra(n));
        for (auto& g : gammas)
          for (auto& t : g) t = space.random(rng);
        std::vector<Predicate> vars(nvars);
        for (auto& p : vars) p = preds[pick(rng)];
        Coalgebra composed = rule.is_test ? apply_test(logic.test_spec(rule.target), vars[0], ctx)
                                          : apply_op(logic.operation(rule.target), gammas, ctx);
        return check(gammas, composed, vars, cases);
      });
      v.notes.push_back("n=" + std::to_string(n) + ": " + std::to_string(b.trials) + " samples");
    }
    v.cases += r.cases;
    if (r.cex) {
      v.counterexample = *r.cex;
      v.status = VerdictStatus::Fails;
    }
  }
  if (v.ok()) v.status = VerdictStatus::HoldsUpToBound;
  v.seconds = clock.seconds();
  return v;
}

bool replay_counterexample(const json& cex) {
  const std::string check = cex.at("check");
  if (check == "safety" || check == "separation") return replay_structural(cex);
  Model m = model_from_json(cex.at("model"));
  if (check == "invariance") {
    Model m2 = model_from_json(cex.at("model_target"));
    const StateMap f = cex.at("f").get<StateMap>();
    const Signature sig = m.logic->signature();
    if (cex.contains("action")) {
      auto a = parse_action(cex.at("action"), sig);
      return !is_morphism(f, interpret_action(m, *a), interpret_action(m2, *a), m.context().space(),
                          m2.context().space());
    }
    auto phi = parse_formula(cex.at("formula"), sig);
    const int x = cex.at("state");
    return eval(m, *phi)[x] != eval(m2, *phi)[f[x]];
  }
  const Signature sig = m.logic->signature();
  const int x = cex.at("state");
  if (check == "reduction-rule") {
    auto l = parse_formula(cex.at("lhs"), sig), r = parse_formula(cex.at("rhs"), sig);
    return eval(m, *l)[x] != eval(m, *r)[x];
  }
  if (check == "entailment") {
    const Elem top = m.logic->truth->top();
    for (const auto& g : cex.at("gamma"))
      if (eval(m, *parse_formula(g, sig))[x] != top) return false;
    return eval(m, *parse_formula(cex.at("phi"), sig))[x] != top;
  }
  throw Error(ErrorCode::InvalidInput, "unknown counterexample check '" + check + "'");
}

}  // namespace mvdl
