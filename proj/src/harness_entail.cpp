#include <set>

#include "harness_internal.hpp"
#include "mvdl/error.hpp"
#include "mvdl/io.hpp"

namespace mvdl {

using nlohmann::json;
using namespace detail;

Verdict bounded_entailment(const std::vector<FormulaPtr>& gamma, const FormulaPtr& phi,
                           std::shared_ptr<const LogicConfig> logic, const Bounds& b) {
  Stopwatch clock;
  std::set<std::string> prop_set, atom_set;
  for (const auto& g : gamma) collect_symbols(*g, prop_set, atom_set);
  collect_symbols(*phi, prop_set, atom_set);
  const std::vector<std::string> props(prop_set.begin(), prop_set.end()), atoms(atom_set.begin(), atom_set.end());
  const std::size_t na = atoms.size(), np = props.size();
  const int mt = logic->truth->size();
  const Elem top = logic->truth->top();

  Verdict v;
  v.check = "entailment";
  v.bounds = b.to_json();

  for (int n = b.min_n; n <= b.max_n && v.ok(); ++n) {
    const Context ctx = logic->context(n);
    const FunctorSpace space = ctx.space();
    const std::uint64_t total = sat_mul(sat_pow(space.raw_count(), na * n), sat_pow(predicate_count(mt, n), np));
    const SweepMode mode = resolve_mode(b.mode, total, b.budget, "entailment at n=" + std::to_string(n));
    std::vector<FValue> vals;
    std::vector<Predicate> preds;
    for (std::uint64_t i = 0; i < predicate_count(mt, n); ++i) preds.push_back(predicate_decode(i, mt, n));
    std::uint64_t count = b.trials;
    if (mode == SweepMode::Exhaustive) {
      vals = space.enumerate(b.budget);
      count = sat_mul(sat_pow(vals.size(), na * n), sat_pow(preds.size(), np));
    }
    auto r = search(count, b.jobs, [&](std::uint64_t i, std::uint64_t& cases) -> std::optional<json> {
      std::map<std::string, Coalgebra> am;
      std::map<std::string, Predicate> pm;
      if (mode == SweepMode::Exhaustive) {
        std::vector<std::size_t> d;
        decode(i % sat_pow(preds.size(), np), preds.size(), np, d);
        for (std::size_t p = 0; p < np; ++p) pm[props[p]] = preds[d[p]];
        decode(i / sat_pow(preds.size(), np), vals.size(), na * n, d);
        auto gs = coalgebras_from_digits(vals, d, 0, static_cast<int>(na), n);
        for (std::size_t a = 0; a < na; ++a) am[atoms[a]] = std::move(gs[a]);
      } else {
        auto rng = case_rng(b.seed, n, i);
        std::uniform_int_distribution<std::size_t> pick(0, preds.size() - 1);
        for (const auto& a : atoms) {
          Coalgebra g(n);
          for (auto& t : g) t = space.random(rng);
          am[a] = std::move(g);
        }
        for (const auto& p : props) pm[p] = preds[pick(rng)];
      }
      ++cases;
      Evaluator ev(*logic, n, Bindings{&am, &pm, {}, {}});
      std::vector<bool> premises(n, true);
      for (const auto& g : gamma) {
        Predicate val = ev.eval(*g);
        for (int x = 0; x < n; ++x) premises[x] = premises[x] && val[x] == top;
      }
      Predicate conclusion = ev.eval(*phi);
      for (int x = 0; x < n; ++x) {
        if (!premises[x] || conclusion[x] == top) continue;
        json gs = json::array();
        for (const auto& g : gamma) gs.push_back(render(*g));
        Model m{logic, n, am, pm};
        return json{{"check", "entailment"}, {"model", model_to_json(m)}, {"gamma", gs},
                    {"phi", render(*phi)},   {"state", x},                 {"phi_value", logic->truth->label(conclusion[x])}};
      }
      return std::nullopt;
    });
    if (mode != SweepMode::Exhaustive) v.notes.push_back("n=" + std::to_string(n) + ": " + std::to_string(b.trials) + " sampled models");
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

namespace {

template <class T>
const T& pick(const std::vector<T>& xs, std::mt19937_64& rng) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

int roll(int hi, std::mt19937_64& rng) { return std::uniform_int_distribution<int>(0, hi)(rng); }

}  // namespace

ActionPtr random_action(const LogicConfig& logic, const std::vector<std::string>& props,
                        const std::vector<std::string>& atoms, int depth, std::mt19937_64& rng) {
  if (depth <= 0 || roll(2, rng) == 0 || (logic.ops.empty() && logic.tests.empty())) return atomic(pick(atoms, rng));
  if (!logic.tests.empty() && (logic.ops.empty() || roll(4, rng) == 0))
    return test(pick(logic.tests, rng).id, random_formula(logic, props, atoms, depth - 1, rng));
  const OperationSpec& o = pick(logic.ops, rng);
  std::vector<ActionPtr> args;
  for (int i = 0; i < o.arity; ++i) args.push_back(random_action(logic, props, atoms, depth - 1, rng));
  return op(o.id, std::move(args));
}

FormulaPtr random_formula(const LogicConfig& logic, const std::vector<std::string>& props,
                          const std::vector<std::string>& atoms, int depth, std::mt19937_64& rng) {
  static const std::vector<std::string> binary = {conns::kMeet, conns::kJoin, conns::kTensor, conns::kImpl};
  if (depth <= 0) {
    const int r = roll(9, rng);
    if (r == 0) return top_f();
    if (r == 1) return bot_f();
    return prop(pick(props, rng));
  }
  switch (roll(3, rng)) {
    case 0: return prop(pick(props, rng));
    case 1:
      return conn(pick(binary, rng), {random_formula(logic, props, atoms, depth - 1, rng),
                                      random_formula(logic, props, atoms, depth - 1, rng)});
    default: {
      const LiftingSpec& l = pick(logic.liftings, rng);
      std::vector<FormulaPtr> args;
      for (int i = 0; i < l.arity; ++i) args.push_back(random_formula(logic, props, atoms, depth - 1, rng));
      return modal(l.id, random_action(logic, props, atoms, depth - 1, rng), std::move(args));
    }
  }
}

}  // namespace mvdl
