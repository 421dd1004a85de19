// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mvdl/actions.hpp"
#include "mvdl/algebra.hpp"
#include "mvdl/error.hpp"
#include "mvdl/harness.hpp"
#include "mvdl/presets.hpp"
#include "mvdl/reduction.hpp"

using namespace mvdl;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      detail << what;
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;  // 0 = no time limit
  std::function<void(Outcome&)> body;
};

std::shared_ptr<const Algebra> shared(const std::string& name) {
  return std::make_shared<const Algebra>(builtin_by_name(name));
}

std::string verdict_text(const Verdict& v) { return status_name(v.status) + " after " + std::to_string(v.cases) + " cases"; }

void require_rule(Outcome& o, const RuleRegistry& reg, bool is_test, const std::string& target,
                  const std::string& lifting, const Bounds& b) {
  const ReductionRule* r = reg.find(is_test, target, lifting);
  o.require(r != nullptr, "missing rule (" + target + ", " + lifting + ")");
  if (!r) return;
  Verdict v = verify_reduction_rule(*r, reg.logic(), b);
  o.require(v.status != VerdictStatus::Fails,
            "rule (" + target + ", " + lifting + ") " + verdict_text(v) + ": " + v.counterexample.dump());
}

Bounds exhaustive(int min_n, int max_n) {
  Bounds b;
  b.min_n = min_n;
  b.max_n = max_n;
  b.max_n_target = max_n;
  b.mode = SweepMode::Exhaustive;
  return b;
}

// 1 -------------------------------------------------------------------------
void algebra_laws(Outcome& o) {
  std::vector<Algebra> algs{builtin_by_name("B2")};
  for (int n = 1; n <= 5; ++n) {
    algs.push_back(build_builtin(BuiltinKind::Lukasiewicz, n));
    algs.push_back(build_builtin(BuiltinKind::Goedel, n));
  }
  for (const auto& a : algs) {
    auto rep = validate_flew(a);
    o.require(rep.ok(), a.name() + " fails " + (rep.ok() ? "" : rep.first_failure()->law));
    o.require(derive_residuum(a.size(), a.join_table(), a.tensor_table()) == a.impl_table(),
              a.name() + ": derived residuum differs");
  }
  o.detail << algs.size() << " algebras";
}

// 2 -------------------------------------------------------------------------
void semiprimality(Outcome& o) {
  o.require(is_semiprimal(builtin_by_name("B2")), "B2 not semi-primal");
  for (int n = 1; n <= 3; ++n)
    o.require(is_semiprimal(build_builtin(BuiltinKind::Lukasiewicz, n)), "L" + std::to_string(n) + " not semi-primal");
  o.require(is_chi_definable(builtin_by_name("L2"), {false, false, true}), "chi_{1} not definable on L2");
  // Regression value from the closure computation.
  o.require(!is_semiprimal(builtin_by_name("G3")), "G3 changed to semi-primal");
  if (o.pass) o.detail << "B2, L1-L3 semi-primal; G3 not";
}

// 3 -------------------------------------------------------------------------
void labelled_rules(Outcome& o) {
  auto reg = builtin_rules(make_preset("pdl-labelled", shared("L2")));
  const Bounds b = exhaustive(2, 2);
  for (const char* op : {"+", ";"})
    for (const char* l : {"box", "dia"}) require_rule(o, reg, false, op, l, b);
  for (const char* l : {"box", "dia"}) require_rule(o, reg, true, "test", l, b);
  if (o.pass) o.detail << "6 rules, no violations at n = 2";
}

// 4 -------------------------------------------------------------------------
void threshold_rules(Outcome& o) {
  auto reg = builtin_rules(make_preset("pdl-threshold", shared("L2")));
  const Bounds b = exhaustive(2, 2);
  for (const auto& l : reg.logic().liftings) {
    require_rule(o, reg, false, ";", l.id, b);
    require_rule(o, reg, true, "test", l.id, b);
  }
  if (o.pass) o.detail << reg.logic().liftings.size() << " thresholds, composition and test rules";
}

// 5 -------------------------------------------------------------------------
void instantial_rules(Outcome& o) {
  auto reg = builtin_rules(make_preset("instantial", shared("B2"), PresetOptions{1}));
  const Bounds b = exhaustive(2, 2);
  int checked = 0;
  for (const auto& l : reg.logic().liftings) {
    for (const char* op : {";", "alt", "cup", "~"}) {
      require_rule(o, reg, false, op, l.id, b);
      ++checked;
    }
    require_rule(o, reg, true, "test", l.id, b);
    ++checked;
  }
  if (o.pass) o.detail << checked << " rules over i1, i2";
}

// 6 -------------------------------------------------------------------------
void game_rules(Outcome& o) {
  auto reg = builtin_rules(make_preset("game", shared("L2")));
  Bounds one = exhaustive(1, 1);
  Bounds two = exhaustive(2, 2);
  two.mode = SweepMode::Random;
  two.trials = 10000;
  for (const char* op : {"+", "&", "^d", ";"}) {
    require_rule(o, reg, false, op, "ev", one);
    require_rule(o, reg, false, op, "ev", two);
  }
  require_rule(o, reg, true, "test", "ev", one);
  require_rule(o, reg, true, "test", "ev", two);
  if (o.pass) o.detail << "exhaustive at n = 1, 10000 samples at n = 2";
}

// 7 -------------------------------------------------------------------------
void safety(Outcome& o) {
  const Bounds b = exhaustive(1, 2);
  int checks = 0;
  for (const char* name : {"B2", "L2"}) {
    const Algebra a = builtin_by_name(name);
    Context ctx = make_context(FunctorKind::Powerset, a);
    for (auto [variant, arity] : {std::pair{OpVariant::Union, 2}, {OpVariant::Kleisli, 2}, {OpVariant::Star, 1},
                                  {OpVariant::CounterDomain, 1}}) {
      Verdict v = check_safety(OperationSpec{variant_name(variant), arity, FunctorKind::Powerset, variant}, ctx, b);
      o.require(v.ok(), std::string(name) + " Powerset " + variant_name(variant) + " " + v.counterexample.dump());
      ++checks;
    }
    for (std::uint32_t mask = 0; mask < (1u << a.size()); ++mask) {
      TestSpec t{"test", FunctorKind::Powerset, TestVariant::TestP, std::vector<bool>(a.size())};
      for (int e = 0; e < a.size(); ++e) t.P[e] = mask >> e & 1u;
      Verdict v = check_safety(t, ctx, b);
      o.require(v.ok(), std::string(name) + " Powerset test_P " + v.counterexample.dump());
      ++checks;
    }
  }
  for (const char* name : {"L1", "L2"}) {
    const Algebra a = builtin_by_name(name);
    Context ctx = make_context(FunctorKind::APowerset, a);
    for (auto [variant, arity] : {std::pair{OpVariant::JoinPW, 2}, {OpVariant::Kleisli, 2}, {OpVariant::Star, 1}}) {
      Verdict v = check_safety(OperationSpec{variant_name(variant), arity, FunctorKind::APowerset, variant}, ctx, b);
      o.require(v.ok(), std::string(name) + " APowerset " + variant_name(variant) + " " + v.counterexample.dump());
      ++checks;
    }
    Verdict v = check_safety(TestSpec{"test", FunctorKind::APowerset, TestVariant::LabelledUnit, {}}, ctx, b);
    o.require(v.ok(), std::string(name) + " APowerset test " + v.counterexample.dump());
    ++checks;
  }
  const Algebra l2 = builtin_by_name("L2");
  Verdict meet = check_safety(OperationSpec{"&", 2, FunctorKind::APowerset, OpVariant::MeetPW},
                              make_context(FunctorKind::APowerset, l2), b);
  o.require(meet.status == VerdictStatus::Fails, "MeetPW on APowerset not refuted");
  if (meet.status == VerdictStatus::Fails)
    o.require(replay_counterexample(meet.counterexample), "MeetPW counterexample does not replay");
  if (o.pass) o.detail << checks << " safe checks; MeetPW refuted with a replayable counterexample";
}

// 8 -------------------------------------------------------------------------
void iteration_oracle(Outcome& o) {
  const Algebra b2 = builtin_by_name("B2");
  std::mt19937_64 rng(kDefaultSeed);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    Context ctx{FunctorKind::Powerset, n, &b2, &b2};
    Coalgebra g(n, FValue(n));
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        g[i][j] = (rng() % 3) == 0;
        r[i][j] = i == j || g[i][j];
      }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = r[i][j] || (r[i][k] && r[k][j]);
    Coalgebra star = kleisli_star(g, ctx);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        o.require(static_cast<bool>(star[i][j]) == r[i][j], "digraph " + std::to_string(trial) + " differs");
  }
  if (o.pass) o.detail << "200 digraphs match";
}

// 9 -------------------------------------------------------------------------
void separation(Outcome& o) {
  const Algebra b2 = builtin_by_name("B2"), l2 = builtin_by_name("L2");
  const Bounds b = exhaustive(1, 1);
  for (int n = 1; n <= 3; ++n) {
    Context ctx{FunctorKind::Powerset, n, &b2, &b2};
    for (auto variant : {LiftingVariant::BoxCrisp, LiftingVariant::DiamondCrisp}) {
      Verdict v = check_separation({LiftingSpec{"l", 1, FunctorKind::Powerset, variant, 0}}, ctx, b);
      o.require(v.ok(), "Powerset n = " + std::to_string(n) + ": " + v.counterexample.dump());
    }
  }
  std::vector<LiftingSpec> thresholds;
  for (int r = 1; r < l2.size(); ++r)
    thresholds.push_back({threshold_id(static_cast<Elem>(r)), 1, FunctorKind::APowerset, LiftingVariant::Threshold,
                          static_cast<Elem>(r)});
  Verdict t = check_separation(thresholds, Context{FunctorKind::APowerset, 2, &b2, &l2}, b);
  o.require(t.ok(), "thresholds: " + t.counterexample.dump());
  std::vector<LiftingSpec> inst;
  for (int k = 0; k <= 2; ++k)
    inst.push_back({instantial_id(k + 1), k + 1, FunctorKind::DoublePowerset, LiftingVariant::Instantial, 0});
  Verdict d = check_separation(inst, Context{FunctorKind::DoublePowerset, 2, &b2, &b2}, b);
  o.require(d.ok(), "instantial: " + d.counterexample.dump());
  if (o.pass) o.detail << "box, diamond (n <= 3), thresholds over L2, i1-i3 (n = 2)";
}

// 10 ------------------------------------------------------------------------
void one_step(Outcome& o) {
  const Algebra l2 = builtin_by_name("L2");
  std::mt19937_64 rng(kDefaultSeed);
  const Elem top = l2.top();
  for (OneStepKind k : {OneStepKind::LabelledDiamond, OneStepKind::Threshold, OneStepKind::MonotoneEval}) {
    const std::string kname = onestep_kind_name(k);
    for (int trial = 0; trial < 500; ++trial) {
      const int n = 1 + trial % 2;
      FunctorSpace space(onestep_functor(k), n, &l2);
      FValue alpha = space.random(rng);
      auto h = induced_assignment(k, l2, n, alpha);
      auto r = one_step_witness(k, l2, h);
      o.require(r.satisfiable && r.alpha == alpha, kname + " round trip " + std::to_string(trial));

      std::string expected;
      switch (k) {
        case OneStepKind::LabelledDiamond: {
          // H(0) = 1 while H at a predicate with a single 1/2 stays below 1.
          h.tables["dia"][0] = top;
          expected = "diamond-join";
          break;
        }
        case OneStepKind::Threshold:
          h.tables[threshold_id(1)][0] = 1;
          expected = "threshold-bottom";
          break;
        case OneStepKind::MonotoneEval: {
          auto& ev = h.tables["ev"];
          ev.front() = top;
          ev.back() = 0;
          expected = "monotonicity";
          break;
        }
      }
      auto bad = one_step_witness(k, l2, h);
      o.require(!bad.satisfiable && bad.axiom == expected,
                kname + " corruption " + std::to_string(trial) + " reported '" + bad.axiom + "'");
    }
  }
  if (o.pass) o.detail << "3 x 500 round trips and corruptions";
}

// 11 ------------------------------------------------------------------------
void invariance(Outcome& o) {
  std::mt19937_64 rng(kDefaultSeed);
  int maps = 0;
  for (const char* name : {"pdl-crisp", "pdl-labelled"}) {
    auto logic = make_preset(name, shared("L2"));
    const Algebra& T = *logic->truth;
    std::vector<FormulaPtr> formulas;
    for (int i = 0; i < 25; ++i) formulas.push_back(random_formula(*logic, {"p", "q"}, {"a", "b"}, 3, rng));
    for (int trial = 0; trial < 100; ++trial) {
      const int k = 1 + static_cast<int>(rng() % 2), n = k + static_cast<int>(rng() % (5 - k));
      // A random k-state model and a surjection pi from n states onto it;
      // the unfolded model copies each transition to every preimage.
      StateMap pi(n);
      for (int x = 0; x < n; ++x) pi[x] = x < k ? x : static_cast<int>(rng() % k);
      Model small{logic, k, {}, {}}, big{logic, n, {}, {}};
      auto space = logic->context(k).space();
      for (const char* a : {"a", "b"}) {
        Coalgebra g(k), u(n, FValue(n));
        for (auto& t : g) t = space.random(rng);
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y) u[x][y] = g[pi[x]][pi[y]];
        small.atoms[a] = g;
        big.atoms[a] = u;
      }
      for (const char* p : {"p", "q"}) {
        Predicate v(k), w(n);
        for (auto& e : v) e = static_cast<Elem>(rng() % T.size());
        for (int x = 0; x < n; ++x) w[x] = v[pi[x]];
        small.valuation[p] = v;
        big.valuation[p] = w;
      }
      Verdict v = check_invariance(big, small, pi, formulas);
      o.require(v.status == VerdictStatus::Holds, std::string(name) + ": " + v.counterexample.dump());
      auto [q, f] = quotient_model(big);
      o.require(q.n <= k, "quotient larger than the folded model");
      Verdict w = check_invariance(big, q, f, formulas);
      o.require(w.status == VerdictStatus::Holds, std::string(name) + " quotient: " + w.counterexample.dump());
      ++maps;
    }
  }
  if (o.pass) o.detail << maps << " morphisms, 25 formulas each";
}

// 12 ------------------------------------------------------------------------
void entailment(Outcome& o) {
  auto crisp = make_preset("pdl-crisp", shared("B2"));
  Verdict v = bounded_entailment({}, parse_formula("p -> [a] p", crisp->signature()), crisp, exhaustive(1, 2));
  o.require(v.status == VerdictStatus::Fails && v.counterexample.at("model").at("n") == 2,
            "no two-state countermodel for p -> [a] p");
  if (v.status == VerdictStatus::Fails) o.require(replay_counterexample(v.counterexample), "countermodel does not replay");

  Bounds b = exhaustive(1, 2);
  b.mode = SweepMode::Auto;
  b.budget = 20000;
  b.trials = 2000;
  int axioms = 0;
  for (auto [name, alg] : {std::pair{"pdl-crisp", "L2"}, {"pdl-labelled", "L2"}, {"pdl-threshold", "L2"},
                           {"game", "L2"}, {"instantial", "B2"}}) {
    auto logic = make_preset(name, shared(alg));
    auto reg = builtin_rules(logic);
    for (const auto& [key, rule] : reg.rules()) {
      Verdict e = bounded_entailment({}, reduction_axiom(rule, *logic), logic, b);
      o.require(e.status == VerdictStatus::HoldsUpToBound,
                std::string(name) + " axiom for (" + rule.target + ", " + rule.lifting + "): " + status_name(e.status));
      ++axioms;
    }
  }
  if (o.pass) o.detail << "countermodel at n = 2; " << axioms << " axioms hold up to bound";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "algebra laws", 1, algebra_laws},
      {2, "semi-primality", 5, semiprimality},
      {3, "labelled reduction rules", 60, labelled_rules},
      {4, "threshold reduction rules", 60, threshold_rules},
      {5, "instantial reduction rules", 120, instantial_rules},
      {6, "game reduction rules", 120, game_rules},
      {7, "safety", 120, safety},
      {8, "iteration oracle", 0, iteration_oracle},
      {9, "separation", 0, separation},
      {10, "one-step witnesses", 30, one_step},
      {11, "invariance", 0, invariance},
      {12, "entailment", 30, entailment},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.pass = false;
      o.detail << " (over the " << c.limit_seconds << " s limit)";
    }
    failures += !o.pass;
    std::printf("%s [%2d] %-28s %8.2f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
