#include <random>

#include "doctest.h"
#include "mvdl/error.hpp"
#include "mvdl/harness.hpp"
#include "mvdl/io.hpp"
#include "mvdl/presets.hpp"

using namespace mvdl;

namespace {

const Algebra& alg(const std::string& name) {
  static std::map<std::string, Algebra> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, builtin_by_name(name)).first;
  return it->second;
}

std::shared_ptr<const LogicConfig> preset(const std::string& name, const std::string& a = "L2") {
  return make_preset(name, std::make_shared<const Algebra>(builtin_by_name(a)));
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidInput;
}

Bounds small(int max_n = 2, int max_target = 2) {
  Bounds b;
  b.max_n = max_n;
  b.max_n_target = max_target;
  return b;
}

}  // namespace

TEST_CASE("verdict encoding") {
  Verdict v;
  v.check = "demo";
  v.seconds = 1.5;
  CHECK_FALSE(v.to_json().contains("seconds"));
  CHECK(v.to_json(true).contains("seconds"));
  CHECK(v.to_json().at("status") == "holds-up-to-bound");
  CHECK(mode_from_name("auto") == SweepMode::Auto);
  CHECK_THROWS_AS(mode_from_name("sometimes"), Error);
}

TEST_CASE("safety of pointwise operations") {
  Context ctx = make_context(FunctorKind::APowerset, alg("L2"));
  OperationSpec join{"+", 2, FunctorKind::APowerset, OpVariant::JoinPW};
  CHECK(check_safety(join, ctx, small(1, 2)).status == VerdictStatus::HoldsUpToBound);

  OperationSpec meet{"&", 2, FunctorKind::APowerset, OpVariant::MeetPW};
  Verdict v = check_safety(meet, ctx, small(2, 1));
  REQUIRE(v.status == VerdictStatus::Fails);
  CHECK(v.counterexample.at("check") == "safety");
  CHECK(replay_counterexample(v.counterexample));

  // The same witness does not break the pointwise join.
  auto tampered = v.counterexample;
  tampered["op"]["variant"] = "JoinPW";
  CHECK_FALSE(replay_counterexample(tampered));
  tampered["state"] = 7;
  CHECK(code_of([&] { replay_counterexample(tampered); }) == ErrorCode::InvalidInput);
}

TEST_CASE("safety on the powerset functor") {
  Context ctx = make_context(FunctorKind::Powerset, alg("B2"));
  for (OpVariant variant : {OpVariant::Union, OpVariant::Kleisli, OpVariant::CounterDomain, OpVariant::Star}) {
    const int arity = variant == OpVariant::Union || variant == OpVariant::Kleisli ? 2 : 1;
    OperationSpec op{"op", arity, FunctorKind::Powerset, variant};
    CHECK(check_safety(op, ctx, small()).ok());
  }
  TestSpec t{"test", FunctorKind::Powerset, TestVariant::TestP, {false, true}};
  CHECK(check_safety(t, ctx, small()).status == VerdictStatus::HoldsUpToBound);
}

TEST_CASE("parallel sweeps report the same counterexample") {
  Context ctx = make_context(FunctorKind::APowerset, alg("L2"));
  OperationSpec meet{"&", 2, FunctorKind::APowerset, OpVariant::MeetPW};
  Bounds serial = small(2, 1), parallel = small(2, 1);
  parallel.jobs = 4;
  CHECK(check_safety(meet, ctx, serial).counterexample == check_safety(meet, ctx, parallel).counterexample);
}

TEST_CASE("budget and random mode") {
  Context ctx = make_context(FunctorKind::APowerset, alg("L2"));
  OperationSpec join{"+", 2, FunctorKind::APowerset, OpVariant::JoinPW};
  Bounds b = small();
  b.budget = 10;
  CHECK(code_of([&] { check_safety(join, ctx, b); }) == ErrorCode::BudgetExceeded);
  b.mode = SweepMode::Random;
  b.trials = 200;
  Verdict v = check_safety(join, ctx, b);
  CHECK(v.ok());
  CHECK(v.cases > 0);
}

TEST_CASE("separation") {
  Context pc = make_context(FunctorKind::Powerset, alg("B2"), 3);
  LiftingSpec box{"box", 1, FunctorKind::Powerset, LiftingVariant::BoxCrisp, 0};
  CHECK(check_separation({box}, pc, Bounds{}).status == VerdictStatus::HoldsUpToBound);

  Context tc{FunctorKind::APowerset, 2, &alg("B2"), &alg("L2")};
  LiftingSpec t1{"t1", 1, FunctorKind::APowerset, LiftingVariant::Threshold, 1};
  LiftingSpec t2{"t2", 1, FunctorKind::APowerset, LiftingVariant::Threshold, 2};
  CHECK(check_separation({t1, t2}, tc, Bounds{}).status == VerdictStatus::HoldsUpToBound);
  Verdict v = check_separation({t2}, tc, Bounds{});
  REQUIRE(v.status == VerdictStatus::Fails);
  CHECK(v.counterexample.at("check") == "separation");
  CHECK(replay_counterexample(v.counterexample));
}

TEST_CASE("corrupted rules are caught") {
  auto logic = preset("pdl-crisp", "B2");
  auto reg = builtin_rules(logic);
  CHECK(verify_reduction_rule(*reg.find(false, "+", "box"), *logic, small()).status ==
        VerdictStatus::HoldsUpToBound);

  ReductionRule bad{"+", false, "box", parse_template("<#1:box> w1 | <#2:box> w1", logic->signature(), 2, 1)};
  Verdict v = verify_reduction_rule(bad, *logic, small());
  REQUIRE(v.status == VerdictStatus::Fails);
  CHECK(v.counterexample.at("check") == "reduction-rule");
  CHECK(v.counterexample.at("model").at("n") == 1);
  CHECK(replay_counterexample(v.counterexample));

  auto axiom = reduction_axiom(bad, *logic);
  CHECK(render(*rule_lhs(bad, *logic)) == "<a1+a2:box> p1");
  Verdict e = bounded_entailment({}, axiom, logic, small(1));
  CHECK(e.status == VerdictStatus::Fails);
}

TEST_CASE("test rules") {
  auto logic = preset("pdl-labelled");
  auto reg = builtin_rules(logic);
  for (const char* lifting : {"box", "dia"})
    CHECK(verify_reduction_rule(*reg.find(true, "test", lifting), *logic, small()).ok());
  ReductionRule bad{"test", true, "dia", parse_template("w1 & w2", logic->signature(), 0, 2)};
  CHECK(verify_reduction_rule(bad, *logic, small()).status == VerdictStatus::Fails);
}

TEST_CASE("one-step witnesses round trip") {
  std::mt19937_64 rng(8);
  for (OneStepKind k : {OneStepKind::LabelledDiamond, OneStepKind::Threshold, OneStepKind::MonotoneEval}) {
    const Algebra& a = alg("L2");
    for (int n = 1; n <= 2; ++n) {
      FunctorSpace space(onestep_functor(k), n, &a);
      for (int i = 0; i < 20; ++i) {
        FValue alpha = space.random(rng);
        auto h = induced_assignment(k, a, n, alpha);
        CHECK(RankOneAssignment::from_json(h.to_json()).tables == h.tables);
        auto r = one_step_witness(k, a, h);
        REQUIRE(r.satisfiable);
        CHECK(r.alpha == alpha);
      }
    }
  }
  CHECK(code_of([] { onestep_kind_from_name("instantial"); }) == ErrorCode::UnsupportedKind);
}

TEST_CASE("corrupted one-step inputs name the broken axiom") {
  const Algebra& a = alg("L2");
  auto h = induced_assignment(OneStepKind::LabelledDiamond, a, 2, FValue{1, 2});
  h.tables["dia"][predicate_index({2, 2}, 3)] = 0;
  auto r = one_step_witness(OneStepKind::LabelledDiamond, a, h);
  CHECK_FALSE(r.satisfiable);
  CHECK(r.axiom == "diamond-join");

  auto t = induced_assignment(OneStepKind::Threshold, a, 2, FValue{1, 0});
  t.tables["t1"][0] = 1;
  CHECK(one_step_witness(OneStepKind::Threshold, a, t).axiom == "threshold-bottom");

  auto t2 = induced_assignment(OneStepKind::Threshold, a, 1, FValue{2});
  t2.tables["t1"][1] = 0;
  CHECK(one_step_witness(OneStepKind::Threshold, a, t2).axiom == "threshold-monotone");

  auto e = induced_assignment(OneStepKind::MonotoneEval, a, 1, FValue{0, 1, 2});
  e.tables["ev"] = {2, 1, 0};
  CHECK(one_step_witness(OneStepKind::MonotoneEval, a, e).axiom == "monotonicity");

}

TEST_CASE("quotients preserve formulas") {
  auto logic = preset("pdl-crisp", "B2");
  Model m{logic, 3, {{"a", {{0, 1, 1}, {0, 1, 0}, {0, 0, 1}}}}, {{"p", {0, 1, 1}}}};
  auto [q, f] = quotient_model(m);
  CHECK(q.n == 2);
  CHECK(f == StateMap{0, 1, 1});
  std::vector<FormulaPtr> fs;
  for (const char* text : {"<a> p", "[a;a] p", "<(a;a)+a> ~p", "[a*] p", "<?test(p)> p"})
    fs.push_back(parse_formula(text, logic->signature()));
  CHECK(check_invariance(m, q, f, fs).status == VerdictStatus::Holds);

  Model wrong = q;
  wrong.valuation["p"] = {1, 1};
  CHECK(code_of([&] { check_invariance(m, wrong, f, fs); }) == ErrorCode::PreconditionViolated);
}

TEST_CASE("bounded entailment") {
  auto logic = preset("pdl-crisp", "B2");
  const Signature sig = logic->signature();
  Verdict v = bounded_entailment({}, parse_formula("p -> [a] p", sig), logic, small());
  REQUIRE(v.status == VerdictStatus::Fails);
  CHECK(v.counterexample.at("model").at("n") == 2);
  CHECK(replay_counterexample(v.counterexample));

  CHECK(bounded_entailment({parse_formula("p", sig)}, parse_formula("p | q", sig), logic, small()).ok());
  CHECK(bounded_entailment({}, parse_formula("[a](p & q) -> [a] p", sig), logic, small()).ok());
}
