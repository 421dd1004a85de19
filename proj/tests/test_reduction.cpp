#include <random>

#include "doctest.h"
#include "mvdl/error.hpp"
#include "mvdl/harness.hpp"
#include "mvdl/presets.hpp"
#include "mvdl/reduction.hpp"

using namespace mvdl;

namespace {

std::shared_ptr<const LogicConfig> preset(const std::string& name, const std::string& alg = "L2") {
  return make_preset(name, std::make_shared<const Algebra>(builtin_by_name(alg)));
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

std::string reduced(const RuleRegistry& reg, const std::string& text) {
  return render(*reduce_full(parse_formula(text, reg.logic().signature()), reg));
}

Model random_model(std::shared_ptr<const LogicConfig> logic, int n, std::mt19937_64& rng) {
  Model m;
  m.logic = logic;
  m.n = n;
  auto space = logic->context(n).space();
  for (const char* a : {"a", "b"}) {
    Coalgebra g(n);
    for (auto& t : g) t = space.random(rng);
    m.atoms[a] = g;
  }
  for (const char* p : {"p", "q", "r"}) {
    Predicate v(n);
    for (auto& e : v) e = static_cast<Elem>(rng() % logic->truth->size());
    m.valuation[p] = v;
  }
  return m;
}

}  // namespace

TEST_CASE("registry coverage per preset") {
  auto crisp = builtin_rules(preset("pdl-crisp"));
  CHECK(crisp.complete());
  CHECK(render(crisp.find(false, "+", "box")->rhs) == "<#1:box> w1 & <#2:box> w1");
  CHECK(crisp.find(false, ";", "box") != nullptr);
  CHECK(crisp.find(false, "~", "box") != nullptr);
  CHECK(crisp.find(true, "test", "box") != nullptr);
  CHECK(crisp.iteration_ops() == std::set<std::string>{"*"});

  auto game = builtin_rules(preset("game"));
  CHECK(game.complete());
  for (const char* op : {"+", "&", "^d", ";"}) CHECK(game.find(false, op, "ev") != nullptr);
  CHECK(render(game.find(false, "^d", "ev")->rhs) == "~<#1:ev> ~w1");

  auto inst = builtin_rules(make_preset("instantial", std::make_shared<const Algebra>(builtin_by_name("B2")),
                                        PresetOptions{1}));
  CHECK(inst.complete());
  CHECK(render(inst.find(false, ";", "i2")->rhs) == "<#1:i2>(<#2:i2>(w1, w2), <#2:i1> w2)");

  for (const char* name : {"pdl-labelled", "pdl-threshold"}) CHECK(builtin_rules(preset(name)).complete());
}

TEST_CASE("threshold composition expands over the algebra") {
  auto logic = preset("pdl-threshold", "L2");
  auto reg = builtin_rules(logic);
  // Over L2, r1 * r2 >= 1/2 needs one factor to be 1.
  CHECK(render(reg.find(false, ";", "t1")->rhs) ==
        "<#1:t1> <#2:t2> w1 | <#1:t2> <#2:t1> w1 | <#1:t2> <#2:t2> w1");
  CHECK(render(reg.find(false, ";", "t2")->rhs) == "<#1:t2> <#2:t2> w1");

  std::vector<Elem> mc, jc, ic;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      mc.push_back(static_cast<Elem>(i & j));
      jc.push_back(static_cast<Elem>(i | j));
      ic.push_back(static_cast<Elem>((~i | j) & 3));
    }
  Algebra four("B2xB2", OpTable(4, mc), OpTable(4, jc), OpTable(4, mc), OpTable(4, ic), {"0", "a", "b", "1"}, {});
  CHECK(code_of([&] { make_preset("pdl-threshold", std::make_shared<const Algebra>(four)); }) ==
        ErrorCode::NonlinearAlgebra);
}

TEST_CASE("reduction examples") {
  auto reg = builtin_rules(preset("pdl-labelled"));
  const Signature sig = reg.logic().signature();
  auto once = reduce_step(parse_formula("<a;b> p", sig), reg);
  REQUIRE(once.has_value());
  CHECK(render(**once) == "<a:dia> <b:dia> p");
  CHECK(reduced(reg, "<?test(q)> p") == "q * p");
  CHECK_FALSE(reduce_step(parse_formula("<a> p", sig), reg).has_value());
  CHECK(reduced(reg, "p -> q") == "p -> q");
  CHECK(code_of([&] { reduce_full(parse_formula("<a*> p", sig), reg); }) == ErrorCode::IterationPresent);

  auto crisp = builtin_rules(preset("pdl-crisp", "B2"));
  CHECK(reduced(crisp, "<(a;b)+c> p") == "<a:dia> <b:dia> p | <c:dia> p");
}

TEST_CASE("crisp example agrees on every two-state model") {
  auto logic = preset("pdl-crisp", "B2");
  auto reg = builtin_rules(logic);
  auto f = parse_formula("<(a;b)+c> p", logic->signature());
  auto g = reduce_full(f, reg);
  auto space = logic->context(2).space();
  auto rels = space.enumerate();
  int models = 0;
  for (const auto& a0 : rels)
    for (const auto& a1 : rels)
      for (const auto& b0 : rels)
        for (const auto& b1 : rels)
          for (const auto& c0 : rels)
            for (const auto& c1 : rels)
              for (int pv = 0; pv < 4; ++pv) {
                Model m{logic, 2, {{"a", {a0, a1}}, {"b", {b0, b1}}, {"c", {c0, c1}}},
                        {{"p", {static_cast<Elem>(pv & 1), static_cast<Elem>(pv >> 1)}}}};
                if (eval(m, *f) != eval(m, *g)) FAIL("reduced formula disagrees");
                ++models;
              }
  CHECK(models == 16384);
}

TEST_CASE("missing characteristic functions") {
  auto g2 = preset("pdl-labelled", "G2");
  auto reg = builtin_rules(g2);
  CHECK_FALSE(reg.complete());
  CHECK(reg.gaps() == std::vector<std::string>{"op ~ / box"});
  REQUIRE(reg.notes().size() == 1);
  CHECK(reg.notes()[0].find("counter-domain box") != std::string::npos);
  CHECK(code_of([&] { builtin_rules(g2, true); }) == ErrorCode::MissingChi);
  CHECK(code_of([&] { reduce_full(parse_formula("[~a] p", g2->signature()), reg); }) == ErrorCode::NoRule);

  // Installing the extra closes the gap.
  auto fixed = builtin_rules(preset("pdl-labelled", "G2+chi"), true);
  CHECK(fixed.complete());
}

TEST_CASE("registry replacement and headers") {
  auto logic = preset("pdl-labelled");
  auto reg = builtin_rules(logic);
  const Signature sig = logic->signature();
  reg.add({"+", false, "dia", parse_template("<#2:dia> w1 | <#1:dia> w1", sig)});
  CHECK(reg.warnings().size() == 1);
  CHECK(code_of([&] { reg.add({"+", false, "dia", parse_template("<#1:dia> w1", sig)}); }) ==
        ErrorCode::ArityMismatch);
}

TEST_CASE("strategies agree and preserve meaning") {
  std::mt19937_64 rng(17);
  int compared = 0;
  for (const char* name : {"pdl-crisp", "pdl-labelled", "pdl-threshold", "game", "instantial"}) {
    auto logic = preset(name, std::string(name) == "instantial" ? "B2" : "L2");
    auto reg = builtin_rules(logic);
    REQUIRE(reg.complete());
    for (int i = 0; i < 150; ++i) {
      auto f = random_formula(*logic, {"p", "q", "r"}, {"a", "b"}, 3, rng);
      if (contains_op(*f, reg.iteration_ops())) continue;
      auto in = reduce_full(f, reg, Strategy::InnermostLeftmost);
      auto out = reduce_full(f, reg, Strategy::OutermostLeftmost);
      CHECK(is_normal_form(*in));
      CHECK(is_normal_form(*out));
      for (int trial = 0; trial < 5; ++trial) {
        Model m = random_model(logic, 2, rng);
        auto v = eval(m, *f);
        CHECK_MESSAGE(eval(m, *in) == v, render(*f));
        CHECK(eval(m, *out) == v);
      }
      ++compared;
    }
  }
  CHECK(compared > 200);
}

TEST_CASE("rewrite budget") {
  auto reg = builtin_rules(preset("pdl-labelled"));
  auto f = parse_formula("<a;b;a;b> p", reg.logic().signature());
  CHECK(code_of([&] { reduce_full(f, reg, Strategy::InnermostLeftmost, 1); }) == ErrorCode::NonTerminationGuard);
}

TEST_CASE("instantial counter-domain needs every argument") {
  auto logic = make_preset("instantial", std::make_shared<const Algebra>(builtin_by_name("B2")), PresetOptions{1});
  Bounds b;
  b.max_n = 2;
  auto reg = builtin_rules(logic);
  CHECK(verify_reduction_rule(*reg.find(false, "~", "i2"), *logic, b).status == VerdictStatus::HoldsUpToBound);

  // Guarding with the full-arity modality is not sound: a neighbourhood
  // containing only the empty set defeats it.
  ReductionRule alt{"~", false, "i2", parse_template("~<#1:i2>(1, 1) & w1 & w2", logic->signature(), 1, 2)};
  Verdict v = verify_reduction_rule(alt, *logic, b);
  REQUIRE(v.status == VerdictStatus::Fails);
  CHECK(v.counterexample.at("model").at("n") == 1);
  CHECK(replay_counterexample(v.counterexample));
}

TEST_CASE("instantial union rule drops unmet arguments") {
  auto logic = make_preset("instantial", std::make_shared<const Algebra>(builtin_by_name("B2")), PresetOptions{1});
  auto reg = builtin_rules(logic);
  CHECK(render(reg.find(false, "cup", "i2")->rhs) ==
        "<#1:i1> w2 & <#2:i2>(w1, w2) | <#1:i2>(w1, w2) & <#2:i1> w2");
  Bounds b;
  CHECK(verify_reduction_rule(*reg.find(false, "cup", "i2"), *logic, b).ok());

  // Padding with 1 instead fails once a neighbourhood holds the empty set.
  ReductionRule padded{"cup", false, "i2",
                       parse_template("<#1:i2>(1, w2) & <#2:i2>(w1, w2) | <#1:i2>(w1, w2) & <#2:i2>(1, w2)",
                                      logic->signature(), 2, 2)};
  Verdict v = verify_reduction_rule(padded, *logic, b);
  REQUIRE(v.status == VerdictStatus::Fails);
  CHECK(replay_counterexample(v.counterexample));
  bool empty_member = false;
  for (const auto& [name, g] : v.counterexample.at("model").at("atoms").items())
    for (const auto& nb : g)
      for (const auto& z : nb) empty_member = empty_member || z == 0;
  CHECK(empty_member);
}
