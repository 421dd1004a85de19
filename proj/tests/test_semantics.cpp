#include "doctest.h"
#include "mvdl/error.hpp"
#include "mvdl/io.hpp"
#include "mvdl/presets.hpp"
#include "mvdl/semantics.hpp"

using namespace mvdl;

namespace {

std::shared_ptr<const Algebra> A(const std::string& name) { return std::make_shared<const Algebra>(builtin_by_name(name)); }

Elem value(const Model& m, const std::string& text, int x) {
  return eval(m, *parse_formula(text, m.logic->signature()))[x];
}

}  // namespace

TEST_CASE("lifting values") {
  auto l2 = A("L2");
  Context ctx{FunctorKind::APowerset, 2, l2.get(), l2.get()};
  LiftingSpec dia{"dia", 1, FunctorKind::APowerset, LiftingVariant::DiamondLabelled, 0};
  Predicate sigma{0, 1};
  CHECK(apply_lifting(dia, std::span<const Predicate>(&sigma, 1), FValue{0, 1}, ctx) == 0);

  auto b2 = A("B2");
  Context pc{FunctorKind::Powerset, 2, b2.get(), b2.get()};
  LiftingSpec box{"box", 1, FunctorKind::Powerset, LiftingVariant::BoxCrisp, 0};
  Predicate zero{0, 0};
  CHECK(apply_lifting(box, std::span<const Predicate>(&zero, 1), FValue{0, 0}, pc) == 1);

  Context dc{FunctorKind::DoublePowerset, 2, b2.get(), b2.get()};
  LiftingSpec i1{"i1", 1, FunctorKind::DoublePowerset, LiftingVariant::Instantial, 0};
  FValue empty_only(4, 0);
  empty_only[0] = 1;
  CHECK(apply_lifting(i1, std::span<const Predicate>(&zero, 1), empty_only, dc) == 1);
  LiftingSpec i2{"i2", 2, FunctorKind::DoublePowerset, LiftingVariant::Instantial, 0};
  std::vector<Predicate> args{zero, zero};
  CHECK(apply_lifting(i2, args, empty_only, dc) == 0);
}

TEST_CASE("crisp Kripke model over a chain") {
  Model m;
  m.logic = make_preset("pdl-crisp", A("L2"));
  m.n = 2;
  m.atoms["a"] = {{0, 1}, {0, 0}};
  m.valuation["p"] = {0, 1};
  CHECK(value(m, "<a> p", 0) == 1);
  CHECK(value(m, "[a] p", 1) == 2);
  CHECK(value(m, "[a*] p", 0) == 0);
  CHECK(value(m, "<a*> p", 0) == 1);
}

TEST_CASE("labelled composition") {
  Model m;
  m.logic = make_preset("pdl-labelled", A("L2"));
  m.n = 3;
  m.atoms["a"] = {{0, 1, 0}, {0, 0, 0}, {0, 0, 0}};
  m.atoms["b"] = {{0, 0, 0}, {0, 0, 1}, {0, 0, 0}};
  m.valuation["p"] = {0, 0, 2};
  CHECK(value(m, "<a;b> p", 0) == 0);
  CHECK(value(m, "<a> <b> p", 0) == 0);
  CHECK(value(m, "<b> p", 1) == 1);
  CHECK(value(m, "<?test(p)> p", 2) == 2);
}

TEST_CASE("unknown atoms and props") {
  Model m;
  m.logic = make_preset("pdl-crisp", A("B2"));
  m.n = 1;
  m.atoms["a"] = {{0}};
  m.valuation["p"] = {1};
  try {
    value(m, "<b> p", 0);
    FAIL("expected unknown-atom");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownAtom);
  }
  CHECK_THROWS_AS(value(m, "<a> q", 0), Error);
}

TEST_CASE("game and instantial evaluation") {
  Model g;
  g.logic = make_preset("game", A("L2"));
  g.n = 1;
  // Identity neighbourhood: ev(sigma) = sigma(x).
  g.atoms["a"] = {{0, 1, 2}};
  g.valuation["p"] = {1};
  CHECK(value(g, "<a> p", 0) == 1);
  CHECK(value(g, "<a^d> p", 0) == 1);
  CHECK(value(g, "<a;a> p", 0) == 1);

  Model i;
  i.logic = make_preset("instantial", A("B2"));
  i.n = 2;
  FValue nx(4, 0), ny(4, 0);
  nx[3] = 1;  // {{x, y}}
  i.atoms["a"] = {nx, ny};
  i.valuation["p"] = {1, 0};
  i.valuation["q"] = {1, 1};
  CHECK(value(i, "<a:i2>(p, q)", 0) == 1);
  CHECK(value(i, "<a:i2>(p, p)", 0) == 0);
  CHECK(value(i, "<a:i1> q", 1) == 0);
}

TEST_CASE("model JSON round trip") {
  nlohmann::json j = {{"n", 2},
                      {"algebra", "L2"},
                      {"kind", "APowerset"},
                      {"atoms", {{"a", {{0, 1}, {2, 0}}}}},
                      {"valuation", {{"p", {1, 2}}}}};
  Model m = model_from_json(j);
  CHECK(m.logic->name == "pdl-labelled");
  CHECK(m.atoms.at("a")[1] == FValue{2, 0});
  auto back = model_to_json(m);
  CHECK(back.at("atoms") == j.at("atoms"));
  CHECK(back.at("valuation") == j.at("valuation"));
  j["valuation"]["p"] = {1, 3};
  CHECK_THROWS_AS(model_from_json(j), Error);
  j["valuation"]["p"] = {1, 2};
  j["kind"] = "Powerset";
  CHECK_THROWS_AS(model_from_json(j), Error);
}

TEST_CASE("algebra JSON") {
  auto l3 = builtin_by_name("L3");
  auto j = algebra_to_json(l3);
  j.erase("impl");
  Algebra back = algebra_from_json(j);
  CHECK(back.impl_table() == l3.impl_table());
  CHECK(validate_flew(back).ok());
}

TEST_CASE("threshold model") {
  Model m;
  m.logic = make_preset("pdl-threshold", A("L2"));
  m.n = 2;
  m.atoms["a"] = {{0, 1}, {0, 0}};
  m.valuation["p"] = {0, 1};
  CHECK(value(m, "<a:t1> p", 0) == 1);
  CHECK(value(m, "<a:t2> p", 0) == 0);
  CHECK(value(m, "<a;?test(p):t1> p", 0) == 1);
  CHECK(value(m, "<a;?test(~p):t1> p", 0) == 0);
}
