#include <random>

#include "doctest.h"
#include "mvdl/error.hpp"
#include "mvdl/functor.hpp"
#include "mvdl/harness.hpp"
#include "mvdl/io.hpp"

using namespace mvdl;

TEST_CASE("enumeration counts") {
  Algebra b2 = builtin_by_name("B2"), l2 = builtin_by_name("L2");
  CHECK(FunctorSpace(FunctorKind::Powerset, 2, &b2).enumerate().size() == 4);
  CHECK(FunctorSpace(FunctorKind::APowerset, 2, &l2).enumerate().size() == 9);
  CHECK(FunctorSpace(FunctorKind::DoublePowerset, 2, &b2).enumerate().size() == 16);
  CHECK(FunctorSpace(FunctorKind::ANeighbourhood, 1, &l2).enumerate().size() == 27);
  // Monotone maps 2 -> 2 on the predicates of a one-state carrier.
  CHECK(FunctorSpace(FunctorKind::MonotoneANeighbourhood, 1, &b2).enumerate().size() == 3);
  // Monotone Boolean functions of two variables.
  CHECK(FunctorSpace(FunctorKind::MonotoneANeighbourhood, 2, &b2).enumerate().size() == 6);
}

TEST_CASE("monotone enumeration matches a filter over all tables") {
  for (const char* name : {"B2", "L2"})
    for (int n = 1; n <= 2; ++n) {
      Algebra a = builtin_by_name(name);
      FunctorSpace all(FunctorKind::ANeighbourhood, n, &a), mono(FunctorKind::MonotoneANeighbourhood, n, &a);
      const int m = a.size();
      std::size_t expected = 0;
      for (const auto& t : all.enumerate()) {
        bool ok = true;
        for (std::uint64_t i = 0; i < t.size() && ok; ++i)
          for (std::uint64_t j = 0; j < t.size() && ok; ++j) {
            auto p = predicate_decode(i, m, n), q = predicate_decode(j, m, n);
            bool below = true;
            for (int x = 0; x < n; ++x) below = below && a.leq(p[x], q[x]);
            if (below && !a.leq(t[i], t[j])) ok = false;
          }
        expected += ok;
      }
      CHECK(mono.enumerate().size() == expected);
    }
}

TEST_CASE("enumeration budget") {
  Algebra l2 = builtin_by_name("L2");
  FunctorSpace big(FunctorKind::ANeighbourhood, 3, &l2);
  try {
    big.enumerate(1000);
    FAIL("expected budget-exceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}

TEST_CASE("predicate indexing") {
  Predicate p{2, 0, 1};
  CHECK(predicate_index(p, 3) == 2 * 9 + 0 * 3 + 1);
  CHECK(predicate_decode(predicate_index(p, 3), 3, 3) == p);
  CHECK(predicate_count(3, 2) == 9);
}

TEST_CASE("image is functorial") {
  std::mt19937_64 rng(11);
  Algebra l2 = builtin_by_name("L2"), b2 = builtin_by_name("B2");
  for (FunctorKind kind : {FunctorKind::Powerset, FunctorKind::APowerset, FunctorKind::ANeighbourhood,
                           FunctorKind::MonotoneANeighbourhood, FunctorKind::DoublePowerset}) {
    const Algebra* a = kind == FunctorKind::Powerset || kind == FunctorKind::DoublePowerset ? &b2 : &l2;
    FunctorSpace X(kind, 3, a), Y(kind, 2, a), Z(kind, 2, a);
    for (int trial = 0; trial < 50; ++trial) {
      StateMap f(3), g(2), gf(3);
      for (auto& s : f) s = static_cast<int>(rng() % 2);
      for (auto& s : g) s = static_cast<int>(rng() % 2);
      for (int x = 0; x < 3; ++x) gf[x] = g[f[x]];
      FValue t = X.random(rng);
      CHECK(X.is_valid(t));
      CHECK(Y.image(g, Z, X.image(f, Y, t)) == X.image(gf, Z, t));
    }
    StateMap id{0, 1, 2};
    FValue t = X.random(rng);
    CHECK(X.image(id, X, t) == t);
  }
}

TEST_CASE("is_morphism") {
  Algebra b2 = builtin_by_name("B2");
  FunctorSpace X(FunctorKind::Powerset, 2, &b2), Y(FunctorKind::Powerset, 1, &b2);
  Coalgebra g{{0, 1}, {0, 0}};  // x -> y, y has no successor
  CHECK(is_morphism({0, 1}, g, g, X, X));
  CHECK_FALSE(is_morphism({0, 0}, g, Coalgebra{{1}}, X, Y));
  FunctorSpace W(FunctorKind::APowerset, 1, &b2);
  try {
    is_morphism({0, 0}, g, Coalgebra{{1}}, X, W);
    FAIL("expected tag-mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TagMismatch);
  }
}

TEST_CASE("JSON encodings") {
  Algebra b2 = builtin_by_name("B2"), l2 = builtin_by_name("L2");
  FunctorSpace P(FunctorKind::Powerset, 3, &b2), D(FunctorKind::DoublePowerset, 2, &b2),
      A(FunctorKind::APowerset, 2, &l2);
  CHECK(fvalue_to_json(P, {1, 0, 1}) == nlohmann::json(5));
  CHECK(fvalue_from_json(P, 6) == FValue{0, 1, 1});
  FValue d = D.bottom();
  d[0] = d[3] = 1;
  CHECK(fvalue_to_json(D, d) == nlohmann::json::array({0, 3}));
  CHECK(fvalue_from_json(D, nlohmann::json::array({0, 3})) == d);
  CHECK(fvalue_from_json(A, nlohmann::json::array({1, 2})) == FValue{1, 2});
  CHECK_THROWS_AS(fvalue_from_json(A, nlohmann::json::array({1, 3})), Error);
  CHECK_THROWS_AS(fvalue_from_json(P, 8), Error);
}
