#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mvdl/algebra.hpp"
#include "mvdl/functor.hpp"
#include "mvdl/syntax.hpp"

namespace mvdl {

enum class LiftingVariant { BoxCrisp, DiamondCrisp, BoxLabelled, DiamondLabelled, Threshold, Eval, Instantial };

struct LiftingSpec {
  std::string id;
  int arity = 1;
  FunctorKind kind = FunctorKind::Powerset;
  LiftingVariant variant = LiftingVariant::BoxCrisp;
  Elem threshold = 0;  // Threshold only, in the structure algebra
};

enum class OpVariant { Union, JoinPW, MeetPW, Dual, Kleisli, DoubleSeq, DoubleStar, Star, NbhUnion, CounterDomain };

struct OperationSpec {
  std::string id;
  int arity = 2;
  FunctorKind kind = FunctorKind::Powerset;
  OpVariant variant = OpVariant::Union;
};

enum class TestVariant { TestP, LabelledUnit, AngelicMonoid, InstantialP };

struct TestSpec {
  std::string id;
  FunctorKind kind = FunctorKind::Powerset;
  TestVariant variant = TestVariant::TestP;
  std::vector<bool> P;  // subset of the truth algebra; TestP and InstantialP only
};

std::string variant_name(LiftingVariant v);
std::string variant_name(OpVariant v);
std::string variant_name(TestVariant v);
OpVariant op_variant_from_name(const std::string& name);
TestVariant test_variant_from_name(const std::string& name);

void check_compatible(const LiftingSpec& l);
void check_compatible(const OperationSpec& o);
void check_compatible(const TestSpec& t);

// Algebras and carrier size shared by every semantic computation. Formulas
// take values in the truth algebra; F-values are labelled by the structure
// algebra. The two coincide except for threshold logics.
struct Context {
  FunctorKind kind;
  int n;
  const Algebra* truth;
  const Algebra* structure;

  FunctorSpace space() const { return FunctorSpace(kind, n, structure); }
  Context with_n(int n2) const { return {kind, n2, truth, structure}; }
  // Maps a truth value into the structure algebra (identity when equal,
  // 0/1 to bottom/top when the truth algebra is two-valued).
  Elem embed(Elem truth_value) const;
};

struct LogicConfig {
  std::string name;
  FunctorKind kind = FunctorKind::Powerset;
  std::shared_ptr<const Algebra> truth;
  std::shared_ptr<const Algebra> structure;
  std::vector<LiftingSpec> liftings;
  std::vector<OperationSpec> ops;
  std::vector<TestSpec> tests;
  std::string box;
  std::string diamond;

  const LiftingSpec& lifting(const std::string& id) const;
  const OperationSpec& operation(const std::string& id) const;
  const TestSpec& test_spec(const std::string& id) const;
  const LiftingSpec* find_lifting(const std::string& id) const;
  const OperationSpec* find_operation(const std::string& id) const;
  const TestSpec* find_test(const std::string& id) const;

  Context context(int n) const { return {kind, n, truth.get(), structure.get()}; }
  Signature signature() const;
  void validate() const;
};

}  // namespace mvdl
