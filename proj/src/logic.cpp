#include "mvdl/logic.hpp"

#include <set>

#include "mvdl/error.hpp"

namespace mvdl {

std::string variant_name(LiftingVariant v) {
  switch (v) {
    case LiftingVariant::BoxCrisp: return "BoxCrisp";
    case LiftingVariant::DiamondCrisp: return "DiamondCrisp";
    case LiftingVariant::BoxLabelled: return "BoxLabelled";
    case LiftingVariant::DiamondLabelled: return "DiamondLabelled";
    case LiftingVariant::Threshold: return "Threshold";
    case LiftingVariant::Eval: return "Eval";
    case LiftingVariant::Instantial: return "Instantial";
  }
  return "?";
}

std::string variant_name(OpVariant v) {
  switch (v) {
    case OpVariant::Union: return "Union";
    case OpVariant::JoinPW: return "JoinPW";
    case OpVariant::MeetPW: return "MeetPW";
    case OpVariant::Dual: return "Dual";
    case OpVariant::Kleisli: return "Kleisli";
    case OpVariant::DoubleSeq: return "DoubleSeq";
    case OpVariant::DoubleStar: return "DoubleStar";
    case OpVariant::Star: return "Star";
    case OpVariant::NbhUnion: return "NbhUnion";
    case OpVariant::CounterDomain: return "CounterDomain";
  }
  return "?";
}

std::string variant_name(TestVariant v) {
  switch (v) {
    case TestVariant::TestP: return "TestP";
    case TestVariant::LabelledUnit: return "LabelledUnit";
    case TestVariant::AngelicMonoid: return "AngelicMonoid";
    case TestVariant::InstantialP: return "InstantialP";
  }
  return "?";
}

OpVariant op_variant_from_name(const std::string& name) {
  for (auto v : {OpVariant::Union, OpVariant::JoinPW, OpVariant::MeetPW, OpVariant::Dual, OpVariant::Kleisli,
                 OpVariant::DoubleSeq, OpVariant::DoubleStar, OpVariant::Star, OpVariant::NbhUnion,
                 OpVariant::CounterDomain})
    if (variant_name(v) == name) return v;
  throw Error(ErrorCode::InvalidInput, "unknown operation variant '" + name + "'");
}

TestVariant test_variant_from_name(const std::string& name) {
  for (auto v : {TestVariant::TestP, TestVariant::LabelledUnit, TestVariant::AngelicMonoid, TestVariant::InstantialP})
    if (variant_name(v) == name) return v;
  throw Error(ErrorCode::InvalidInput, "unknown test variant '" + name + "'");
}

namespace {
[[noreturn]] void incompatible(const std::string& what, FunctorKind kind) {
  throw Error(ErrorCode::IncompatibleVariant, what + " does not apply to " + kind_name(kind));
}
}  // namespace

void check_compatible(const LiftingSpec& l) {
  bool ok = false;
  switch (l.variant) {
    case LiftingVariant::BoxCrisp:
    case LiftingVariant::DiamondCrisp: ok = l.kind == FunctorKind::Powerset; break;
    case LiftingVariant::BoxLabelled:
    case LiftingVariant::DiamondLabelled:
    case LiftingVariant::Threshold: ok = l.kind == FunctorKind::APowerset; break;
    case LiftingVariant::Eval: ok = is_neighbourhood(l.kind); break;
    case LiftingVariant::Instantial: ok = l.kind == FunctorKind::DoublePowerset; break;
  }
  if (!ok) incompatible(variant_name(l.variant), l.kind);
  if (l.variant == LiftingVariant::Instantial ? l.arity < 1 : l.arity != 1)
    throw Error(ErrorCode::ArityMismatch, "lifting '" + l.id + "' has the wrong arity");
}

void check_compatible(const OperationSpec& o) {
  bool ok = false;
  int arity = 2;
  switch (o.variant) {
    case OpVariant::Union: ok = o.kind == FunctorKind::Powerset || o.kind == FunctorKind::DoublePowerset; break;
    case OpVariant::JoinPW:
    case OpVariant::MeetPW: ok = true; break;
    case OpVariant::Dual: ok = is_neighbourhood(o.kind); arity = 1; break;
    case OpVariant::Kleisli: ok = o.kind != FunctorKind::DoublePowerset; break;
    case OpVariant::DoubleSeq:
    case OpVariant::DoubleStar:
    case OpVariant::NbhUnion: ok = o.kind == FunctorKind::DoublePowerset; break;
    case OpVariant::Star:
    case OpVariant::CounterDomain: ok = true; arity = 1; break;
  }
  if (!ok) incompatible(variant_name(o.variant), o.kind);
  if (o.arity != arity) throw Error(ErrorCode::ArityMismatch, "operation '" + o.id + "' has the wrong arity");
}

void check_compatible(const TestSpec& t) {
  bool ok = false;
  switch (t.variant) {
    case TestVariant::TestP: ok = t.kind != FunctorKind::DoublePowerset; break;
    case TestVariant::LabelledUnit: ok = t.kind == FunctorKind::APowerset; break;
    case TestVariant::AngelicMonoid: ok = is_neighbourhood(t.kind); break;
    case TestVariant::InstantialP: ok = t.kind == FunctorKind::DoublePowerset; break;
  }
  if (!ok) incompatible(variant_name(t.variant), t.kind);
}

Elem Context::embed(Elem v) const {
  if (truth == structure) return v;
  if (truth->size() == 2) return v == truth->top() ? structure->top() : structure->bot();
  if (truth->size() == structure->size()) return v;
  throw Error(ErrorCode::IncompatibleVariant, "truth values do not embed into the structure algebra");
}

const LiftingSpec* LogicConfig::find_lifting(const std::string& id) const {
  for (const auto& l : liftings)
    if (l.id == id) return &l;
  return nullptr;
}

const OperationSpec* LogicConfig::find_operation(const std::string& id) const {
  for (const auto& o : ops)
    if (o.id == id) return &o;
  return nullptr;
}

const TestSpec* LogicConfig::find_test(const std::string& id) const {
  for (const auto& t : tests)
    if (t.id == id) return &t;
  return nullptr;
}

const LiftingSpec& LogicConfig::lifting(const std::string& id) const {
  if (auto* l = find_lifting(id)) return *l;
  throw Error(ErrorCode::UnknownIdentifier, "unknown lifting '" + id + "'");
}

const OperationSpec& LogicConfig::operation(const std::string& id) const {
  if (auto* o = find_operation(id)) return *o;
  throw Error(ErrorCode::UnknownIdentifier, "unknown operation '" + id + "'");
}

const TestSpec& LogicConfig::test_spec(const std::string& id) const {
  if (auto* t = find_test(id)) return *t;
  throw Error(ErrorCode::UnknownIdentifier, "unknown test '" + id + "'");
}

Signature LogicConfig::signature() const {
  Signature sig = Signature::with_algebra(*truth);
  for (const auto& l : liftings) sig.liftings[l.id] = l.arity;
  for (const auto& o : ops) sig.ops[o.id] = o.arity;
  for (const auto& t : tests) sig.tests.insert(t.id);
  sig.box = box;
  sig.diamond = diamond;
  return sig;
}

void LogicConfig::validate() const {
  if (!truth || !structure) throw Error(ErrorCode::InvalidInput, "logic '" + name + "' lacks an algebra");
  const bool same = truth == structure;
  std::set<std::string> seen;
  for (const auto& l : liftings) {
    if (l.kind != kind) throw Error(ErrorCode::TagMismatch, "lifting '" + l.id + "' is for another functor");
    check_compatible(l);
    if (!seen.insert(l.id).second) throw Error(ErrorCode::InvalidInput, "duplicate lifting '" + l.id + "'");
    switch (l.variant) {
      case LiftingVariant::BoxLabelled:
      case LiftingVariant::DiamondLabelled:
      case LiftingVariant::Eval:
        if (!same) throw Error(ErrorCode::IncompatibleVariant, "'" + l.id + "' needs equal truth and structure algebras");
        break;
      case LiftingVariant::Threshold:
      case LiftingVariant::Instantial:
        if (truth->size() != 2)
          throw Error(ErrorCode::IncompatibleVariant, "'" + l.id + "' is two-valued; use a two-element truth algebra");
        if (l.variant == LiftingVariant::Threshold && (l.threshold == 0 || l.threshold >= structure->size()))
          throw Error(ErrorCode::InvalidParameter, "threshold of '" + l.id + "' must be a nonzero element");
        break;
      default: break;
    }
  }
  seen.clear();
  for (const auto& o : ops) {
    if (o.kind != kind) throw Error(ErrorCode::TagMismatch, "operation '" + o.id + "' is for another functor");
    check_compatible(o);
    if (!seen.insert(o.id).second) throw Error(ErrorCode::InvalidInput, "duplicate operation '" + o.id + "'");
  }
  seen.clear();
  for (const auto& t : tests) {
    if (t.kind != kind) throw Error(ErrorCode::TagMismatch, "test '" + t.id + "' is for another functor");
    check_compatible(t);
    if (!seen.insert(t.id).second) throw Error(ErrorCode::InvalidInput, "duplicate test '" + t.id + "'");
    if ((t.variant == TestVariant::TestP || t.variant == TestVariant::InstantialP) &&
        static_cast<int>(t.P.size()) != truth->size())
      throw Error(ErrorCode::InvalidParameter, "test '" + t.id + "' subset has the wrong size");
    if (t.variant == TestVariant::AngelicMonoid && !same)
      throw Error(ErrorCode::IncompatibleVariant, "'" + t.id + "' needs equal truth and structure algebras");
  }
}

}  // namespace mvdl
