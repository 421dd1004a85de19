#include "mvdl/presets.hpp"

#include "mvdl/error.hpp"

namespace mvdl {

std::vector<std::string> preset_names() {
  return {"pdl-crisp", "pdl-labelled", "pdl-threshold", "game", "instantial", "neighbourhood"};
}

std::string threshold_id(Elem r) { return "t" + std::to_string(r); }
std::string instantial_id(int arity) { return "i" + std::to_string(arity); }

std::string default_preset(FunctorKind kind) {
  switch (kind) {
    case FunctorKind::Powerset: return "pdl-crisp";
    case FunctorKind::APowerset: return "pdl-labelled";
    case FunctorKind::ANeighbourhood: return "neighbourhood";
    case FunctorKind::MonotoneANeighbourhood: return "game";
    case FunctorKind::DoublePowerset: return "instantial";
  }
  return "pdl-crisp";
}

std::shared_ptr<const LogicConfig> make_preset(const std::string& name, std::shared_ptr<const Algebra> alg,
                                               const PresetOptions& options) {
  if (!alg) throw Error(ErrorCode::InvalidParameter, "preset needs an algebra");
  auto cfg = std::make_shared<LogicConfig>();
  cfg->name = name;
  cfg->truth = alg;
  cfg->structure = alg;
  std::vector<bool> top_only(alg->size(), false);
  top_only[alg->top()] = true;

  auto lift = [&](std::string id, LiftingVariant v, int arity = 1, Elem r = 0) {
    cfg->liftings.push_back({std::move(id), arity, cfg->kind, v, r});
  };
  auto oper = [&](std::string id, OpVariant v, int arity) {
    cfg->ops.push_back({std::move(id), arity, cfg->kind, v});
  };

  if (name == "pdl-crisp") {
    cfg->kind = FunctorKind::Powerset;
    lift("box", LiftingVariant::BoxCrisp);
    lift("dia", LiftingVariant::DiamondCrisp);
    oper("+", OpVariant::Union, 2);
    oper(";", OpVariant::Kleisli, 2);
    oper("*", OpVariant::Star, 1);
    oper("~", OpVariant::CounterDomain, 1);
    cfg->tests.push_back({"test", cfg->kind, TestVariant::TestP, top_only});
    cfg->box = "box";
    cfg->diamond = "dia";
  } else if (name == "pdl-labelled") {
    cfg->kind = FunctorKind::APowerset;
    lift("box", LiftingVariant::BoxLabelled);
    lift("dia", LiftingVariant::DiamondLabelled);
    oper("+", OpVariant::JoinPW, 2);
    oper(";", OpVariant::Kleisli, 2);
    oper("*", OpVariant::Star, 1);
    oper("~", OpVariant::CounterDomain, 1);
    cfg->tests.push_back({"test", cfg->kind, TestVariant::LabelledUnit, {}});
    cfg->box = "box";
    cfg->diamond = "dia";
  } else if (name == "pdl-threshold") {
    if (!alg->linear()) throw Error(ErrorCode::NonlinearAlgebra, "threshold liftings need a linear algebra");
    cfg->kind = FunctorKind::APowerset;
    cfg->truth = std::make_shared<const Algebra>(build_builtin(BuiltinKind::Boolean, 1));
    for (int r = 0; r < alg->size(); ++r)
      if (r != alg->bot()) lift(threshold_id(r), LiftingVariant::Threshold, 1, static_cast<Elem>(r));
    oper("+", OpVariant::JoinPW, 2);
    oper(";", OpVariant::Kleisli, 2);
    oper("*", OpVariant::Star, 1);
    cfg->tests.push_back({"test", cfg->kind, TestVariant::LabelledUnit, {}});
    cfg->diamond = threshold_id(alg->top());
  } else if (name == "game" || name == "neighbourhood") {
    cfg->kind = name == "game" ? FunctorKind::MonotoneANeighbourhood : FunctorKind::ANeighbourhood;
    lift("ev", LiftingVariant::Eval);
    oper("+", OpVariant::JoinPW, 2);
    oper("&", OpVariant::MeetPW, 2);
    oper("^d", OpVariant::Dual, 1);
    oper(";", OpVariant::Kleisli, 2);
    oper("*", OpVariant::Star, 1);
    cfg->tests.push_back({"test", cfg->kind, TestVariant::AngelicMonoid, {}});
    cfg->diamond = "ev";
  } else if (name == "instantial") {
    if (alg->size() != 2) throw Error(ErrorCode::InvalidParameter, "the instantial logic is two-valued; use B2");
    if (options.max_k < 0) throw Error(ErrorCode::InvalidParameter, "max_k must be >= 0");
    cfg->kind = FunctorKind::DoublePowerset;
    for (int k = 0; k <= options.max_k; ++k) lift(instantial_id(k + 1), LiftingVariant::Instantial, k + 1);
    oper("cup", OpVariant::NbhUnion, 2);
    oper(";", OpVariant::DoubleSeq, 2);
    oper("alt", OpVariant::DoubleStar, 2);
    oper("*", OpVariant::Star, 1);
    oper("~", OpVariant::CounterDomain, 1);
    cfg->tests.push_back({"test", cfg->kind, TestVariant::InstantialP, top_only});
    cfg->diamond = instantial_id(1);
  } else {
    throw Error(ErrorCode::InvalidParameter, "unknown preset '" + name + "'");
  }
  cfg->validate();
  return cfg;
}

}  // namespace mvdl
