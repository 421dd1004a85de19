#include "mvdl/reduction.hpp"

#include "mvdl/error.hpp"
#include "mvdl/presets.hpp"

namespace mvdl {

nlohmann::json ReductionRule::to_json() const {
  return {{is_test ? "test" : "op", target}, {"lifting", lifting}, {"template", render(rhs)}};
}

RuleRegistry::RuleRegistry(std::shared_ptr<const LogicConfig> logic) : logic_(std::move(logic)) {
  for (const auto& o : logic_->ops)
    if (o.variant == OpVariant::Star) iteration_.insert(o.id);
}

void RuleRegistry::add(ReductionRule rule) {
  Key key{rule.is_test, rule.target, rule.lifting};
  const LiftingSpec& l = logic_->lifting(rule.lifting);
  if (rule.is_test) {
    logic_->test_spec(rule.target);
    if (rule.rhs.n != 0 || rule.rhs.k != l.arity + 1)
      throw Error(ErrorCode::ArityMismatch, "test rule header must be (0, " + std::to_string(l.arity + 1) + ")");
  } else {
    const OperationSpec& o = logic_->operation(rule.target);
    if (rule.rhs.n != o.arity || rule.rhs.k != l.arity)
      throw Error(ErrorCode::ArityMismatch, "rule header must be (" + std::to_string(o.arity) + ", " +
                                                std::to_string(l.arity) + ")");
  }
  if (rules_.count(key))
    warnings_.push_back("replaced rule for (" + rule.target + ", " + rule.lifting + ")");
  rules_.insert_or_assign(key, std::move(rule));
}

const ReductionRule* RuleRegistry::find(bool is_test, const std::string& target, const std::string& lifting) const {
  auto it = rules_.find(Key{is_test, target, lifting});
  return it == rules_.end() ? nullptr : &it->second;
}

std::vector<std::string> RuleRegistry::gaps() const {
  std::vector<std::string> out;
  for (const auto& o : logic_->ops) {
    if (iteration_.count(o.id)) continue;
    for (const auto& l : logic_->liftings)
      if (!find(false, o.id, l.id)) out.push_back("op " + o.id + " / " + l.id);
  }
  for (const auto& t : logic_->tests)
    for (const auto& l : logic_->liftings)
      if (!find(true, t.id, l.id)) out.push_back("test " + t.id + " / " + l.id);
  return out;
}

nlohmann::json RuleRegistry::to_json() const {
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& [key, r] : rules_) rules.push_back(r.to_json());
  return {{"preset", logic_->name},
          {"rules", rules},
          {"complete", complete()},
          {"gaps", gaps()},
          {"notes", notes_},
          {"iteration", std::vector<std::string>(iteration_.begin(), iteration_.end())}};
}

std::optional<std::string> chi_term(const Algebra& alg, const std::vector<bool>& subset, const std::string& var) {
  if (auto name = alg.extra_for_chi(subset)) return *name + "(" + var + ")";
  try {
    auto clone = unary_term_closure(alg);
    if (auto i = clone.index_of(chi_table(alg, subset))) return clone.term(*i, var);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ClosureBudgetExceeded) throw;
  }
  return std::nullopt;
}

Template threshold_composition_template(const LogicConfig& logic, Elem r) {
  const Algebra& A = *logic.structure;
  if (!A.linear()) throw Error(ErrorCode::NonlinearAlgebra, "threshold composition needs a linear algebra");
  std::vector<FormulaPtr> parts;
  for (int r1 = 1; r1 < A.size(); ++r1)
    for (int r2 = 1; r2 < A.size(); ++r2)
      if (A.leq(r, A.tensor(r1, r2)))
        parts.push_back(modal(threshold_id(r1), slot(1), {modal(threshold_id(r2), slot(2), {var(1)})}));
  return Template{2, 1, join_all(parts)};
}

namespace {

std::string arg_list(const std::vector<std::string>& args) {
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? ", " : "") + args[i];
  return s;
}

std::string w(int i) { return "w" + std::to_string(i); }

class RuleBuilder {
 public:
  RuleBuilder(RuleRegistry& reg, bool strict) : reg_(reg), sig_(reg.logic().signature()), strict_(strict) {}

  void op_rule(const std::string& op, const std::string& lifting, const std::string& text) {
    const auto& o = reg_.logic().operation(op);
    const auto& l = reg_.logic().lifting(lifting);
    reg_.add({op, false, lifting, parse_template(text, sig_, o.arity, l.arity)});
  }

  void test_rule(const std::string& t, const std::string& lifting, const std::string& text) {
    const auto& l = reg_.logic().lifting(lifting);
    reg_.add({t, true, lifting, parse_template(text, sig_, 0, l.arity + 1)});
  }

  std::optional<std::string> chi(const std::vector<bool>& subset, const std::string& var, const std::string& why) {
    auto t = chi_term(*reg_.logic().truth, subset, var);
    if (!t) {
      std::string msg = why + ": characteristic function not definable in " + reg_.logic().truth->name() +
                        " and not installed";
      if (strict_) throw Error(ErrorCode::MissingChi, msg);
      reg_.note(msg);
    }
    return t;
  }

  std::vector<bool> singleton(Elem e) const {
    std::vector<bool> s(reg_.logic().truth->size(), false);
    s[e] = true;
    return s;
  }

 private:
  RuleRegistry& reg_;
  Signature sig_;
  bool strict_;
};

void pdl_rules(RuleBuilder& b, const LogicConfig& L, bool labelled) {
  const Algebra& T = *L.truth;
  b.op_rule("+", "box", "<#1:box> w1 & <#2:box> w1");
  b.op_rule("+", "dia", "<#1:dia> w1 | <#2:dia> w1");
  b.op_rule(";", "box", "<#1:box> <#2:box> w1");
  b.op_rule(";", "dia", "<#1:dia> <#2:dia> w1");
  if (labelled) {
    b.test_rule("test", "box", "w1 -> w2");
    b.test_rule("test", "dia", "w1 * w2");
    if (auto c = b.chi(b.singleton(T.top()), "(<#1:box> 0)", "counter-domain box rule"))
      b.op_rule("~", "box", *c + " -> w1");
    if (auto c = b.chi(b.singleton(T.bot()), "(<#1:dia> 1)", "counter-domain diamond rule"))
      b.op_rule("~", "dia", *c + " & w1");
  } else {
    b.op_rule("~", "box", "<#1:box> 0 -> w1");
    b.op_rule("~", "dia", "~<#1:dia> 1 & w1");
    for (const auto& t : L.tests) {
      if (auto c = b.chi(t.P, "w1", "test rule for '" + t.id + "'")) {
        b.test_rule(t.id, "box", *c + " -> w2");
        b.test_rule(t.id, "dia", *c + " & w2");
      }
    }
  }
}

void threshold_rules(RuleRegistry& reg, RuleBuilder& b, const LogicConfig& L) {
  for (const auto& l : L.liftings) {
    const std::string r = l.id;
    b.op_rule("+", r, "<#1:" + r + "> w1 | <#2:" + r + "> w1");
    reg.add({";", false, r, threshold_composition_template(L, l.threshold)});
    b.test_rule("test", r, "w1 & w2");
  }
}

void game_rules(RuleBuilder& b) {
  b.op_rule("+", "ev", "<#1:ev> w1 | <#2:ev> w1");
  b.op_rule("&", "ev", "<#1:ev> w1 & <#2:ev> w1");
  b.op_rule("^d", "ev", "~<#1:ev> ~w1");
  b.op_rule(";", "ev", "<#1:ev> <#2:ev> w1");
  b.test_rule("test", "ev", "w1 * w2");
}

void instantial_rules(RuleBuilder& b, const LogicConfig& L) {
  const bool has_i2 = L.find_lifting(instantial_id(2)) != nullptr;
  for (const auto& l : L.liftings) {
    const int k = l.arity - 1;
    const std::string lam = l.id;
    const std::string phi = w(k + 1);

    if (k == 0 || has_i2) {
      std::vector<std::string> args;
      for (int i = 1; i <= k; ++i) args.push_back("<#2:i2>(" + w(i) + ", " + phi + ")");
      args.push_back("<#2:i1> " + phi);
      b.op_rule(";", lam, "<#1:" + lam + ">(" + arg_list(args) + ")");
    }

    if (has_i2) {
      std::vector<std::string> inner;
      for (int i = 1; i <= k + 1; ++i) inner.push_back(w(i));
      b.op_rule("alt", lam, "<#1:i2>(<#2:" + lam + ">(" + arg_list(inner) + "), 1)");
    }

    // Each side only receives the arguments it must meet; padding the others
    // with 1 would wrongly demand a nonempty neighbourhood.
    auto side = [&](const std::string& slot, std::vector<std::string> args) {
      args.push_back(phi);
      const std::string id = instantial_id(static_cast<int>(args.size()));
      if (args.size() == 1) return "<" + slot + ":" + id + "> " + phi;
      return "<" + slot + ":" + id + ">(" + arg_list(args) + ")";
    };
    std::vector<std::string> disjuncts;
    for (std::uint32_t K = 0; K < (1u << k); ++K) {
      std::vector<std::string> left, right;
      for (int i = 1; i <= k; ++i) (K >> (i - 1) & 1u ? left : right).push_back(w(i));
      disjuncts.push_back(side("#1", left) + " & " + side("#2", right));
    }
    std::string cup;
    for (std::size_t i = 0; i < disjuncts.size(); ++i) cup += (i ? " | " : "") + disjuncts[i];
    b.op_rule("cup", lam, cup);

    std::string cd = "~<#1:i1> 1";
    for (int i = 1; i <= k + 1; ++i) cd += " & " + w(i);
    b.op_rule("~", lam, cd);

    std::string tst = "w1";
    for (int i = 2; i <= k + 2; ++i) tst += " & " + w(i);
    b.test_rule("test", lam, tst);
  }
}

}  // namespace

RuleRegistry builtin_rules(std::shared_ptr<const LogicConfig> logic, bool strict) {
  RuleRegistry reg(logic);
  RuleBuilder b(reg, strict);
  const LogicConfig& L = *logic;
  if (L.name == "pdl-crisp") {
    pdl_rules(b, L, false);
  } else if (L.name == "pdl-labelled") {
    pdl_rules(b, L, true);
  } else if (L.name == "pdl-threshold") {
    threshold_rules(reg, b, L);
  } else if (L.name == "game" || L.name == "neighbourhood") {
    game_rules(b);
  } else if (L.name == "instantial") {
    instantial_rules(b, L);
  } else {
    throw Error(ErrorCode::InvalidParameter, "no built-in rules for '" + L.name + "'");
  }
  return reg;
}

namespace {

bool is_redex(const Formula& f) {
  return f.kind == Formula::Kind::Modal &&
         (f.action->kind == Action::Kind::Op || f.action->kind == Action::Kind::Test);
}

FormulaPtr rewrite(const Formula& f, const RuleRegistry& reg) {
  const Action& a = *f.action;
  const bool is_test = a.kind == Action::Kind::Test;
  if (!is_test && reg.iteration_ops().count(a.name))
    throw Error(ErrorCode::IterationPresent, "iteration '" + a.name + "' is not reducible");
  const ReductionRule* r = reg.find(is_test, a.name, f.name);
  if (!r)
    throw Error(ErrorCode::NoRule, std::string(is_test ? "test '" : "operation '") + a.name + "' with lifting '" +
                                       f.name + "' has no rule");
  if (is_test) {
    std::vector<FormulaPtr> args{a.test_arg};
    args.insert(args.end(), f.args.begin(), f.args.end());
    return instantiate(r->rhs, {}, args);
  }
  return instantiate(r->rhs, a.args, f.args);
}

FormulaPtr step_f(const FormulaPtr& f, const RuleRegistry& reg, Strategy s);

ActionPtr step_a(const ActionPtr& a, const RuleRegistry& reg, Strategy s) {
  if (a->kind == Action::Kind::Test) {
    if (auto g = step_f(a->test_arg, reg, s)) return test(a->name, g);
    return nullptr;
  }
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (auto b = step_a(a->args[i], reg, s)) {
      auto args = a->args;
      args[i] = b;
      return op(a->name, std::move(args));
    }
  return nullptr;
}

FormulaPtr step_f(const FormulaPtr& f, const RuleRegistry& reg, Strategy s) {
  if (s == Strategy::OutermostLeftmost && is_redex(*f)) return rewrite(*f, reg);
  if (f->kind == Formula::Kind::Modal)
    if (auto a = step_a(f->action, reg, s)) return modal(f->name, a, f->args);
  for (std::size_t i = 0; i < f->args.size(); ++i)
    if (auto g = step_f(f->args[i], reg, s)) {
      auto args = f->args;
      args[i] = g;
      return f->kind == Formula::Kind::Modal ? modal(f->name, f->action, std::move(args))
                                             : conn(f->name, std::move(args));
    }
  if (s == Strategy::InnermostLeftmost && is_redex(*f)) return rewrite(*f, reg);
  return nullptr;
}

void require_iteration_free(const Formula& f, const RuleRegistry& reg) {
  if (contains_op(f, reg.iteration_ops()))
    throw Error(ErrorCode::IterationPresent, "formula contains iteration, which is not reducible");
}

}  // namespace

std::optional<FormulaPtr> reduce_step(const FormulaPtr& f, const RuleRegistry& reg, Strategy strategy) {
  require_iteration_free(*f, reg);
  if (auto g = step_f(f, reg, strategy)) return g;
  return std::nullopt;
}

FormulaPtr reduce_full(const FormulaPtr& f, const RuleRegistry& reg, Strategy strategy, std::size_t budget) {
  require_iteration_free(*f, reg);
  FormulaPtr cur = f;
  for (std::size_t steps = 0;; ++steps) {
    auto g = step_f(cur, reg, strategy);
    if (!g) return cur;
    if (steps >= budget)
      throw Error(ErrorCode::NonTerminationGuard, "more than " + std::to_string(budget) + " rewrite steps");
    cur = g;
  }
}

bool is_normal_form(const Formula& f) {
  if (f.kind == Formula::Kind::Modal && f.action->kind != Action::Kind::Atomic) return false;
  for (const auto& x : f.args)
    if (!is_normal_form(*x)) return false;
  return true;
}

}  // namespace mvdl
