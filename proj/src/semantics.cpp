#include "mvdl/semantics.hpp"

#include "mvdl/error.hpp"

namespace mvdl {

Elem apply_lifting(const LiftingSpec& lift, std::span<const Predicate> preds, const FValue& t,
                   const Context& ctx) {
  if (lift.kind != ctx.kind) throw Error(ErrorCode::IncompatibleVariant, "lifting '" + lift.id + "' is for another functor");
  if (static_cast<int>(preds.size()) != lift.arity)
    throw Error(ErrorCode::ArityMismatch, "lifting '" + lift.id + "' expects " + std::to_string(lift.arity) + " predicates");
  const Algebra& T = *ctx.truth;
  const Algebra& S = *ctx.structure;
  const int n = ctx.n;
  const Predicate& sigma = preds.back();
  switch (lift.variant) {
    case LiftingVariant::BoxCrisp: {
      Elem acc = T.top();
      for (int y = 0; y < n; ++y)
        if (t[y]) acc = T.meet(acc, sigma[y]);
      return acc;
    }
    case LiftingVariant::DiamondCrisp: {
      Elem acc = T.bot();
      for (int y = 0; y < n; ++y)
        if (t[y]) acc = T.join(acc, sigma[y]);
      return acc;
    }
    case LiftingVariant::BoxLabelled: {
      Elem acc = T.top();
      for (int y = 0; y < n; ++y) acc = T.meet(acc, T.impl(t[y], sigma[y]));
      return acc;
    }
    case LiftingVariant::DiamondLabelled: {
      Elem acc = T.bot();
      for (int y = 0; y < n; ++y) acc = T.join(acc, T.tensor(t[y], sigma[y]));
      return acc;
    }
    case LiftingVariant::Threshold: {
      Elem acc = S.bot();
      for (int y = 0; y < n; ++y)
        if (sigma[y] == T.top()) acc = S.join(acc, t[y]);
      return S.leq(lift.threshold, acc) ? T.top() : T.bot();
    }
    case LiftingVariant::Eval: return t[predicate_index(sigma, S.size())];
    case LiftingVariant::Instantial: {
      const std::uint32_t target = subset_of(sigma, T.top());
      std::vector<std::uint32_t> hit;
      for (std::size_t i = 0; i + 1 < preds.size(); ++i) hit.push_back(subset_of(preds[i], T.top()));
      for (std::uint32_t Z = 0; Z < t.size(); ++Z) {
        if (!t[Z] || (Z & ~target)) continue;
        bool ok = true;
        for (auto h : hit)
          if (!(Z & h)) {
            ok = false;
            break;
          }
        if (ok) return T.top();
      }
      return T.bot();
    }
  }
  throw Error(ErrorCode::IncompatibleVariant, "unhandled lifting variant");
}

void Model::validate() const {
  if (!logic) throw Error(ErrorCode::InvalidInput, "model has no logic");
  logic->validate();
  auto space = context().space();
  for (const auto& [name, g] : atoms) {
    if (static_cast<int>(g.size()) != n)
      throw Error(ErrorCode::InvalidInput, "atom '" + name + "' has the wrong number of states");
    for (const auto& t : g)
      if (!space.is_valid(t)) throw Error(ErrorCode::InvalidInput, "atom '" + name + "' has an invalid F-value");
  }
  for (const auto& [name, p] : valuation) {
    if (static_cast<int>(p.size()) != n)
      throw Error(ErrorCode::InvalidInput, "prop '" + name + "' has the wrong length");
    for (Elem v : p)
      if (v >= logic->truth->size()) throw Error(ErrorCode::InvalidInput, "prop '" + name + "' out of range");
  }
}

Evaluator::Evaluator(const LogicConfig& logic, int n, Bindings bindings, bool memoize)
    : logic_(logic), ctx_(logic.context(n)), b_(bindings), memo_(memoize) {}

Evaluator::Evaluator(const Model& model, bool memoize)
    : Evaluator(*model.logic, model.n, Bindings{&model.atoms, &model.valuation, {}, {}}, memoize) {}

Predicate Evaluator::eval(const Formula& f) {
  if (memo_) {
    auto it = fcache_.find(&f);
    if (it != fcache_.end()) return it->second;
  }
  const Algebra& T = *ctx_.truth;
  const int n = ctx_.n;
  Predicate out;
  switch (f.kind) {
    case Formula::Kind::Prop: {
      if (!b_.props) throw Error(ErrorCode::UnknownIdentifier, "no valuation for '" + f.name + "'");
      auto it = b_.props->find(f.name);
      if (it == b_.props->end()) throw Error(ErrorCode::UnknownIdentifier, "proposition '" + f.name + "' is not interpreted");
      out = it->second;
      break;
    }
    case Formula::Kind::Var:
      if (f.index < 1 || f.index > static_cast<int>(b_.vars.size()))
        throw Error(ErrorCode::LengthMismatch, "variable w" + std::to_string(f.index) + " is unbound");
      out = b_.vars[f.index - 1];
      break;
    case Formula::Kind::Conn: {
      std::vector<Predicate> args;
      args.reserve(f.args.size());
      for (const auto& a : f.args) args.push_back(eval(*a));
      out.assign(n, 0);
      const std::string& s = f.name;
      if (args.size() == 2 && (s == conns::kMeet || s == conns::kJoin || s == conns::kTensor || s == conns::kImpl)) {
        for (int x = 0; x < n; ++x) {
          Elem a = args[0][x], b = args[1][x];
          out[x] = s == conns::kMeet ? T.meet(a, b)
                 : s == conns::kJoin ? T.join(a, b)
                 : s == conns::kTensor ? T.tensor(a, b)
                                       : T.impl(a, b);
        }
      } else if (args.empty() && s == conns::kBot) {
        out.assign(n, T.bot());
      } else if (args.empty() && s == conns::kTop) {
        out.assign(n, T.top());
      } else if (const ExtraOp* e = T.extra(s); e && static_cast<int>(args.size()) == e->arity) {
        for (int x = 0; x < n; ++x) out[x] = e->arity == 0 ? e->table[0] : e->table[args[0][x]];
      } else {
        throw Error(ErrorCode::UnknownIdentifier, "connective '" + s + "' is not in the truth algebra");
      }
      break;
    }
    case Formula::Kind::Modal: {
      const LiftingSpec& lift = logic_.lifting(f.name);
      Coalgebra g = interpret(*f.action);
      std::vector<Predicate> preds;
      preds.reserve(f.args.size());
      for (const auto& a : f.args) preds.push_back(eval(*a));
      out.resize(n);
      for (int x = 0; x < n; ++x) out[x] = apply_lifting(lift, preds, g[x], ctx_);
      break;
    }
  }
  if (memo_) fcache_.emplace(&f, out);
  return out;
}

Coalgebra Evaluator::interpret(const Action& a) {
  if (memo_) {
    auto it = acache_.find(&a);
    if (it != acache_.end()) return it->second;
  }
  Coalgebra out;
  switch (a.kind) {
    case Action::Kind::Atomic: {
      if (!b_.atoms) throw Error(ErrorCode::UnknownAtom, "no interpretation for '" + a.name + "'");
      auto it = b_.atoms->find(a.name);
      if (it == b_.atoms->end()) throw Error(ErrorCode::UnknownAtom, "atomic action '" + a.name + "' is not interpreted");
      out = it->second;
      break;
    }
    case Action::Kind::Slot:
      if (a.index < 1 || a.index > static_cast<int>(b_.slots.size()))
        throw Error(ErrorCode::LengthMismatch, "slot #" + std::to_string(a.index) + " is unbound");
      out = b_.slots[a.index - 1];
      break;
    case Action::Kind::Op: {
      std::vector<Coalgebra> args;
      args.reserve(a.args.size());
      for (const auto& x : a.args) args.push_back(interpret(*x));
      out = apply_op(logic_.operation(a.name), args, ctx_, iterate_cap);
      break;
    }
    case Action::Kind::Test:
      out = apply_test(logic_.test_spec(a.name), eval(*a.test_arg), ctx_);
      break;
  }
  if (memo_) acache_.emplace(&a, out);
  return out;
}

Predicate eval(const Model& model, const Formula& f) { return Evaluator(model).eval(f); }

Coalgebra interpret_action(const Model& model, const Action& a) { return Evaluator(model).interpret(a); }

Predicate eval_template(const LogicConfig& logic, int n, const Template& t, std::span<const Coalgebra> gammas,
                        std::span<const Predicate> sigmas) {
  if (static_cast<int>(gammas.size()) != t.n || static_cast<int>(sigmas.size()) != t.k)
    throw Error(ErrorCode::LengthMismatch, "template header does not match the arguments");
  Evaluator ev(logic, n, Bindings{nullptr, nullptr, gammas, sigmas}, false);
  return ev.eval(*t.body);
}

std::string format_predicate(const Algebra& alg, const Predicate& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + alg.label(p[i]);
  return s + ")";
}

}  // namespace mvdl
