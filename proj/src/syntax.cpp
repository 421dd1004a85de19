#include "mvdl/syntax.hpp"

#include "mvdl/algebra.hpp"
#include "mvdl/error.hpp"

namespace mvdl {

FormulaPtr prop(std::string name) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Prop;
  f->name = std::move(name);
  return f;
}

FormulaPtr conn(std::string symbol, std::vector<FormulaPtr> args) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Conn;
  f->name = std::move(symbol);
  f->args = std::move(args);
  return f;
}

FormulaPtr modal(std::string lifting, ActionPtr action, std::vector<FormulaPtr> args) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Modal;
  f->name = std::move(lifting);
  f->action = std::move(action);
  f->args = std::move(args);
  return f;
}

FormulaPtr var(int index) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Var;
  f->index = index;
  return f;
}

FormulaPtr top_f() { return conn(conns::kTop); }
FormulaPtr bot_f() { return conn(conns::kBot); }
FormulaPtr neg_f(FormulaPtr f) { return conn(conns::kImpl, {std::move(f), bot_f()}); }

namespace {
FormulaPtr fold(const std::vector<FormulaPtr>& fs, const std::string& symbol, FormulaPtr unit) {
  if (fs.empty()) return unit;
  FormulaPtr acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conn(symbol, {acc, fs[i]});
  return acc;
}
}  // namespace

FormulaPtr meet_all(const std::vector<FormulaPtr>& fs) { return fold(fs, conns::kMeet, top_f()); }
FormulaPtr join_all(const std::vector<FormulaPtr>& fs) { return fold(fs, conns::kJoin, bot_f()); }

ActionPtr atomic(std::string name) {
  auto a = std::make_shared<Action>();
  a->kind = Action::Kind::Atomic;
  a->name = std::move(name);
  return a;
}

ActionPtr op(std::string id, std::vector<ActionPtr> args) {
  auto a = std::make_shared<Action>();
  a->kind = Action::Kind::Op;
  a->name = std::move(id);
  a->args = std::move(args);
  return a;
}

ActionPtr test(std::string id, FormulaPtr arg) {
  auto a = std::make_shared<Action>();
  a->kind = Action::Kind::Test;
  a->name = std::move(id);
  a->test_arg = std::move(arg);
  return a;
}

ActionPtr slot(int index) {
  auto a = std::make_shared<Action>();
  a->kind = Action::Kind::Slot;
  a->index = index;
  return a;
}

bool equal(const Formula& a, const Formula& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.name != b.name || a.index != b.index) return false;
  if (a.args.size() != b.args.size()) return false;
  if (static_cast<bool>(a.action) != static_cast<bool>(b.action)) return false;
  if (a.action && !equal(*a.action, *b.action)) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!equal(*a.args[i], *b.args[i])) return false;
  return true;
}

bool equal(const Action& a, const Action& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.name != b.name || a.index != b.index) return false;
  if (a.args.size() != b.args.size()) return false;
  if (static_cast<bool>(a.test_arg) != static_cast<bool>(b.test_arg)) return false;
  if (a.test_arg && !equal(*a.test_arg, *b.test_arg)) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!equal(*a.args[i], *b.args[i])) return false;
  return true;
}

namespace {

void lifting_ids(const Formula& f, std::set<std::string>& out);

void lifting_ids(const Action& a, std::set<std::string>& out) {
  if (a.test_arg) lifting_ids(*a.test_arg, out);
  for (const auto& x : a.args) lifting_ids(*x, out);
}

void lifting_ids(const Formula& f, std::set<std::string>& out) {
  if (f.kind == Formula::Kind::Modal) {
    out.insert(f.name);
    lifting_ids(*f.action, out);
  }
  for (const auto& x : f.args) lifting_ids(*x, out);
}

}  // namespace

bool Template::independent() const {
  std::set<std::string> ids;
  lifting_ids(*body, ids);
  return ids.size() <= 1;
}

void Signature::add_algebra(const Algebra& alg) {
  conns[conns::kMeet] = 2;
  conns[conns::kJoin] = 2;
  conns[conns::kTensor] = 2;
  conns[conns::kImpl] = 2;
  conns[conns::kBot] = 0;
  conns[conns::kTop] = 0;
  for (const auto& [name, extra] : alg.extras()) conns[name] = extra.arity;
}

Signature Signature::with_algebra(const Algebra& alg) {
  Signature s;
  s.add_algebra(alg);
  return s;
}

namespace {

FormulaPtr subst(const FormulaPtr& f, const std::vector<ActionPtr>& actions,
                 const std::vector<FormulaPtr>& formulas);

ActionPtr subst(const ActionPtr& a, const std::vector<ActionPtr>& actions,
                const std::vector<FormulaPtr>& formulas) {
  switch (a->kind) {
    case Action::Kind::Atomic: return a;
    case Action::Kind::Slot:
      if (a->index < 1 || a->index > static_cast<int>(actions.size()))
        throw Error(ErrorCode::LengthMismatch, "slot #" + std::to_string(a->index) + " out of range");
      return actions[a->index - 1];
    case Action::Kind::Test: return test(a->name, subst(a->test_arg, actions, formulas));
    case Action::Kind::Op: {
      std::vector<ActionPtr> args;
      for (const auto& x : a->args) args.push_back(subst(x, actions, formulas));
      return op(a->name, std::move(args));
    }
  }
  return a;
}

FormulaPtr subst(const FormulaPtr& f, const std::vector<ActionPtr>& actions,
                 const std::vector<FormulaPtr>& formulas) {
  switch (f->kind) {
    case Formula::Kind::Prop: return f;
    case Formula::Kind::Var:
      if (f->index < 1 || f->index > static_cast<int>(formulas.size()))
        throw Error(ErrorCode::LengthMismatch, "variable w" + std::to_string(f->index) + " out of range");
      return formulas[f->index - 1];
    case Formula::Kind::Conn: {
      std::vector<FormulaPtr> args;
      for (const auto& x : f->args) args.push_back(subst(x, actions, formulas));
      return conn(f->name, std::move(args));
    }
    case Formula::Kind::Modal: {
      std::vector<FormulaPtr> args;
      for (const auto& x : f->args) args.push_back(subst(x, actions, formulas));
      return modal(f->name, subst(f->action, actions, formulas), std::move(args));
    }
  }
  return f;
}

}  // namespace

FormulaPtr instantiate(const Template& t, const std::vector<ActionPtr>& actions,
                       const std::vector<FormulaPtr>& formulas) {
  if (static_cast<int>(actions.size()) != t.n || static_cast<int>(formulas.size()) != t.k)
    throw Error(ErrorCode::LengthMismatch,
                "template expects " + std::to_string(t.n) + " actions and " + std::to_string(t.k) +
                    " formulas, got " + std::to_string(actions.size()) + " and " +
                    std::to_string(formulas.size()));
  return subst(t.body, actions, formulas);
}

std::size_t size(const Formula& f) {
  std::size_t s = 1;
  for (const auto& x : f.args) s += size(*x);
  if (f.action) {
    std::vector<const Action*> stack{f.action.get()};
    while (!stack.empty()) {
      const Action* a = stack.back();
      stack.pop_back();
      ++s;
      if (a->test_arg) s += size(*a->test_arg);
      for (const auto& x : a->args) stack.push_back(x.get());
    }
  }
  return s;
}

namespace {
bool action_contains_op(const Action& a, const std::set<std::string>& ops) {
  if (a.kind == Action::Kind::Op && ops.count(a.name)) return true;
  if (a.test_arg && contains_op(*a.test_arg, ops)) return true;
  for (const auto& x : a.args)
    if (action_contains_op(*x, ops)) return true;
  return false;
}

void collect_action_symbols(const Action& a, std::set<std::string>& props,
                            std::set<std::string>& atoms) {
  if (a.kind == Action::Kind::Atomic) atoms.insert(a.name);
  if (a.test_arg) collect_symbols(*a.test_arg, props, atoms);
  for (const auto& x : a.args) collect_action_symbols(*x, props, atoms);
}

void collect_sub_actions(const ActionPtr& a, std::vector<ActionPtr>& out) {
  out.push_back(a);
  if (a->test_arg) collect_actions(*a->test_arg, out);
  for (const auto& x : a->args) collect_sub_actions(x, out);
}
}  // namespace

bool contains_op(const Formula& f, const std::set<std::string>& ops) {
  if (f.action && action_contains_op(*f.action, ops)) return true;
  for (const auto& x : f.args)
    if (contains_op(*x, ops)) return true;
  return false;
}

void collect_symbols(const Formula& f, std::set<std::string>& props, std::set<std::string>& atoms) {
  if (f.kind == Formula::Kind::Prop) props.insert(f.name);
  if (f.action) collect_action_symbols(*f.action, props, atoms);
  for (const auto& x : f.args) collect_symbols(*x, props, atoms);
}

void collect_actions(const Formula& f, std::vector<ActionPtr>& out) {
  if (f.action) collect_sub_actions(f.action, out);
  for (const auto& x : f.args) collect_actions(*x, out);
}

nlohmann::json to_json(const Formula& f) {
  nlohmann::json j;
  switch (f.kind) {
    case Formula::Kind::Prop:
      j = {{"kind", "prop"}, {"name", f.name}};
      break;
    case Formula::Kind::Var:
      j = {{"kind", "var"}, {"index", f.index}};
      break;
    case Formula::Kind::Conn: {
      j = {{"kind", "conn"}, {"symbol", f.name}, {"args", nlohmann::json::array()}};
      for (const auto& x : f.args) j["args"].push_back(to_json(*x));
      break;
    }
    case Formula::Kind::Modal: {
      j = {{"kind", "modal"}, {"lifting", f.name}, {"action", to_json(*f.action)},
           {"args", nlohmann::json::array()}};
      for (const auto& x : f.args) j["args"].push_back(to_json(*x));
      break;
    }
  }
  return j;
}

nlohmann::json to_json(const Action& a) {
  nlohmann::json j;
  switch (a.kind) {
    case Action::Kind::Atomic:
      j = {{"kind", "atomic"}, {"name", a.name}};
      break;
    case Action::Kind::Slot:
      j = {{"kind", "slot"}, {"index", a.index}};
      break;
    case Action::Kind::Test:
      j = {{"kind", "test"}, {"test", a.name}, {"arg", to_json(*a.test_arg)}};
      break;
    case Action::Kind::Op: {
      j = {{"kind", "op"}, {"op", a.name}, {"args", nlohmann::json::array()}};
      for (const auto& x : a.args) j["args"].push_back(to_json(*x));
      break;
    }
  }
  return j;
}

FormulaPtr formula_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind");
    if (kind == "prop") return prop(j.at("name"));
    if (kind == "var") return var(j.at("index"));
    std::vector<FormulaPtr> args;
    for (const auto& x : j.at("args")) args.push_back(formula_from_json(x));
    if (kind == "conn") return conn(j.at("symbol"), std::move(args));
    if (kind == "modal") return modal(j.at("lifting"), action_from_json(j.at("action")), std::move(args));
    throw Error(ErrorCode::InvalidInput, "unknown formula kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, e.what());
  }
}

ActionPtr action_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind");
    if (kind == "atomic") return atomic(j.at("name"));
    if (kind == "slot") return slot(j.at("index"));
    if (kind == "test") return test(j.at("test"), formula_from_json(j.at("arg")));
    if (kind == "op") {
      std::vector<ActionPtr> args;
      for (const auto& x : j.at("args")) args.push_back(action_from_json(x));
      return op(j.at("op"), std::move(args));
    }
    throw Error(ErrorCode::InvalidInput, "unknown action kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, e.what());
  }
}

}  // namespace mvdl
