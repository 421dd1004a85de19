#include <cctype>
#include <regex>

#include "mvdl/error.hpp"
#include "mvdl/syntax.hpp"

namespace mvdl {

namespace {

struct Token {
  enum Kind { Ident, Number, Sym, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && ident_char(s[i]))
        throw SyntaxError(start, "malformed number");
      out.push_back({Token::Number, s.substr(start, i - start), start});
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Token::Ident, s.substr(start, i - start), start});
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      i += 2;
      out.push_back({Token::Sym, "->", start});
    } else if (std::string_view("<>[](),:;+&|*~?#^").find(c) != std::string_view::npos) {
      ++i;
      out.push_back({Token::Sym, std::string(1, c), start});
    } else {
      throw SyntaxError(start, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, const Signature& sig, bool tmpl)
      : toks_(lex(text)), sig_(sig), template_(tmpl) {}

  FormulaPtr formula() { return impl(); }

  ActionPtr action() { return choice(); }

  void expect_end() {
    if (peek().kind != Token::End) throw SyntaxError(peek().pos, "trailing input '" + peek().text + "'");
  }

  int max_slot = 0;
  int max_var = 0;

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at(const char* sym) const { return peek().kind == Token::Sym && peek().text == sym; }
  Token next() { return toks_[pos_++]; }
  void expect(const char* sym) {
    if (!at(sym))
      throw SyntaxError(peek().pos, std::string("expected '") + sym + "' but found '" + peek().text + "'");
    ++pos_;
  }
  std::string ident() {
    if (peek().kind != Token::Ident) throw SyntaxError(peek().pos, "expected identifier");
    return next().text;
  }

  FormulaPtr impl() {
    auto lhs = disj();
    if (at("->")) {
      ++pos_;
      return conn(conns::kImpl, {lhs, impl()});
    }
    return lhs;
  }

  FormulaPtr disj() {
    auto acc = conj();
    while (at("|")) {
      ++pos_;
      acc = conn(conns::kJoin, {acc, conj()});
    }
    return acc;
  }

  FormulaPtr conj() {
    auto acc = tensor();
    while (at("&")) {
      ++pos_;
      acc = conn(conns::kMeet, {acc, tensor()});
    }
    return acc;
  }

  FormulaPtr tensor() {
    auto acc = unary();
    while (at("*")) {
      ++pos_;
      acc = conn(conns::kTensor, {acc, unary()});
    }
    return acc;
  }

  FormulaPtr unary() {
    if (at("~")) {
      ++pos_;
      return neg_f(unary());
    }
    if (at("<") || at("[")) {
      bool box = at("[");
      std::size_t where = next().pos;
      auto a = action();
      std::string lifting = box ? sig_.box : sig_.diamond;
      if (at(":")) {
        ++pos_;
        lifting = ident();
      } else if (lifting.empty()) {
        throw SyntaxError(where, box ? "no box lifting configured" : "no diamond lifting configured");
      }
      expect(box ? "]" : ">");
      auto it = sig_.liftings.find(lifting);
      if (it == sig_.liftings.end())
        throw Error(ErrorCode::UnknownIdentifier, "unknown lifting '" + lifting + "'");
      return modal(lifting, a, modal_args(lifting, it->second));
    }
    return primary();
  }

  std::vector<FormulaPtr> modal_args(const std::string& lifting, int arity) {
    if (at("(")) {
      auto args = formula_list();
      if (static_cast<int>(args.size()) != arity)
        throw Error(ErrorCode::ArityMismatch, "lifting '" + lifting + "' has arity " +
                                                  std::to_string(arity) + ", got " +
                                                  std::to_string(args.size()));
      return args;
    }
    if (arity != 1)
      throw Error(ErrorCode::ArityMismatch,
                  "lifting '" + lifting + "' has arity " + std::to_string(arity) + ", got 1");
    return {unary()};
  }

  std::vector<FormulaPtr> formula_list() {
    expect("(");
    std::vector<FormulaPtr> args{formula()};
    while (at(",")) {
      ++pos_;
      args.push_back(formula());
    }
    expect(")");
    return args;
  }

  FormulaPtr primary() {
    const Token& t = peek();
    if (at("(")) {
      ++pos_;
      auto f = formula();
      expect(")");
      return f;
    }
    if (t.kind == Token::Number) {
      auto it = sig_.conns.find(t.text);
      if (it == sig_.conns.end() || it->second != 0)
        throw SyntaxError(t.pos, "unexpected number '" + t.text + "'");
      ++pos_;
      return conn(t.text);
    }
    if (t.kind != Token::Ident) throw SyntaxError(t.pos, "unexpected '" + t.text + "'");
    std::string name = next().text;
    static const std::regex var_re("w([0-9]+)");
    std::smatch mt;
    if (template_ && std::regex_match(name, mt, var_re)) {
      int i = std::stoi(mt[1]);
      if (i < 1) throw SyntaxError(t.pos, "variables are numbered from 1");
      max_var = std::max(max_var, i);
      return var(i);
    }
    auto it = sig_.conns.find(name);
    if (it != sig_.conns.end()) {
      if (it->second == 0) return conn(name);
      auto args = formula_list();
      if (static_cast<int>(args.size()) != it->second)
        throw Error(ErrorCode::ArityMismatch, "connective '" + name + "' has arity " +
                                                  std::to_string(it->second));
      return conn(name, std::move(args));
    }
    if (at("(")) throw Error(ErrorCode::UnknownIdentifier, "unknown connective '" + name + "'");
    if (!sig_.open_props && !sig_.props.count(name))
      throw Error(ErrorCode::UnknownIdentifier, "unknown proposition '" + name + "'");
    return prop(name);
  }

  void check_op(const std::string& id, int arity) {
    auto it = sig_.ops.find(id);
    if (it == sig_.ops.end()) throw Error(ErrorCode::UnknownIdentifier, "unknown operation '" + id + "'");
    if (it->second != arity)
      throw Error(ErrorCode::ArityMismatch,
                  "operation '" + id + "' has arity " + std::to_string(it->second));
  }

  ActionPtr choice() {
    auto acc = meet();
    while (at("+")) {
      ++pos_;
      check_op("+", 2);
      acc = op("+", {acc, meet()});
    }
    return acc;
  }

  ActionPtr meet() {
    auto acc = seq();
    while (at("&")) {
      ++pos_;
      check_op("&", 2);
      acc = op("&", {acc, seq()});
    }
    return acc;
  }

  ActionPtr seq() {
    auto acc = prefix();
    while (at(";")) {
      ++pos_;
      check_op(";", 2);
      acc = op(";", {acc, prefix()});
    }
    return acc;
  }

  ActionPtr prefix() {
    if (at("~")) {
      ++pos_;
      check_op("~", 1);
      return op("~", {prefix()});
    }
    return postfix();
  }

  ActionPtr postfix() {
    auto acc = action_primary();
    for (;;) {
      if (at("*")) {
        ++pos_;
        check_op("*", 1);
        acc = op("*", {acc});
      } else if (at("^")) {
        ++pos_;
        if (peek().kind != Token::Ident || peek().text != "d")
          throw SyntaxError(peek().pos, "expected 'd' after '^'");
        ++pos_;
        check_op("^d", 1);
        acc = op("^d", {acc});
      } else {
        return acc;
      }
    }
  }

  ActionPtr action_primary() {
    const Token& t = peek();
    if (at("(")) {
      ++pos_;
      auto a = action();
      expect(")");
      return a;
    }
    if (at("?")) {
      ++pos_;
      std::string id = ident();
      if (!sig_.tests.count(id)) throw Error(ErrorCode::UnknownIdentifier, "unknown test '" + id + "'");
      expect("(");
      auto f = formula();
      expect(")");
      return test(id, f);
    }
    if (at("#")) {
      std::size_t where = next().pos;
      if (!template_) throw SyntaxError(where, "slots are only allowed in templates");
      if (peek().kind != Token::Number) throw SyntaxError(peek().pos, "expected slot number");
      int i = std::stoi(next().text);
      if (i < 1) throw SyntaxError(where, "slots are numbered from 1");
      max_slot = std::max(max_slot, i);
      return slot(i);
    }
    if (t.kind != Token::Ident) throw SyntaxError(t.pos, "expected action but found '" + t.text + "'");
    std::string name = next().text;
    if (at("(")) {
      ++pos_;
      std::vector<ActionPtr> args{action()};
      while (at(",")) {
        ++pos_;
        args.push_back(action());
      }
      expect(")");
      check_op(name, static_cast<int>(args.size()));
      return op(name, std::move(args));
    }
    if (!sig_.open_atoms && !sig_.atoms.count(name))
      throw Error(ErrorCode::UnknownIdentifier, "unknown atomic action '" + name + "'");
    return atomic(name);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature& sig_;
  bool template_;
};

// Precedence levels; higher binds tighter.
enum FPrec { kFImpl = 1, kFJoin = 2, kFMeet = 3, kFTensor = 4, kFPrefix = 5, kFAtom = 6 };
enum APrec { kAChoice = 1, kAMeet = 2, kASeq = 3, kAPrefix = 4, kAPostfix = 5, kAAtom = 6 };

struct Rendered {
  std::string text;
  int prec;
};

std::string wrap(const Rendered& r, int need) {
  return r.prec < need ? "(" + r.text + ")" : r.text;
}

Rendered render_f(const Formula& f);

Rendered render_a(const Action& a) {
  switch (a.kind) {
    case Action::Kind::Atomic: return {a.name, kAAtom};
    case Action::Kind::Slot: return {"#" + std::to_string(a.index), kAAtom};
    case Action::Kind::Test: return {"?" + a.name + "(" + render_f(*a.test_arg).text + ")", kAAtom};
    case Action::Kind::Op: break;
  }
  auto infix = [&](const char* sym, int prec) -> Rendered {
    return {wrap(render_a(*a.args[0]), prec) + sym + wrap(render_a(*a.args[1]), prec + 1), prec};
  };
  if (a.args.size() == 2) {
    if (a.name == "+") return infix("+", kAChoice);
    if (a.name == "&") return infix("&", kAMeet);
    if (a.name == ";") return infix(";", kASeq);
  }
  if (a.args.size() == 1) {
    if (a.name == "~") return {"~" + wrap(render_a(*a.args[0]), kAPrefix), kAPrefix};
    if (a.name == "*") return {wrap(render_a(*a.args[0]), kAPostfix) + "*", kAPostfix};
    if (a.name == "^d") return {wrap(render_a(*a.args[0]), kAPostfix) + "^d", kAPostfix};
  }
  std::string s = a.name + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) s += (i ? ", " : "") + render_a(*a.args[i]).text;
  return {s + ")", kAAtom};
}

bool is_bot(const Formula& f) {
  return f.kind == Formula::Kind::Conn && f.name == conns::kBot && f.args.empty();
}

Rendered render_f(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Prop: return {f.name, kFAtom};
    case Formula::Kind::Var: return {"w" + std::to_string(f.index), kFAtom};
    case Formula::Kind::Modal: {
      std::string head = "<" + render_a(*f.action).text + ":" + f.name + ">";
      if (f.args.size() == 1) {
        std::string arg = wrap(render_f(*f.args[0]), kFPrefix);
        return {arg.front() == '(' ? head + arg : head + " " + arg, kFPrefix};
      }
      std::string s = head + "(";
      for (std::size_t i = 0; i < f.args.size(); ++i) s += (i ? ", " : "") + render_f(*f.args[i]).text;
      return {s + ")", kFPrefix};
    }
    case Formula::Kind::Conn: break;
  }
  if (f.args.empty()) return {f.name, kFAtom};
  if (f.args.size() == 2) {
    auto infix = [&](const std::string& sym, int prec) -> Rendered {
      return {wrap(render_f(*f.args[0]), prec) + " " + sym + " " + wrap(render_f(*f.args[1]), prec + 1),
              prec};
    };
    if (f.name == conns::kImpl) {
      if (is_bot(*f.args[1])) return {"~" + wrap(render_f(*f.args[0]), kFPrefix), kFPrefix};
      return {wrap(render_f(*f.args[0]), kFJoin) + " -> " + wrap(render_f(*f.args[1]), kFImpl), kFImpl};
    }
    if (f.name == conns::kJoin) return infix("|", kFJoin);
    if (f.name == conns::kMeet) return infix("&", kFMeet);
    if (f.name == conns::kTensor) return infix("*", kFTensor);
  }
  std::string s = f.name + "(";
  for (std::size_t i = 0; i < f.args.size(); ++i) s += (i ? ", " : "") + render_f(*f.args[i]).text;
  return {s + ")", kFAtom};
}

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Signature& sig) {
  Parser p(text, sig, false);
  auto f = p.formula();
  p.expect_end();
  return f;
}

ActionPtr parse_action(const std::string& text, const Signature& sig) {
  Parser p(text, sig, false);
  auto a = p.action();
  p.expect_end();
  return a;
}

Template parse_template(const std::string& text, const Signature& sig, int n, int k) {
  Parser p(text, sig, true);
  Template t;
  t.body = p.formula();
  p.expect_end();
  t.n = n < 0 ? p.max_slot : n;
  t.k = k < 0 ? p.max_var : k;
  if (p.max_slot > t.n || p.max_var > t.k)
    throw Error(ErrorCode::LengthMismatch, "template uses indices beyond its header");
  return t;
}

std::string render(const Formula& f) { return render_f(f).text; }
std::string render(const Action& a) { return render_a(a).text; }
std::string render(const Template& t) { return render_f(*t.body).text; }

}  // namespace mvdl
