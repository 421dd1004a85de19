#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace mvdl {

class Algebra;
struct Formula;
struct Action;
using FormulaPtr = std::shared_ptr<const Formula>;
using ActionPtr = std::shared_ptr<const Action>;

// Var nodes only occur in templates (w1, w2, ...).
struct Formula {
  enum class Kind { Prop, Conn, Modal, Var };
  Kind kind = Kind::Prop;
  std::string name;  // prop name, connective symbol or lifting id
  int index = 0;     // Var index, 1-based
  ActionPtr action;  // Modal only
  std::vector<FormulaPtr> args;
};

// Slot nodes only occur in templates (#1, #2, ...).
struct Action {
  enum class Kind { Atomic, Op, Test, Slot };
  Kind kind = Kind::Atomic;
  std::string name;  // atom name, op id or test id
  int index = 0;     // Slot index, 1-based
  std::vector<ActionPtr> args;
  FormulaPtr test_arg;
};

FormulaPtr prop(std::string name);
FormulaPtr conn(std::string symbol, std::vector<FormulaPtr> args = {});
FormulaPtr modal(std::string lifting, ActionPtr action, std::vector<FormulaPtr> args);
FormulaPtr var(int index);
FormulaPtr top_f();
FormulaPtr bot_f();
FormulaPtr neg_f(FormulaPtr f);
// Left-nested fold; empty input gives the unit (1 for meet, 0 for join).
FormulaPtr meet_all(const std::vector<FormulaPtr>& fs);
FormulaPtr join_all(const std::vector<FormulaPtr>& fs);

ActionPtr atomic(std::string name);
ActionPtr op(std::string id, std::vector<ActionPtr> args);
ActionPtr test(std::string id, FormulaPtr arg);
ActionPtr slot(int index);

bool equal(const Formula& a, const Formula& b);
bool equal(const Action& a, const Action& b);

struct Template {
  int n = 0;  // action slots
  int k = 0;  // formula variables
  FormulaPtr body;

  bool independent() const;
};

namespace conns {
inline const std::string kMeet = "&";
inline const std::string kJoin = "|";
inline const std::string kTensor = "*";
inline const std::string kImpl = "->";
inline const std::string kBot = "0";
inline const std::string kTop = "1";
}  // namespace conns

struct Signature {
  std::set<std::string> props;
  std::set<std::string> atoms;
  bool open_props = true;  // accept any identifier as a prop
  bool open_atoms = true;
  std::map<std::string, int> liftings;
  std::map<std::string, int> ops;
  std::set<std::string> tests;
  std::map<std::string, int> conns;
  std::string box;      // lifting used by "[a]phi"
  std::string diamond;  // lifting used by "<a>phi"

  // FLew connectives plus the algebra's extras.
  static Signature with_algebra(const Algebra& alg);
  void add_algebra(const Algebra& alg);
};

enum class Category { Formula, Action, Template };

FormulaPtr parse_formula(const std::string& text, const Signature& sig);
ActionPtr parse_action(const std::string& text, const Signature& sig);
// Header is inferred from the largest slot and variable indices unless given.
Template parse_template(const std::string& text, const Signature& sig, int n = -1, int k = -1);

std::string render(const Formula& f);
std::string render(const Action& a);
std::string render(const Template& t);

FormulaPtr instantiate(const Template& t, const std::vector<ActionPtr>& actions,
                       const std::vector<FormulaPtr>& formulas);

// Structural queries.
std::size_t size(const Formula& f);
bool contains_op(const Formula& f, const std::set<std::string>& ops);
void collect_symbols(const Formula& f, std::set<std::string>& props, std::set<std::string>& atoms);
void collect_actions(const Formula& f, std::vector<ActionPtr>& out);

nlohmann::json to_json(const Formula& f);
nlohmann::json to_json(const Action& a);
FormulaPtr formula_from_json(const nlohmann::json& j);
ActionPtr action_from_json(const nlohmann::json& j);

}  // namespace mvdl
