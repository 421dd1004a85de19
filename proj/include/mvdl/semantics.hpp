#pragma once

#include <map>
#include <span>
#include <unordered_map>

#include "mvdl/actions.hpp"
#include "mvdl/logic.hpp"

namespace mvdl {

Elem apply_lifting(const LiftingSpec& lift, std::span<const Predicate> preds, const FValue& t,
                   const Context& ctx);

struct Model {
  std::shared_ptr<const LogicConfig> logic;
  int n = 0;
  std::map<std::string, Coalgebra> atoms;
  std::map<std::string, Predicate> valuation;

  Context context() const { return logic->context(n); }
  void validate() const;
};

// Where atoms, props, template slots and template variables get their meaning.
struct Bindings {
  const std::map<std::string, Coalgebra>* atoms = nullptr;
  const std::map<std::string, Predicate>* props = nullptr;
  std::span<const Coalgebra> slots;
  std::span<const Predicate> vars;
};

// One evaluation session. Results are cached per AST node address, so the
// formulas passed in must outlive the session.
class Evaluator {
 public:
  Evaluator(const LogicConfig& logic, int n, Bindings bindings, bool memoize = true);
  explicit Evaluator(const Model& model, bool memoize = true);

  Predicate eval(const Formula& f);
  Coalgebra interpret(const Action& a);

  std::size_t iterate_cap = kDefaultIterateCap;

 private:
  const LogicConfig& logic_;
  Context ctx_;
  Bindings b_;
  bool memo_;
  std::unordered_map<const Formula*, Predicate> fcache_;
  std::unordered_map<const Action*, Coalgebra> acache_;
};

Predicate eval(const Model& model, const Formula& f);
Coalgebra interpret_action(const Model& model, const Action& a);

// tau[gammas, sigmas] evaluated directly.
Predicate eval_template(const LogicConfig& logic, int n, const Template& t,
                        std::span<const Coalgebra> gammas, std::span<const Predicate> sigmas);

std::string format_predicate(const Algebra& alg, const Predicate& p);

}  // namespace mvdl
