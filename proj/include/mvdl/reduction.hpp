#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "mvdl/logic.hpp"
#include "mvdl/syntax.hpp"

namespace mvdl {

// For operations the template has n = op arity slots and k = lifting arity
// variables. For tests it has no slots and k = lifting arity + 1 variables;
// w1 stands for the tested formula and w2.. for the modal arguments.
struct ReductionRule {
  std::string target;
  bool is_test = false;
  std::string lifting;
  Template rhs;

  nlohmann::json to_json() const;
};

class RuleRegistry {
 public:
  using Key = std::tuple<bool, std::string, std::string>;  // is_test, target, lifting

  explicit RuleRegistry(std::shared_ptr<const LogicConfig> logic);

  // Replaces an existing rule for the same key and records a warning.
  void add(ReductionRule rule);
  const ReductionRule* find(bool is_test, const std::string& target, const std::string& lifting) const;

  const LogicConfig& logic() const { return *logic_; }
  std::shared_ptr<const LogicConfig> logic_ptr() const { return logic_; }
  const std::map<Key, ReductionRule>& rules() const { return rules_; }
  const std::set<std::string>& iteration_ops() const { return iteration_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  void note(std::string message) { notes_.push_back(std::move(message)); }
  const std::vector<std::string>& notes() const { return notes_; }

  // Uncovered (operation, lifting) and (test, lifting) pairs, iteration excluded.
  std::vector<std::string> gaps() const;
  bool complete() const { return gaps().empty(); }

  nlohmann::json to_json() const;

 private:
  std::shared_ptr<const LogicConfig> logic_;
  std::map<Key, ReductionRule> rules_;
  std::set<std::string> iteration_;
  std::vector<std::string> warnings_;
  std::vector<std::string> notes_;
};

// With strict set, a rule that needs an unavailable characteristic function
// throws missing-chi instead of being recorded as a gap.
RuleRegistry builtin_rules(std::shared_ptr<const LogicConfig> logic, bool strict = false);

// Join over r1 * r2 >= r of <#1:t_r1><#2:t_r2> w1, expanded over the algebra.
Template threshold_composition_template(const LogicConfig& logic, Elem r);

// Text of a term for chi_P over the variable text, from an installed extra or
// the unary term clone; empty if neither provides one.
std::optional<std::string> chi_term(const Algebra& alg, const std::vector<bool>& subset, const std::string& var);

enum class Strategy { InnermostLeftmost, OutermostLeftmost };

inline constexpr std::size_t kDefaultRewriteBudget = 100000;

// Returns nullopt when no redex remains.
std::optional<FormulaPtr> reduce_step(const FormulaPtr& f, const RuleRegistry& reg,
                                      Strategy strategy = Strategy::InnermostLeftmost);
FormulaPtr reduce_full(const FormulaPtr& f, const RuleRegistry& reg,
                       Strategy strategy = Strategy::InnermostLeftmost,
                       std::size_t budget = kDefaultRewriteBudget);

bool is_normal_form(const Formula& f);

}  // namespace mvdl
