#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "mvdl/functor.hpp"
#include "mvdl/logic.hpp"
#include "mvdl/reduction.hpp"
#include "mvdl/semantics.hpp"

namespace mvdl {

enum class VerdictStatus { Holds, Fails, HoldsUpToBound };
std::string status_name(VerdictStatus s);

// Auto sweeps a carrier size exhaustively when its case count fits the
// budget and samples it otherwise.
enum class SweepMode { Exhaustive, Random, Auto };
std::string mode_name(SweepMode m);
SweepMode mode_from_name(const std::string& name);

inline constexpr std::uint64_t kDefaultSeed = 0xC0A1;
inline constexpr std::uint64_t kDefaultSweepBudget = 100'000'000;

struct Bounds {
  int min_n = 1;
  int max_n = 2;
  int max_n_target = 2;  // carrier of the codomain in morphism sweeps
  std::uint64_t budget = kDefaultSweepBudget;
  SweepMode mode = SweepMode::Exhaustive;
  std::uint64_t trials = 10000;  // per carrier size in random mode
  std::uint64_t seed = kDefaultSeed;
  unsigned jobs = 1;  // 0 = hardware concurrency

  nlohmann::json to_json() const;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::HoldsUpToBound;
  std::string check;
  nlohmann::json counterexample;  // null unless status is Fails
  nlohmann::json bounds;
  std::uint64_t cases = 0;
  double seconds = 0;
  std::vector<std::string> notes;

  bool ok() const { return status != VerdictStatus::Fails; }
  // Runtime is left out unless requested so reports are reproducible.
  nlohmann::json to_json(bool with_runtime = false) const;
};

// Context for sweeps that only need a functor kind and one algebra.
Context make_context(FunctorKind kind, const Algebra& alg, int n = 0);

// --- morphisms, safety, invariance -------------------------------------------

bool is_morphism(const StateMap& f, const Coalgebra& g, const Coalgebra& g2, const FunctorSpace& x,
                 const FunctorSpace& y);

Verdict check_safety(const OperationSpec& op, const Context& ctx, const Bounds& bounds);
Verdict check_safety(const TestSpec& test, const Context& ctx, const Bounds& bounds);

// Throws precondition-violated unless f is a morphism for every atom and
// preserves every prop.
Verdict check_invariance(const Model& m, const Model& m2, const StateMap& f,
                         const std::vector<FormulaPtr>& formulas);

// Coarsest partition of the states compatible with the valuation and stable
// under every atom; returns the quotient model and the projection.
std::pair<Model, StateMap> quotient_model(const Model& m);

// --- separation ---------------------------------------------------------------

Verdict check_separation(const std::vector<LiftingSpec>& liftings, const Context& ctx, const Bounds& bounds);

// --- reduction rules ------------------------------------------------------------

Verdict verify_reduction_rule(const ReductionRule& rule, const LogicConfig& logic, const Bounds& bounds);

// The rule as an object-level equivalence over fresh atoms a1.. and props
// p1.. (and q for the tested formula): (lhs -> rhs) & (rhs -> lhs).
FormulaPtr rule_lhs(const ReductionRule& rule, const LogicConfig& logic);
FormulaPtr rule_rhs(const ReductionRule& rule, const LogicConfig& logic);
FormulaPtr reduction_axiom(const ReductionRule& rule, const LogicConfig& logic);

// --- entailment -----------------------------------------------------------------

Verdict bounded_entailment(const std::vector<FormulaPtr>& gamma, const FormulaPtr& phi,
                           std::shared_ptr<const LogicConfig> logic, const Bounds& bounds);

// Re-runs a counterexample emitted by any check; true iff the violation
// reproduces.
bool replay_counterexample(const nlohmann::json& cex);

// --- one-step satisfiability ----------------------------------------------------

enum class OneStepKind { LabelledDiamond, Threshold, MonotoneEval };
std::string onestep_kind_name(OneStepKind k);
// Throws unsupported-kind for anything but the three names above.
OneStepKind onestep_kind_from_name(const std::string& name);

// Finite restriction of a rank-1 homomorphism: one table per lifting id,
// indexed by predicate_index of the argument. Labelled-diamond uses "dia",
// monotone-eval uses "ev" (both over the algebra), threshold uses t<r> for
// each r != 0 over two-valued predicates with 0/1 entries.
struct RankOneAssignment {
  int n = 0;
  std::map<std::string, std::vector<Elem>> tables;

  nlohmann::json to_json() const;
  static RankOneAssignment from_json(const nlohmann::json& j);
};

struct OneStepResult {
  bool satisfiable = false;
  FValue alpha;
  std::string axiom;  // violated axiom when unsatisfiable
  nlohmann::json instance;

  nlohmann::json to_json() const;
};

// FunctorKind used by each one-step kind.
FunctorKind onestep_functor(OneStepKind k);
RankOneAssignment induced_assignment(OneStepKind k, const Algebra& alg, int n, const FValue& alpha);
OneStepResult one_step_witness(OneStepKind k, const Algebra& alg, const RankOneAssignment& h);

// --- fuzzing helpers ------------------------------------------------------------

// Random formula over the given props and atoms using every connective,
// lifting, operation and test of the logic (iteration included).
FormulaPtr random_formula(const LogicConfig& logic, const std::vector<std::string>& props,
                          const std::vector<std::string>& atoms, int depth, std::mt19937_64& rng);
ActionPtr random_action(const LogicConfig& logic, const std::vector<std::string>& props,
                        const std::vector<std::string>& atoms, int depth, std::mt19937_64& rng);

}  // namespace mvdl
