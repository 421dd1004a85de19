#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mvdl/algebra.hpp"

namespace mvdl {

enum class FunctorKind { Powerset, APowerset, ANeighbourhood, MonotoneANeighbourhood, DoublePowerset };

std::string kind_name(FunctorKind kind);
FunctorKind kind_from_name(const std::string& name);
bool is_neighbourhood(FunctorKind kind);

// Payload layout per kind:
//   Powerset        n bits, entry x is 1 iff x is a successor
//   APowerset       n algebra elements, the row R(x, -)
//   (Monotone)ANbh  m^n algebra elements, indexed by predicate_index
//   DoublePowerset  2^n bits, entry s is 1 iff the subset with bitmask s is a member
using FValue = std::vector<Elem>;
using Predicate = std::vector<Elem>;
using Coalgebra = std::vector<FValue>;
using StateMap = std::vector<int>;

inline constexpr std::uint64_t kDefaultEnumBudget = 1'000'000;

// Predicates X -> A in lexicographic order, first state most significant.
std::uint64_t predicate_count(int m, int n);
std::uint64_t predicate_index(const Predicate& p, int m);
Predicate predicate_decode(std::uint64_t index, int m, int n);

std::uint32_t subset_of(const Predicate& p, Elem top);

// The functor F applied to a carrier of size n; the algebra is the structure
// algebra labelling transitions (ignored by the two powerset kinds).
class FunctorSpace {
 public:
  FunctorSpace(FunctorKind kind, int n, const Algebra* alg);

  FunctorKind kind() const { return kind_; }
  int n() const { return n_; }
  const Algebra& algebra() const { return *alg_; }
  std::size_t value_size() const { return size_; }

  bool is_valid(const FValue& t) const;
  bool is_monotone(const FValue& t) const;

  FValue unit(int x) const;
  FValue bottom() const;
  FValue join(const FValue& a, const FValue& b) const;
  bool is_bottom(const FValue& t) const;

  // Number of raw payloads before the monotone filter; saturates at UINT64_MAX.
  std::uint64_t raw_count() const;
  // Calls fn for each valid FValue; throws budget-exceeded if raw_count > budget.
  void for_each(const std::function<void(const FValue&)>& fn,
                std::uint64_t budget = kDefaultEnumBudget) const;
  std::vector<FValue> enumerate(std::uint64_t budget = kDefaultEnumBudget) const;
  FValue random(std::mt19937_64& rng) const;

  // F f for f: X -> Y, where target is F over Y.
  FValue image(const StateMap& f, const FunctorSpace& target, const FValue& t) const;

 private:
  FunctorKind kind_;
  int n_;
  const Algebra* alg_;
  std::size_t size_;
  // For neighbourhood kinds: pairs (lower, upper) of predicate indices that
  // differ in one coordinate, lower < upper pointwise.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> covers_;
};

std::string format_fvalue(const FunctorSpace& space, const FValue& t);

}  // namespace mvdl
