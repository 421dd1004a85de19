#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "json.hpp"
#include "mvdl/harness.hpp"

namespace mvdl::detail {

using nlohmann::json;

// Body of a sweep: handles case i, adds the number of elementary checks to
// cases, returns a counterexample on failure.
using CaseFn = std::function<std::optional<json>(std::uint64_t i, std::uint64_t& cases)>;

struct SearchResult {
  std::optional<json> cex;  // from the lowest failing index
  std::uint64_t cases = 0;
};

SearchResult search(std::uint64_t count, unsigned jobs, const CaseFn& body);

// Independent of thread scheduling: one stream per (seed, n, i).
std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t n, std::uint64_t i);

// Saturating b^e.
std::uint64_t sat_pow(std::uint64_t b, std::uint64_t e);
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b);

// Mixed-radix decode with a uniform base, least significant digit last.
void decode(std::uint64_t index, std::uint64_t base, std::size_t len, std::vector<std::size_t>& digits);

// Coalgebras 0..count-1 with the given state values, decoded from digits
// starting at offset.
std::vector<Coalgebra> coalgebras_from_digits(const std::vector<FValue>& vals, const std::vector<std::size_t>& digits,
                                              std::size_t offset, int count, int n);

SweepMode resolve_mode(SweepMode requested, std::uint64_t total, std::uint64_t budget, const std::string& what);

json algebra_ref(const Algebra& alg);
json lifting_json(const LiftingSpec& l);
LiftingSpec lifting_from_json(const json& j);

bool replay_structural(const json& cex);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace mvdl::detail
