#pragma once

#include <memory>
#include <string>

#include "json.hpp"
#include "mvdl/algebra.hpp"
#include "mvdl/functor.hpp"
#include "mvdl/semantics.hpp"

namespace mvdl {

nlohmann::json algebra_to_json(const Algebra& alg);
// "impl" may be omitted, in which case it is derived from join and tensor.
Algebra algebra_from_json(const nlohmann::json& j);
// Built-in name ("B2", "L3", "G2+chi") or path to a JSON file.
std::shared_ptr<const Algebra> load_algebra(const std::string& name_or_path);

// Powerset: bitmask; APowerset: row; neighbourhood: table in predicate order;
// DoublePowerset: ascending list of member bitmasks.
nlohmann::json fvalue_to_json(const FunctorSpace& space, const FValue& t);
FValue fvalue_from_json(const FunctorSpace& space, const nlohmann::json& j);

nlohmann::json coalgebra_to_json(const FunctorSpace& space, const Coalgebra& g);
Coalgebra coalgebra_from_json(const FunctorSpace& space, const nlohmann::json& j);

nlohmann::json model_to_json(const Model& model);
Model model_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);

}  // namespace mvdl
