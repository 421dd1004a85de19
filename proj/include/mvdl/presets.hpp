#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mvdl/logic.hpp"

namespace mvdl {

// pdl-crisp, pdl-labelled, pdl-threshold, game, instantial. "neighbourhood"
// is the game configuration over the non-monotone functor.
std::vector<std::string> preset_names();

struct PresetOptions {
  int max_k = 2;  // instantial: liftings i1 .. i(max_k+1)
};

std::shared_ptr<const LogicConfig> make_preset(const std::string& name, std::shared_ptr<const Algebra> alg,
                                               const PresetOptions& options = {});

// Default preset for a model file that names only a functor kind.
std::string default_preset(FunctorKind kind);

// Lifting id for threshold r in pdl-threshold.
std::string threshold_id(Elem r);
// Lifting id for the instantial lifting of arity k+1.
std::string instantial_id(int arity);

}  // namespace mvdl
