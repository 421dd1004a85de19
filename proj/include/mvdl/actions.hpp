#pragma once

#include <span>

#include "mvdl/logic.hpp"

namespace mvdl {

inline constexpr std::size_t kDefaultIterateCap = 1'000'000;

Coalgebra apply_op(const OperationSpec& op, std::span<const Coalgebra> args, const Context& ctx,
                   std::size_t iterate_cap = kDefaultIterateCap);

// Sequential composition used by iteration: Kleisli for the monads, the
// instantial composition for DoublePowerset.
Coalgebra compose(const Coalgebra& g1, const Coalgebra& g2, const Context& ctx);
Coalgebra unit_coalgebra(const Context& ctx);
Coalgebra kleisli_star(const Coalgebra& g, const Context& ctx, std::size_t cap = kDefaultIterateCap);

Coalgebra apply_test(const TestSpec& t, const Predicate& sigma, const Context& ctx);

// Closed forms, exposed for direct testing.
Coalgebra kleisli(const Coalgebra& g1, const Coalgebra& g2, const Context& ctx);
Coalgebra double_seq(const Coalgebra& g1, const Coalgebra& g2, const Context& ctx);
Coalgebra double_star(const Coalgebra& g1, const Coalgebra& g2, const Context& ctx);
Coalgebra nbh_union(const Coalgebra& g1, const Coalgebra& g2, const Context& ctx);
Coalgebra dual(const Coalgebra& g, const Context& ctx);
Coalgebra counter_domain(const Coalgebra& g, const Context& ctx);

}  // namespace mvdl
