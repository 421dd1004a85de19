#include "mvdl/actions.hpp"

#include <set>

#include "mvdl/error.hpp"

namespace mvdl {

namespace {

bool bit_kind(FunctorKind k) { return k == FunctorKind::Powerset || k == FunctorKind::DoublePowerset; }

void check_shape(const Coalgebra& g, const Context& ctx) {
  if (static_cast<int>(g.size()) != ctx.n)
    throw Error(ErrorCode::LengthMismatch, "coalgebra has " + std::to_string(g.size()) + " states, expected " +
                                               std::to_string(ctx.n));
}

Coalgebra pointwise(const Coalgebra& g1, const Coalgebra& g2, const Context& ctx, bool join) {
  check_shape(g1, ctx);
  check_shape(g2, ctx);
  const Algebra& A = *ctx.structure;
  const bool bits = bit_kind(ctx.kind);
  Coalgebra out = g1;
  for (int x = 0; x < ctx.n; ++x)
    for (std::size_t i = 0; i < out[x].size(); ++i) {
      Elem a = g1[x][i], b = g2[x][i];
      out[x][i] = bits ? (join ? (a | b) : (a & b)) : (join ? A.join(a, b) : A.meet(a, b));
    }
  return out;
}

}  // namespace

Coalgebra kleisli(const Coalgebra& g1, const Coalgebra& g2, const Context& ctx) {
  check_shape(g1, ctx);
  check_shape(g2, ctx);
  const int n = ctx.n;
  const Algebra& A = *ctx.structure;
  Coalgebra out(n);
  switch (ctx.kind) {
    case FunctorKind::Powerset:
      for (int x = 0; x < n; ++x) {
        out[x].assign(n, 0);
        for (int y = 0; y < n; ++y)
          if (g1[x][y])
            for (int z = 0; z < n; ++z) out[x][z] |= g2[y][z];
      }
      return out;
    case FunctorKind::APowerset:
      for (int x = 0; x < n; ++x) {
        out[x].assign(n, 0);
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z) out[x][z] = A.join(out[x][z], A.tensor(g1[x][y], g2[y][z]));
      }
      return out;
    case FunctorKind::ANeighbourhood:
    case FunctorKind::MonotoneANeighbourhood: {
      const int m = A.size();
      const std::size_t preds = g1.empty() ? 1 : g1[0].size();
      Predicate tau(n);
      for (int x = 0; x < n; ++x) out[x].assign(preds, 0);
      for (std::size_t s = 0; s < preds; ++s) {
        for (int y = 0; y < n; ++y) tau[y] = g2[y][s];
        const std::uint64_t t = predicate_index(tau, m);
        for (int x = 0; x < n; ++x) out[x][s] = g1[x][t];
      }
      return out;
    }
    case FunctorKind::DoublePowerset: break;
  }
  throw Error(ErrorCode::IncompatibleVariant, "Kleisli does not apply to " + kind_name(ctx.kind));
}

Coalgebra double_seq(const Coalgebra& g1, const Coalgebra& g2, const Context& ctx) {
  check_shape(g1, ctx);
  check_shape(g2, ctx);
  const int n = ctx.n;
  const std::size_t subsets = std::size_t{1} << n;
  Coalgebra out(n, FValue(subsets, 0));
  std::vector<std::size_t> U;
  for (int x = 0; x < n; ++x) {
    for (std::size_t Z = 0; Z < subsets; ++Z) {
      if (!g1[x][Z]) continue;
      // Families F within U = union of g2[Z] that meet every g2(z); the
      // reachable unions are exactly the W for which the members of U below W
      // cover W and every g2(z) has a member below W.
      U.clear();
      for (std::size_t V = 0; V < subsets; ++V) {
        bool in = false;
        for (int z = 0; z < n && !in; ++z) in = (Z >> z & 1u) && g2[z][V];
        if (in) U.push_back(V);
      }
      for (std::size_t W = 0; W < subsets; ++W) {
        if (out[x][W]) continue;
        std::size_t cover = 0;
        for (std::size_t V : U)
          if ((V & ~W) == 0) cover |= V;
        if (cover != W) continue;
        bool hits = true;
        for (int z = 0; z < n && hits; ++z) {
          if (!(Z >> z & 1u)) continue;
          bool found = false;
          for (std::size_t V = 0; V < subsets && !found; ++V) found = g2[z][V] && (V & ~W) == 0;
          hits = found;
        }
        if (hits) out[x][W] = 1;
      }
    }
  }
  return out;
}

Coalgebra double_star(const Coalgebra& g1, const Coalgebra& g2, const Context& ctx) {
  check_shape(g1, ctx);
  check_shape(g2, ctx);
  const int n = ctx.n;
  const std::size_t subsets = std::size_t{1} << n;
  Coalgebra out(n, FValue(subsets, 0));
  for (int x = 0; x < n; ++x)
    for (std::size_t Y = 0; Y < subsets; ++Y) {
      if (!g1[x][Y]) continue;
      for (int y = 0; y < n; ++y)
        if (Y >> y & 1u)
          for (std::size_t Z = 0; Z < subsets; ++Z) out[x][Z] |= g2[y][Z];
    }
  return out;
}

Coalgebra nbh_union(const Coalgebra& g1, const Coalgebra& g2, const Context& ctx) {
  check_shape(g1, ctx);
  check_shape(g2, ctx);
  const int n = ctx.n;
  const std::size_t subsets = std::size_t{1} << n;
  Coalgebra out(n, FValue(subsets, 0));
  for (int x = 0; x < n; ++x)
    for (std::size_t A = 0; A < subsets; ++A) {
      if (!g1[x][A]) continue;
      for (std::size_t B = 0; B < subsets; ++B)
        if (g2[x][B]) out[x][A | B] = 1;
    }
  return out;
}

Coalgebra dual(const Coalgebra& g, const Context& ctx) {
  check_shape(g, ctx);
  if (!is_neighbourhood(ctx.kind)) throw Error(ErrorCode::IncompatibleVariant, "dual needs a neighbourhood functor");
  const Algebra& A = *ctx.structure;
  const int m = A.size();
  Coalgebra out = g;
  const std::size_t preds = g.empty() ? 0 : g[0].size();
  for (std::size_t s = 0; s < preds; ++s) {
    auto sigma = predicate_decode(s, m, ctx.n);
    for (auto& v : sigma) v = A.neg(v);
    const std::uint64_t t = predicate_index(sigma, m);
    for (int x = 0; x < ctx.n; ++x) out[x][s] = A.neg(g[x][t]);
  }
  return out;
}

Coalgebra counter_domain(const Coalgebra& g, const Context& ctx) {
  check_shape(g, ctx);
  auto space = ctx.space();
  Coalgebra out(ctx.n);
  for (int x = 0; x < ctx.n; ++x) out[x] = space.is_bottom(g[x]) ? space.unit(x) : space.bottom();
  return out;
}

Coalgebra unit_coalgebra(const Context& ctx) {
  auto space = ctx.space();
  Coalgebra out(ctx.n);
  for (int x = 0; x < ctx.n; ++x) out[x] = space.unit(x);
  return out;
}

Coalgebra compose(const Coalgebra& g1, const Coalgebra& g2, const Context& ctx) {
  return ctx.kind == FunctorKind::DoublePowerset ? double_seq(g1, g2, ctx) : kleisli(g1, g2, ctx);
}

Coalgebra kleisli_star(const Coalgebra& g, const Context& ctx, std::size_t cap) {
  check_shape(g, ctx);
  auto space = ctx.space();
  Coalgebra cur = unit_coalgebra(ctx);
  Coalgebra acc = cur;
  std::set<Coalgebra> seen{cur};
  for (std::size_t steps = 0;; ++steps) {
    if (steps >= cap)
      throw Error(ErrorCode::BudgetExceeded, "iteration orbit longer than " + std::to_string(cap));
    Coalgebra nxt = compose(g, cur, ctx);
    if (!seen.insert(nxt).second) break;
    for (int x = 0; x < ctx.n; ++x) acc[x] = space.join(acc[x], nxt[x]);
    cur = std::move(nxt);
  }
  return acc;
}

Coalgebra apply_op(const OperationSpec& o, std::span<const Coalgebra> args, const Context& ctx,
                   std::size_t iterate_cap) {
  if (o.kind != ctx.kind) throw Error(ErrorCode::TagMismatch, "operation '" + o.id + "' is for another functor");
  check_compatible(o);
  if (static_cast<int>(args.size()) != o.arity)
    throw Error(ErrorCode::ArityMismatch, "operation '" + o.id + "' expects " + std::to_string(o.arity) + " arguments");
  switch (o.variant) {
    case OpVariant::Union:
    case OpVariant::JoinPW: return pointwise(args[0], args[1], ctx, true);
    case OpVariant::MeetPW: return pointwise(args[0], args[1], ctx, false);
    case OpVariant::Dual: return dual(args[0], ctx);
    case OpVariant::Kleisli: return kleisli(args[0], args[1], ctx);
    case OpVariant::DoubleSeq: return double_seq(args[0], args[1], ctx);
    case OpVariant::DoubleStar: return double_star(args[0], args[1], ctx);
    case OpVariant::NbhUnion: return nbh_union(args[0], args[1], ctx);
    case OpVariant::Star: return kleisli_star(args[0], ctx, iterate_cap);
    case OpVariant::CounterDomain: return counter_domain(args[0], ctx);
  }
  throw Error(ErrorCode::IncompatibleVariant, "unhandled operation variant");
}

Coalgebra apply_test(const TestSpec& t, const Predicate& sigma, const Context& ctx) {
  if (t.kind != ctx.kind) throw Error(ErrorCode::TagMismatch, "test '" + t.id + "' is for another functor");
  check_compatible(t);
  if (static_cast<int>(sigma.size()) != ctx.n) throw Error(ErrorCode::LengthMismatch, "predicate length differs from carrier");
  auto space = ctx.space();
  Coalgebra out(ctx.n);
  for (int x = 0; x < ctx.n; ++x) {
    switch (t.variant) {
      case TestVariant::TestP:
      case TestVariant::InstantialP:
        out[x] = t.P.at(sigma[x]) ? space.unit(x) : space.bottom();
        break;
      case TestVariant::LabelledUnit:
        out[x] = space.bottom();
        out[x][x] = ctx.embed(sigma[x]);
        break;
      case TestVariant::AngelicMonoid: {
        const Algebra& A = *ctx.structure;
        out[x] = space.bottom();
        for (std::size_t s = 0; s < out[x].size(); ++s)
          out[x][s] = A.tensor(predicate_decode(s, A.size(), ctx.n)[x], sigma[x]);
        break;
      }
    }
  }
  return out;
}

}  // namespace mvdl
