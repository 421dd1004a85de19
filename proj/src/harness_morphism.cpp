#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

#include "harness_internal.hpp"
#include "mvdl/error.hpp"
#include "mvdl/io.hpp"

namespace mvdl {

using nlohmann::json;

namespace detail {

SearchResult search(std::uint64_t count, unsigned jobs, const CaseFn& body) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::uint64_t>(jobs, std::max<std::uint64_t>(count, 1)));
  SearchResult out;
  if (jobs <= 1) {
    for (std::uint64_t i = 0; i < count; ++i)
      if (auto cex = body(i, out.cases)) {
        out.cex = std::move(cex);
        break;
      }
    return out;
  }
  std::atomic<std::uint64_t> next{0}, best{count}, cases{0};
  std::mutex mu;
  std::exception_ptr error;
  auto worker = [&] {
    std::uint64_t local = 0;
    try {
      for (std::uint64_t i = next++; i < count && i < best.load(); i = next++)
        if (auto cex = body(i, local)) {
          std::lock_guard lock(mu);
          if (i < best) {
            best = i;
            out.cex = std::move(cex);
          }
          break;
        }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
      best = 0;
    }
    cases += local;
  };
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  out.cases = cases;
  return out;
}

std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t n, std::uint64_t i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
  return std::mt19937_64(seq);
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = sat_mul(r, b);
  return r;
}

void decode(std::uint64_t index, std::uint64_t base, std::size_t len, std::vector<std::size_t>& digits) {
  digits.assign(len, 0);
  for (std::size_t i = len; i-- > 0;) {
    digits[i] = index % base;
    index /= base;
  }
}

std::vector<Coalgebra> coalgebras_from_digits(const std::vector<FValue>& vals, const std::vector<std::size_t>& digits,
                                              std::size_t offset, int count, int n) {
  std::vector<Coalgebra> out(count, Coalgebra(n));
  for (int c = 0; c < count; ++c)
    for (int x = 0; x < n; ++x) out[c][x] = vals[digits[offset + c * n + x]];
  return out;
}

SweepMode resolve_mode(SweepMode requested, std::uint64_t total, std::uint64_t budget, const std::string& what) {
  if (requested == SweepMode::Random) return SweepMode::Random;
  if (total <= budget) return SweepMode::Exhaustive;
  if (requested == SweepMode::Auto) return SweepMode::Random;
  throw Error(ErrorCode::BudgetExceeded, what + ": " + (total == UINT64_MAX ? std::string(">2^64") : std::to_string(total)) +
                                             " cases exceed budget " + std::to_string(budget) +
                                             "; random mode is available");
}

json algebra_ref(const Algebra& alg) {
  if (is_builtin_name(alg.name())) return alg.name();
  return algebra_to_json(alg);
}

json lifting_json(const LiftingSpec& l) {
  return {{"id", l.id}, {"arity", l.arity}, {"kind", kind_name(l.kind)}, {"variant", variant_name(l.variant)},
          {"threshold", static_cast<int>(l.threshold)}};
}

LiftingSpec lifting_from_json(const json& j) {
  static const std::vector<LiftingVariant> all = {
      LiftingVariant::BoxCrisp,  LiftingVariant::DiamondCrisp, LiftingVariant::BoxLabelled,
      LiftingVariant::DiamondLabelled, LiftingVariant::Threshold, LiftingVariant::Eval,
      LiftingVariant::Instantial};
  LiftingSpec l;
  l.id = j.at("id");
  l.arity = j.at("arity");
  l.kind = kind_from_name(j.at("kind"));
  const std::string v = j.at("variant");
  auto it = std::find_if(all.begin(), all.end(), [&](LiftingVariant x) { return variant_name(x) == v; });
  if (it == all.end()) throw Error(ErrorCode::UnknownIdentifier, "lifting variant '" + v + "'");
  l.variant = *it;
  l.threshold = static_cast<Elem>(j.value("threshold", 0));
  return l;
}

}  // namespace detail

using namespace detail;

std::string status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Holds: return "holds";
    case VerdictStatus::Fails: return "fails";
    case VerdictStatus::HoldsUpToBound: return "holds-up-to-bound";
  }
  return "?";
}

std::string mode_name(SweepMode m) {
  switch (m) {
    case SweepMode::Exhaustive: return "exhaustive";
    case SweepMode::Random: return "random";
    case SweepMode::Auto: return "auto";
  }
  return "?";
}

SweepMode mode_from_name(const std::string& name) {
  if (name == "exhaustive") return SweepMode::Exhaustive;
  if (name == "random") return SweepMode::Random;
  if (name == "auto") return SweepMode::Auto;
  throw Error(ErrorCode::InvalidParameter, "unknown sweep mode '" + name + "'");
}

json Bounds::to_json() const {
  return {{"min_n", min_n}, {"max_n", max_n}, {"max_n_target", max_n_target}, {"budget", budget},
          {"mode", mode_name(mode)}, {"trials", trials}, {"seed", seed}};
}

json Verdict::to_json(bool with_runtime) const {
  json j = {{"check", check}, {"status", status_name(status)}, {"cases", cases}, {"bounds", bounds}};
  if (!notes.empty()) j["notes"] = notes;
  if (status == VerdictStatus::Fails) j["counterexample"] = counterexample;
  if (with_runtime) j["seconds"] = seconds;
  return j;
}

Context make_context(FunctorKind kind, const Algebra& alg, int n) { return {kind, n, &alg, &alg}; }

bool is_morphism(const StateMap& f, const Coalgebra& g, const Coalgebra& g2, const FunctorSpace& x,
                 const FunctorSpace& y) {
  if (x.kind() != y.kind()) throw Error(ErrorCode::TagMismatch, "coalgebras of different functor kinds");
  if (static_cast<int>(f.size()) != x.n() || static_cast<int>(g.size()) != x.n() ||
      static_cast<int>(g2.size()) != y.n())
    throw Error(ErrorCode::LengthMismatch, "map or coalgebra size differs from carrier");
  for (int s : f)
    if (s < 0 || s >= y.n()) throw Error(ErrorCode::InvalidInput, "state map leaves the codomain");
  for (int s = 0; s < x.n(); ++s)
    if (x.image(f, y, g[s]) != g2[f[s]]) return false;
  return true;
}

namespace {

std::vector<StateMap> all_maps(int n, int n2) {
  std::vector<StateMap> out;
  std::vector<std::size_t> d;
  for (std::uint64_t i = 0; i < sat_pow(n2, n); ++i) {
    decode(i, n2, n, d);
    out.emplace_back(d.begin(), d.end());
  }
  return out;
}

json op_json(const OperationSpec& op) {
  return {{"id", op.id}, {"arity", op.arity}, {"kind", kind_name(op.kind)}, {"variant", variant_name(op.variant)}};
}

json test_json(const TestSpec& t) {
  json P = json::array();
  for (std::size_t i = 0; i < t.P.size(); ++i)
    if (t.P[i]) P.push_back(i);
  return {{"id", t.id}, {"kind", kind_name(t.kind)}, {"variant", variant_name(t.variant)}, {"P", P}};
}

json coalgebras_json(const FunctorSpace& space, const std::vector<Coalgebra>& gs) {
  json out = json::array();
  for (const auto& g : gs) out.push_back(coalgebra_to_json(space, g));
  return out;
}

// One joint-morphism case: gammas on X, f, and the codomain values forced on
// the image of f; the remaining codomain values come from free.
std::optional<json> safety_case(const OperationSpec& op, const Context& cx, const Context& cy, const StateMap& f,
                                const std::vector<Coalgebra>& gammas, const Coalgebra& out_x,
                                std::vector<Coalgebra> gammas_y) {
  const FunctorSpace X = cx.space(), Y = cy.space();
  Coalgebra out_y = apply_op(op, gammas_y, cy);
  for (int x = 0; x < cx.n; ++x) {
    FValue lhs = X.image(f, Y, out_x[x]);
    if (lhs != out_y[f[x]])
      return json{{"n", cx.n},
                  {"n_target", cy.n},
                  {"f", f},
                  {"gammas", coalgebras_json(X, gammas)},
                  {"gammas_target", coalgebras_json(Y, gammas_y)},
                  {"state", x},
                  {"image_of_result", fvalue_to_json(Y, lhs)},
                  {"result_at_image", fvalue_to_json(Y, out_y[f[x]])}};
  }
  return std::nullopt;
}

// Codomain values forced by f; false on conflict.
bool force(const StateMap& f, const std::vector<Coalgebra>& gammas, const FunctorSpace& X, const FunctorSpace& Y,
           std::vector<Coalgebra>& gy, std::vector<bool>& fixed) {
  const int k = static_cast<int>(gammas.size());
  gy.assign(k, Coalgebra(Y.n(), Y.bottom()));
  fixed.assign(Y.n(), false);
  for (int x = 0; x < X.n(); ++x) {
    const int y = f[x];
    for (int i = 0; i < k; ++i) {
      FValue v = X.image(f, Y, gammas[i][x]);
      if (fixed[y] && gy[i][y] != v) return false;
      gy[i][y] = std::move(v);
    }
    fixed[y] = true;
  }
  return true;
}

}  // namespace

Verdict check_safety(const OperationSpec& op, const Context& ctx, const Bounds& b) {
  check_compatible(op);
  if (op.kind != ctx.kind) throw Error(ErrorCode::TagMismatch, "operation and context use different functors");
  Stopwatch clock;
  Verdict v;
  v.check = "safety";
  v.bounds = b.to_json();
  const int k = op.arity;
  for (int n = b.min_n; n <= b.max_n && !v.counterexample.is_object(); ++n) {
    const Context cx = ctx.with_n(n);
    const FunctorSpace X = cx.space();
    std::uint64_t total = 0;
    for (int n2 = 1; n2 <= b.max_n_target; ++n2) {
      FunctorSpace Y = ctx.with_n(n2).space();
      for (const auto& f : all_maps(n, n2)) {
        int image = static_cast<int>(std::set<int>(f.begin(), f.end()).size());
        total = sat_mul(1, total + std::min(UINT64_MAX - total, sat_pow(Y.raw_count(), static_cast<std::uint64_t>(k) * (n2 - image))));
      }
    }
    total = sat_mul(total, sat_pow(X.raw_count(), static_cast<std::uint64_t>(k) * n));
    const SweepMode mode = resolve_mode(b.mode, total, b.budget, "safety of " + op.id);
    SearchResult r;
    if (mode == SweepMode::Exhaustive) {
      const auto vals = X.enumerate(b.budget);
      std::vector<std::vector<FValue>> yvals;
      for (int n2 = 1; n2 <= b.max_n_target; ++n2) yvals.push_back(ctx.with_n(n2).space().enumerate(b.budget));
      const std::uint64_t count = sat_pow(vals.size(), static_cast<std::uint64_t>(k) * n);
      r = search(count, b.jobs, [&](std::uint64_t i, std::uint64_t& cases) -> std::optional<json> {
        std::vector<std::size_t> d;
        decode(i, vals.size(), static_cast<std::size_t>(k) * n, d);
        auto gammas = coalgebras_from_digits(vals, d, 0, k, n);
        Coalgebra out_x = apply_op(op, gammas, cx);
        for (int n2 = 1; n2 <= b.max_n_target; ++n2) {
          const Context cy = ctx.with_n(n2);
          const FunctorSpace Y = cy.space();
          const auto& yv = yvals[n2 - 1];
          for (const auto& f : all_maps(n, n2)) {
            std::vector<Coalgebra> gy;
            std::vector<bool> fixed;
            if (!force(f, gammas, X, Y, gy, fixed)) continue;
            std::vector<int> free_states;
            for (int y = 0; y < n2; ++y)
              if (!fixed[y]) free_states.push_back(y);
            const std::size_t slots = free_states.size() * k;
            std::vector<std::size_t> fd;
            for (std::uint64_t j = 0; j < sat_pow(yv.size(), slots); ++j) {
              decode(j, yv.size(), slots, fd);
              for (std::size_t s = 0; s < slots; ++s) gy[s / free_states.size()][free_states[s % free_states.size()]] = yv[fd[s]];
              ++cases;
              if (auto cex = safety_case(op, cx, cy, f, gammas, out_x, gy)) return cex;
            }
          }
        }
        return std::nullopt;
      });
    } else {
      r = search(b.trials, b.jobs, [&](std::uint64_t i, std::uint64_t& cases) -> std::optional<json> {
        auto rng = case_rng(b.seed, n, i);
        std::vector<Coalgebra> gammas(k, Coalgebra(n));
        for (auto& g : gammas)
          for (auto& t : g) t = X.random(rng);
        const int n2 = std::uniform_int_distribution<int>(1, b.max_n_target)(rng);
        const Context cy = ctx.with_n(n2);
        const FunctorSpace Y = cy.space();
        StateMap f(n);
        for (auto& s : f) s = std::uniform_int_distribution<int>(0, n2 - 1)(rng);
        std::vector<Coalgebra> gy;
        std::vector<bool> fixed;
        if (!force(f, gammas, X, Y, gy, fixed)) return std::nullopt;
        for (int y = 0; y < n2; ++y)
          if (!fixed[y])
            for (auto& g : gy) g[y] = Y.random(rng);
        ++cases;
        return safety_case(op, cx, cy, f, gammas, apply_op(op, gammas, cx), gy);
      });
      v.notes.push_back("n=" + std::to_string(n) + " sampled");
    }
    v.cases += r.cases;
    if (r.cex) {
      v.counterexample = *r.cex;
      v.counterexample["check"] = "safety";
      v.counterexample["op"] = op_json(op);
      v.counterexample["algebra"] = algebra_ref(*ctx.structure);
      v.counterexample["truth"] = algebra_ref(*ctx.truth);
    }
  }
  v.status = v.counterexample.is_object() ? VerdictStatus::Fails : VerdictStatus::HoldsUpToBound;
  v.seconds = clock.seconds();
  return v;
}

Verdict check_safety(const TestSpec& test, const Context& ctx, const Bounds& b) {
  check_compatible(test);
  if (test.kind != ctx.kind) throw Error(ErrorCode::TagMismatch, "test and context use different functors");
  Stopwatch clock;
  Verdict v;
  v.check = "safety";
  v.bounds = b.to_json();
  const int mt = ctx.truth->size();
  for (int n = b.min_n; n <= b.max_n && !v.counterexample.is_object(); ++n) {
    const Context cx = ctx.with_n(n);
    const FunctorSpace X = cx.space();
    for (int n2 = 1; n2 <= b.max_n_target && !v.counterexample.is_object(); ++n2) {
      const Context cy = ctx.with_n(n2);
      const FunctorSpace Y = cy.space();
      const auto maps = all_maps(n, n2);
      const std::uint64_t preds = predicate_count(mt, n2);
      auto r = search(maps.size(), b.jobs, [&](std::uint64_t i, std::uint64_t& cases) -> std::optional<json> {
        const StateMap& f = maps[i];
        for (std::uint64_t p = 0; p < preds; ++p) {
          Predicate sigma2 = predicate_decode(p, mt, n2), sigma(n);
          for (int x = 0; x < n; ++x) sigma[x] = sigma2[f[x]];
          Coalgebra tx = apply_test(test, sigma, cx), ty = apply_test(test, sigma2, cy);
          ++cases;
          for (int x = 0; x < n; ++x) {
            FValue lhs = X.image(f, Y, tx[x]);
            if (lhs != ty[f[x]])
              return json{{"n", n},           {"n_target", n2},
                          {"f", f},           {"sigma_target", std::vector<int>(sigma2.begin(), sigma2.end())},
                          {"state", x},       {"image_of_result", fvalue_to_json(Y, lhs)},
                          {"result_at_image", fvalue_to_json(Y, ty[f[x]])}};
          }
        }
        return std::nullopt;
      });
      v.cases += r.cases;
      if (r.cex) {
        v.counterexample = *r.cex;
        v.counterexample["check"] = "safety";
        v.counterexample["test"] = test_json(test);
        v.counterexample["algebra"] = algebra_ref(*ctx.structure);
        v.counterexample["truth"] = algebra_ref(*ctx.truth);
      }
    }
  }
  v.status = v.counterexample.is_object() ? VerdictStatus::Fails : VerdictStatus::HoldsUpToBound;
  v.seconds = clock.seconds();
  return v;
}

Verdict check_invariance(const Model& m, const Model& m2, const StateMap& f, const std::vector<FormulaPtr>& formulas) {
  Stopwatch clock;
  const FunctorSpace X = m.context().space(), Y = m2.context().space();
  if (static_cast<int>(f.size()) != m.n)
    throw Error(ErrorCode::PreconditionViolated, "state map has " + std::to_string(f.size()) + " entries");
  for (int s : f)
    if (s < 0 || s >= m2.n) throw Error(ErrorCode::PreconditionViolated, "state map leaves the codomain");
  for (const auto& [a, g] : m.atoms) {
    auto it = m2.atoms.find(a);
    if (it == m2.atoms.end()) throw Error(ErrorCode::PreconditionViolated, "atom '" + a + "' missing in codomain");
    if (!is_morphism(f, g, it->second, X, Y))
      throw Error(ErrorCode::PreconditionViolated, "atom '" + a + "' is not preserved by the map");
  }
  for (const auto& [p, val] : m.valuation) {
    auto it = m2.valuation.find(p);
    if (it == m2.valuation.end()) throw Error(ErrorCode::PreconditionViolated, "prop '" + p + "' missing in codomain");
    for (int x = 0; x < m.n; ++x)
      if (it->second[f[x]] != val[x])
        throw Error(ErrorCode::PreconditionViolated, "prop '" + p + "' differs at state " + std::to_string(x));
  }
  Verdict v;
  v.check = "invariance";
  v.status = VerdictStatus::Holds;
  Evaluator e1(m), e2(m2);
  auto fail = [&](json cex) {
    cex["check"] = "invariance";
    cex["model"] = model_to_json(m);
    cex["model_target"] = model_to_json(m2);
    cex["f"] = f;
    v.counterexample = std::move(cex);
    v.status = VerdictStatus::Fails;
  };
  for (const auto& phi : formulas) {
    std::vector<ActionPtr> actions;
    collect_actions(*phi, actions);
    for (const auto& a : actions) {
      if (a->kind == Action::Kind::Atomic) continue;
      ++v.cases;
      if (!is_morphism(f, e1.interpret(*a), e2.interpret(*a), X, Y)) {
        fail({{"action", render(*a)}});
        break;
      }
    }
    if (!v.ok()) break;
    Predicate p1 = e1.eval(*phi), p2 = e2.eval(*phi);
    ++v.cases;
    for (int x = 0; x < m.n; ++x)
      if (p2[f[x]] != p1[x]) {
        fail({{"formula", render(*phi)}, {"state", x}});
        break;
      }
    if (!v.ok()) break;
  }
  v.seconds = clock.seconds();
  return v;
}

std::pair<Model, StateMap> quotient_model(const Model& m) {
  const Context ctx = m.context();
  const FunctorSpace X = ctx.space();
  StateMap cls(m.n, 0);
  int count = 0;
  {
    std::map<std::vector<Elem>, int> ids;
    for (int x = 0; x < m.n; ++x) {
      std::vector<Elem> key;
      for (const auto& [p, val] : m.valuation) key.push_back(val[x]);
      auto [it, fresh] = ids.try_emplace(key, static_cast<int>(ids.size()));
      cls[x] = it->second;
    }
    count = static_cast<int>(ids.size());
  }
  for (;;) {
    const FunctorSpace Y = ctx.with_n(count).space();
    std::map<std::pair<int, std::vector<FValue>>, int> ids;
    StateMap next(m.n);
    for (int x = 0; x < m.n; ++x) {
      std::vector<FValue> key;
      for (const auto& [a, g] : m.atoms) key.push_back(X.image(cls, Y, g[x]));
      auto [it, fresh] = ids.try_emplace({cls[x], std::move(key)}, static_cast<int>(ids.size()));
      next[x] = it->second;
    }
    const int next_count = static_cast<int>(ids.size());
    // Renumber by first occurrence so the projection is canonical.
    std::vector<int> order(next_count, -1);
    int seen = 0;
    for (int x = 0; x < m.n; ++x)
      if (order[next[x]] < 0) order[next[x]] = seen++;
    for (auto& c : next) c = order[c];
    cls = std::move(next);
    if (next_count == count) break;
    count = next_count;
  }
  Model q;
  q.logic = m.logic;
  q.n = count;
  std::vector<int> rep(count, -1);
  for (int x = 0; x < m.n; ++x)
    if (rep[cls[x]] < 0) rep[cls[x]] = x;
  const FunctorSpace Y = ctx.with_n(count).space();
  for (const auto& [a, g] : m.atoms) {
    Coalgebra h(count);
    for (int c = 0; c < count; ++c) h[c] = X.image(cls, Y, g[rep[c]]);
    q.atoms[a] = std::move(h);
  }
  for (const auto& [p, val] : m.valuation) {
    Predicate pv(count);
    for (int c = 0; c < count; ++c) pv[c] = val[rep[c]];
    q.valuation[p] = std::move(pv);
  }
  return {q, cls};
}

namespace {

std::vector<Elem> lifting_signature(const std::vector<LiftingSpec>& liftings, const Context& ctx, const FValue& t,
                                    const std::vector<Predicate>& preds) {
  std::vector<Elem> sig;
  std::vector<std::size_t> d;
  for (const auto& l : liftings) {
    const std::uint64_t tuples = sat_pow(preds.size(), l.arity);
    std::vector<Predicate> args(l.arity);
    for (std::uint64_t i = 0; i < tuples; ++i) {
      decode(i, preds.size(), l.arity, d);
      for (int a = 0; a < l.arity; ++a) args[a] = preds[d[a]];
      sig.push_back(apply_lifting(l, args, t, ctx));
    }
  }
  return sig;
}

}  // namespace

Verdict check_separation(const std::vector<LiftingSpec>& liftings, const Context& ctx, const Bounds& b) {
  Stopwatch clock;
  for (const auto& l : liftings) {
    check_compatible(l);
    if (l.kind != ctx.kind) throw Error(ErrorCode::TagMismatch, "lifting '" + l.id + "' is for another functor");
  }
  Verdict v;
  v.check = "separation";
  v.bounds = {{"n", ctx.n}, {"budget", b.budget}, {"mode", mode_name(b.mode)}, {"trials", b.trials}, {"seed", b.seed}};
  const FunctorSpace space = ctx.space();
  std::vector<Predicate> preds;
  const int mt = ctx.truth->size();
  for (std::uint64_t i = 0; i < predicate_count(mt, ctx.n); ++i) preds.push_back(predicate_decode(i, mt, ctx.n));
  auto fail = [&](const FValue& t1, const FValue& t2) {
    json ls = json::array();
    for (const auto& l : liftings) ls.push_back(lifting_json(l));
    v.counterexample = {{"check", "separation"},
                        {"kind", kind_name(ctx.kind)},
                        {"n", ctx.n},
                        {"algebra", algebra_ref(*ctx.structure)},
                        {"truth", algebra_ref(*ctx.truth)},
                        {"liftings", ls},
                        {"t1", fvalue_to_json(space, t1)},
                        {"t2", fvalue_to_json(space, t2)}};
    v.status = VerdictStatus::Fails;
  };
  const SweepMode mode = resolve_mode(b.mode, space.raw_count(), b.budget, "separation");
  if (mode == SweepMode::Exhaustive) {
    std::map<std::vector<Elem>, FValue> seen;
    space.for_each(
        [&](const FValue& t) {
          if (!v.ok()) return;
          ++v.cases;
          auto [it, fresh] = seen.try_emplace(lifting_signature(liftings, ctx, t, preds), t);
          if (!fresh) fail(it->second, t);
        },
        b.budget);
  } else {
    std::mt19937_64 rng(b.seed);
    for (std::uint64_t i = 0; i < b.trials && v.ok(); ++i) {
      FValue t1 = space.random(rng), t2 = space.random(rng);
      if (t1 == t2) continue;
      ++v.cases;
      if (lifting_signature(liftings, ctx, t1, preds) == lifting_signature(liftings, ctx, t2, preds)) fail(t1, t2);
    }
    v.notes.push_back("pairs sampled");
  }
  if (ctx.kind == FunctorKind::DoublePowerset)
    v.notes.push_back("finite carrier: every set of neighbourhoods is finite, so the finite-powerset variant coincides");
  if (v.ok()) v.status = VerdictStatus::HoldsUpToBound;
  v.seconds = clock.seconds();
  return v;
}

namespace detail {

// Replay of the counterexamples emitted above.
bool replay_structural(const json& cex) {
  const std::string check = cex.at("check");
  auto alg = cex.at("algebra").is_string() ? load_algebra(cex.at("algebra").get<std::string>())
                                           : std::make_shared<const Algebra>(algebra_from_json(cex.at("algebra")));
  auto truth = cex.at("truth").is_string() ? load_algebra(cex.at("truth").get<std::string>())
                                           : std::make_shared<const Algebra>(algebra_from_json(cex.at("truth")));
  if (check == "separation") {
    std::vector<LiftingSpec> ls;
    for (const auto& l : cex.at("liftings")) ls.push_back(lifting_from_json(l));
    Context ctx{kind_from_name(cex.at("kind")), cex.at("n"), truth.get(), alg.get()};
    const FunctorSpace space = ctx.space();
    std::vector<Predicate> preds;
    for (std::uint64_t i = 0; i < predicate_count(truth->size(), ctx.n); ++i)
      preds.push_back(predicate_decode(i, truth->size(), ctx.n));
    FValue t1 = fvalue_from_json(space, cex.at("t1")), t2 = fvalue_from_json(space, cex.at("t2"));
    return t1 != t2 && lifting_signature(ls, ctx, t1, preds) == lifting_signature(ls, ctx, t2, preds);
  }
  // safety
  const int n = cex.at("n"), n2 = cex.at("n_target"), x = cex.at("state");
  const StateMap f = cex.at("f").get<StateMap>();
  bool valid = n >= 1 && n2 >= 1 && x >= 0 && x < n && static_cast<int>(f.size()) == n;
  for (int y : f) valid = valid && y >= 0 && y < n2;
  if (!valid) throw Error(ErrorCode::InvalidInput, "counterexample state map or state out of range");
  if (cex.contains("op")) {
    const json& o = cex.at("op");
    OperationSpec op{o.at("id"), o.at("arity"), kind_from_name(o.at("kind")), op_variant_from_name(o.at("variant"))};
    Context cx{op.kind, n, truth.get(), alg.get()}, cy = cx.with_n(n2);
    std::vector<Coalgebra> gx, gy;
    for (const auto& g : cex.at("gammas")) gx.push_back(coalgebra_from_json(cx.space(), g));
    for (const auto& g : cex.at("gammas_target")) gy.push_back(coalgebra_from_json(cy.space(), g));
    if (static_cast<int>(gx.size()) != op.arity || gy.size() != gx.size())
      throw Error(ErrorCode::InvalidInput, "counterexample has the wrong number of coalgebras");
    for (std::size_t i = 0; i < gx.size(); ++i)
      if (!is_morphism(f, gx[i], gy[i], cx.space(), cy.space())) return false;
    Coalgebra ox = apply_op(op, gx, cx), oy = apply_op(op, gy, cy);
    return cx.space().image(f, cy.space(), ox[x]) != oy[f[x]];
  }
  const json& tj = cex.at("test");
  TestSpec t{tj.at("id"), kind_from_name(tj.at("kind")), test_variant_from_name(tj.at("variant")), {}};
  t.P.assign(truth->size(), false);
  for (int e : tj.at("P")) t.P[e] = true;
  Context cx{t.kind, n, truth.get(), alg.get()}, cy = cx.with_n(n2);
  std::vector<int> s2 = cex.at("sigma_target");
  Predicate sigma2(s2.begin(), s2.end()), sigma(n);
  for (int s = 0; s < n; ++s) sigma[s] = sigma2[f[s]];
  Coalgebra tx = apply_test(t, sigma, cx), ty = apply_test(t, sigma2, cy);
  return cx.space().image(f, cy.space(), tx[x]) != ty[f[x]];
}

}  // namespace detail

}  // namespace mvdl
