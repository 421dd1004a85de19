#include "harness_internal.hpp"
#include "mvdl/error.hpp"
#include "mvdl/presets.hpp"

namespace mvdl {

using nlohmann::json;

std::string onestep_kind_name(OneStepKind k) {
  switch (k) {
    case OneStepKind::LabelledDiamond: return "labelled-diamond";
    case OneStepKind::Threshold: return "threshold";
    case OneStepKind::MonotoneEval: return "monotone-eval";
  }
  return "?";
}

OneStepKind onestep_kind_from_name(const std::string& name) {
  if (name == "labelled-diamond") return OneStepKind::LabelledDiamond;
  if (name == "threshold") return OneStepKind::Threshold;
  if (name == "monotone-eval") return OneStepKind::MonotoneEval;
  throw Error(ErrorCode::UnsupportedKind, "no one-step recipe for '" + name + "'");
}

FunctorKind onestep_functor(OneStepKind k) {
  return k == OneStepKind::MonotoneEval ? FunctorKind::MonotoneANeighbourhood : FunctorKind::APowerset;
}

json RankOneAssignment::to_json() const {
  json t = json::object();
  for (const auto& [id, table] : tables) t[id] = std::vector<int>(table.begin(), table.end());
  return {{"n", n}, {"tables", t}};
}

RankOneAssignment RankOneAssignment::from_json(const json& j) {
  RankOneAssignment h;
  try {
    h.n = j.at("n");
    for (const auto& [id, t] : j.at("tables").items()) {
      std::vector<Elem> table;
      for (int e : t.get<std::vector<int>>()) {
        if (e < 0 || e > 255) throw Error(ErrorCode::InvalidInput, "table entry out of range");
        table.push_back(static_cast<Elem>(e));
      }
      h.tables[id] = std::move(table);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("rank-1 assignment JSON: ") + e.what());
  }
  return h;
}

json OneStepResult::to_json() const {
  json j = {{"satisfiable", satisfiable}};
  if (satisfiable)
    j["alpha"] = std::vector<int>(alpha.begin(), alpha.end());
  else {
    j["axiom"] = axiom;
    j["instance"] = instance;
  }
  return j;
}

namespace {

const Algebra& two() {
  static const Algebra b2 = build_builtin(BuiltinKind::Boolean, 1);
  return b2;
}

struct Setup {
  Context ctx;
  std::vector<LiftingSpec> liftings;
  std::vector<Predicate> preds;  // over the truth algebra
};

Setup setup(OneStepKind k, const Algebra& alg, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "carrier must be non-empty");
  Setup s{{onestep_functor(k), n, &alg, &alg}, {}, {}};
  switch (k) {
    case OneStepKind::LabelledDiamond:
      s.liftings.push_back({"dia", 1, FunctorKind::APowerset, LiftingVariant::DiamondLabelled, 0});
      break;
    case OneStepKind::MonotoneEval:
      s.liftings.push_back({"ev", 1, FunctorKind::MonotoneANeighbourhood, LiftingVariant::Eval, 0});
      break;
    case OneStepKind::Threshold:
      if (!alg.linear()) throw Error(ErrorCode::NonlinearAlgebra, "threshold recipe needs a chain");
      s.ctx.truth = &two();
      for (int r = 1; r < alg.size(); ++r)
        s.liftings.push_back({threshold_id(static_cast<Elem>(r)), 1, FunctorKind::APowerset, LiftingVariant::Threshold,
                              static_cast<Elem>(r)});
      break;
  }
  const int mt = s.ctx.truth->size();
  for (std::uint64_t i = 0; i < predicate_count(mt, n); ++i) s.preds.push_back(predicate_decode(i, mt, n));
  return s;
}

std::vector<int> as_ints(const Predicate& p) { return std::vector<int>(p.begin(), p.end()); }

OneStepResult violated(std::string axiom, json instance) {
  OneStepResult r;
  r.axiom = std::move(axiom);
  r.instance = std::move(instance);
  return r;
}

}  // namespace

RankOneAssignment induced_assignment(OneStepKind k, const Algebra& alg, int n, const FValue& alpha) {
  Setup s = setup(k, alg, n);
  if (!s.ctx.space().is_valid(alpha)) throw Error(ErrorCode::InvalidInput, "alpha is not a valid F-value");
  RankOneAssignment h;
  h.n = n;
  for (const auto& l : s.liftings) {
    auto& table = h.tables[l.id];
    for (const auto& p : s.preds) table.push_back(apply_lifting(l, std::span<const Predicate>(&p, 1), alpha, s.ctx));
  }
  return h;
}

OneStepResult one_step_witness(OneStepKind k, const Algebra& alg, const RankOneAssignment& h) {
  Setup s = setup(k, alg, h.n);
  const Algebra& T = *s.ctx.truth;
  const int mt = T.size(), n = h.n;
  for (const auto& l : s.liftings) {
    auto it = h.tables.find(l.id);
    if (it == h.tables.end()) throw Error(ErrorCode::InvalidInput, "assignment lacks lifting '" + l.id + "'");
    if (it->second.size() != s.preds.size())
      throw Error(ErrorCode::LengthMismatch, "table for '" + l.id + "' needs " + std::to_string(s.preds.size()) + " entries");
    for (Elem e : it->second)
      if (e >= mt) throw Error(ErrorCode::InvalidInput, "table for '" + l.id + "' leaves the algebra");
  }
  auto H = [&](const std::string& id, const Predicate& p) { return h.tables.at(id)[predicate_index(p, mt)]; };
  auto pointwise = [&](const Predicate& a, const Predicate& b, auto op) {
    Predicate out(n);
    for (int x = 0; x < n; ++x) out[x] = op(a[x], b[x]);
    return out;
  };
  auto point = [&](int x) {
    Predicate e(n, T.bot());
    e[x] = T.top();
    return e;
  };

  FValue alpha = s.ctx.space().bottom();
  switch (k) {
    case OneStepKind::LabelledDiamond: {
      for (const auto& p : s.preds)
        for (const auto& q : s.preds) {
          Predicate pq = pointwise(p, q, [&](Elem a, Elem b) { return T.join(a, b); });
          if (H("dia", pq) != T.join(H("dia", p), H("dia", q)))
            return violated("diamond-join", {{"sigma", as_ints(p)}, {"tau", as_ints(q)},
                                             {"lhs", H("dia", pq)}, {"rhs", T.join(H("dia", p), H("dia", q))}});
        }
      for (const auto& p : s.preds)
        for (int c = 0; c < mt; ++c) {
          Predicate pc = p;
          for (auto& e : pc) e = T.tensor(e, static_cast<Elem>(c));
          if (H("dia", pc) != T.tensor(H("dia", p), static_cast<Elem>(c)))
            return violated("diamond-constant", {{"sigma", as_ints(p)}, {"constant", c},
                                                 {"lhs", H("dia", pc)}, {"rhs", T.tensor(H("dia", p), static_cast<Elem>(c))}});
        }
      for (int x = 0; x < n; ++x) alpha[x] = H("dia", point(x));
      break;
    }
    case OneStepKind::Threshold: {
      const Predicate empty(n, T.bot());
      for (const auto& l : s.liftings)
        if (H(l.id, empty) != T.bot()) return violated("threshold-bottom", {{"lifting", l.id}});
      for (const auto& l : s.liftings)
        for (const auto& p : s.preds)
          for (const auto& q : s.preds) {
            Predicate pq = pointwise(p, q, [&](Elem a, Elem b) { return T.join(a, b); });
            if (H(l.id, pq) != T.join(H(l.id, p), H(l.id, q)))
              return violated("threshold-join", {{"lifting", l.id}, {"sigma", as_ints(p)}, {"tau", as_ints(q)}});
          }
      for (const auto& hi : s.liftings)
        for (const auto& lo : s.liftings) {
          if (!alg.leq(lo.threshold, hi.threshold)) continue;
          for (const auto& p : s.preds)
            if (H(hi.id, p) == T.top() && H(lo.id, p) != T.top())
              return violated("threshold-monotone", {{"higher", hi.id}, {"lower", lo.id}, {"sigma", as_ints(p)}});
        }
      for (int x = 0; x < n; ++x)
        for (const auto& l : s.liftings)
          if (H(l.id, point(x)) == T.top()) alpha[x] = alg.join(alpha[x], l.threshold);
      break;
    }
    case OneStepKind::MonotoneEval: {
      for (const auto& p : s.preds)
        for (const auto& q : s.preds) {
          bool below = true;
          for (int x = 0; x < n && below; ++x) below = T.leq(p[x], q[x]);
          if (below && !T.leq(H("ev", p), H("ev", q)))
            return violated("monotonicity", {{"sigma", as_ints(p)}, {"tau", as_ints(q)}});
        }
      alpha = h.tables.at("ev");
      break;
    }
  }
  if (!s.ctx.space().is_valid(alpha) || induced_assignment(k, alg, n, alpha).tables != h.tables)
    return violated("one-step", {{"alpha", std::vector<int>(alpha.begin(), alpha.end())}});
  OneStepResult r;
  r.satisfiable = true;
  r.alpha = std::move(alpha);
  return r;
}

}  // namespace mvdl
