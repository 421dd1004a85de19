#include "mvdl/io.hpp"

#include <algorithm>
#include <fstream>

#include "mvdl/error.hpp"
#include "mvdl/presets.hpp"

namespace mvdl {

using nlohmann::json;

json algebra_to_json(const Algebra& alg) {
  json extras = json::object();
  for (const auto& [name, op] : alg.extras()) {
    if (op.arity == 0)
      extras[name] = static_cast<int>(op.table[0]);
    else
      extras[name] = std::vector<int>(op.table.begin(), op.table.end());
  }
  return {{"name", alg.name()},
          {"m", alg.size()},
          {"meet", alg.meet_table().rows()},
          {"join", alg.join_table().rows()},
          {"tensor", alg.tensor_table().rows()},
          {"impl", alg.impl_table().rows()},
          {"labels", alg.labels()},
          {"extras", extras}};
}

Algebra algebra_from_json(const json& j) {
  try {
    const int m = j.at("m");
    auto table = [&](const char* key) {
      auto t = OpTable::from_rows(j.at(key).get<std::vector<std::vector<int>>>());
      if (t.size() != m) throw Error(ErrorCode::InvalidInput, std::string(key) + " table size differs from m");
      return t;
    };
    OpTable meet = table("meet"), join = table("join"), tensor = table("tensor");
    OpTable impl = j.contains("impl") ? table("impl") : derive_residuum(m, join, tensor);
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    std::map<std::string, ExtraOp> extras;
    if (j.contains("extras"))
      for (const auto& [name, v] : j.at("extras").items()) {
        if (v.is_number_integer())
          extras[name] = ExtraOp{0, {static_cast<Elem>(v.get<int>())}};
        else {
          ExtraOp op{1, {}};
          for (int x : v.get<std::vector<int>>()) {
            if (x < 0 || x >= m) throw Error(ErrorCode::InvalidInput, "extra '" + name + "' out of range");
            op.table.push_back(static_cast<Elem>(x));
          }
          extras[name] = op;
        }
      }
    return Algebra(j.value("name", std::string("custom")), meet, join, tensor, impl, labels, extras);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("algebra JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, "'" + path + "': " + e.what());
  }
}

std::shared_ptr<const Algebra> load_algebra(const std::string& name_or_path) {
  if (is_builtin_name(name_or_path)) return std::make_shared<const Algebra>(builtin_by_name(name_or_path));
  return std::make_shared<const Algebra>(algebra_from_json(read_json_file(name_or_path)));
}

json fvalue_to_json(const FunctorSpace& space, const FValue& t) {
  switch (space.kind()) {
    case FunctorKind::Powerset: {
      std::uint64_t mask = 0;
      for (int x = 0; x < space.n(); ++x)
        if (t[x]) mask |= std::uint64_t{1} << x;
      return mask;
    }
    case FunctorKind::DoublePowerset: {
      std::vector<std::uint64_t> members;
      for (std::size_t s = 0; s < t.size(); ++s)
        if (t[s]) members.push_back(s);
      return members;
    }
    default: return std::vector<int>(t.begin(), t.end());
  }
}

namespace {

// Elements may be given by index or by label.
Elem elem_from_json(const Algebra& alg, const json& v) {
  if (v.is_string()) {
    auto e = alg.find_label(v.get<std::string>());
    if (!e) throw Error(ErrorCode::InvalidInput, "unknown element '" + v.get<std::string>() + "' of " + alg.name());
    return *e;
  }
  const int i = v.get<int>();
  if (i < 0 || i >= alg.size()) throw Error(ErrorCode::InvalidInput, "element " + std::to_string(i) + " out of range");
  return static_cast<Elem>(i);
}

}  // namespace

FValue fvalue_from_json(const FunctorSpace& space, const json& j) {
  FValue t = space.bottom();
  try {
    switch (space.kind()) {
      case FunctorKind::Powerset: {
        std::uint64_t mask = j.get<std::uint64_t>();
        if (space.n() < 64 && (mask >> space.n()) != 0) throw Error(ErrorCode::InvalidInput, "bitmask out of range");
        for (int x = 0; x < space.n(); ++x) t[x] = mask >> x & 1u;
        break;
      }
      case FunctorKind::DoublePowerset:
        for (std::uint64_t s : j.get<std::vector<std::uint64_t>>()) {
          if (s >= t.size()) throw Error(ErrorCode::InvalidInput, "member bitmask out of range");
          t[s] = 1;
        }
        break;
      default: {
        if (!j.is_array() || j.size() != t.size())
          throw Error(ErrorCode::InvalidInput, "expected " + std::to_string(t.size()) + " entries");
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = elem_from_json(space.algebra(), j[i]);
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("F-value JSON: ") + e.what());
  }
  if (!space.is_valid(t)) throw Error(ErrorCode::InvalidInput, "invalid " + kind_name(space.kind()) + " value");
  return t;
}

json coalgebra_to_json(const FunctorSpace& space, const Coalgebra& g) {
  json out = json::array();
  for (const auto& t : g) out.push_back(fvalue_to_json(space, t));
  return out;
}

Coalgebra coalgebra_from_json(const FunctorSpace& space, const json& j) {
  Coalgebra g;
  for (const auto& t : j) g.push_back(fvalue_from_json(space, t));
  if (static_cast<int>(g.size()) != space.n())
    throw Error(ErrorCode::InvalidInput, "coalgebra must list one value per state");
  return g;
}

json model_to_json(const Model& model) {
  const LogicConfig& L = *model.logic;
  auto space = model.context().space();
  json atoms = json::object(), val = json::object();
  for (const auto& [name, g] : model.atoms) atoms[name] = coalgebra_to_json(space, g);
  for (const auto& [name, p] : model.valuation) val[name] = std::vector<int>(p.begin(), p.end());
  json alg = is_builtin_name(L.structure->name()) ? json(L.structure->name()) : algebra_to_json(*L.structure);
  return {{"n", model.n}, {"algebra", alg}, {"kind", kind_name(L.kind)}, {"preset", L.name},
          {"atoms", atoms}, {"valuation", val}};
}

Model model_from_json(const json& j) {
  try {
    Model model;
    model.n = j.at("n");
    if (model.n < 0) throw Error(ErrorCode::InvalidInput, "negative carrier size");
    const json& a = j.at("algebra");
    auto alg = a.is_string() ? load_algebra(a.get<std::string>())
                             : std::make_shared<const Algebra>(algebra_from_json(a));
    FunctorKind kind = kind_from_name(j.at("kind"));
    std::string preset = j.value("preset", default_preset(kind));
    model.logic = make_preset(preset, alg);
    if (model.logic->kind != kind)
      throw Error(ErrorCode::TagMismatch, "preset '" + preset + "' uses " + kind_name(model.logic->kind));
    auto space = model.context().space();
    if (j.contains("atoms"))
      for (const auto& [name, g] : j.at("atoms").items()) model.atoms[name] = coalgebra_from_json(space, g);
    if (j.contains("valuation"))
      for (const auto& [name, p] : j.at("valuation").items()) {
        Predicate pred;
        for (const auto& v : p) pred.push_back(elem_from_json(*model.logic->truth, v));
        model.valuation[name] = pred;
      }
    model.validate();
    return model;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("model JSON: ") + e.what());
  }
}

}  // namespace mvdl
