// Thin JSON-string bindings; python/mvdl/__init__.py decodes the results.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"
#include "mvdl/error.hpp"
#include "mvdl/harness.hpp"
#include "mvdl/io.hpp"
#include "mvdl/presets.hpp"
#include "mvdl/reduction.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace mvdl;

namespace {

std::shared_ptr<const LogicConfig> logic_for(const std::string& preset, const std::string& algebra, int max_k) {
  return make_preset(preset, load_algebra(algebra), PresetOptions{max_k});
}

Bounds bounds_from(int max_n, const std::string& mode, std::uint64_t trials, std::uint64_t seed) {
  Bounds b;
  b.max_n = max_n;
  b.max_n_target = max_n;
  b.mode = mode_from_name(mode);
  b.trials = trials;
  b.seed = seed;
  return b;
}

std::string validate_algebra(const std::string& algebra) {
  auto alg = load_algebra(algebra);
  LawReport rep = validate_flew(*alg);
  json laws = json::array();
  for (const auto& l : rep.laws) {
    json j = {{"family", l.family}, {"law", l.law}, {"pass", l.pass}};
    if (!l.pass) j["witness"] = l.witness;
    laws.push_back(j);
  }
  return json{{"algebra", alg->name()}, {"ok", rep.ok()}, {"laws", laws}}.dump();
}

bool semiprimal(const std::string& algebra) { return is_semiprimal(*load_algebra(algebra)); }

std::string evaluate(const std::string& model_json, const std::string& formula) {
  Model m = model_from_json(json::parse(model_json));
  Predicate p = eval(m, *parse_formula(formula, m.logic->signature()));
  json out = json::array();
  for (Elem e : p) out.push_back(m.logic->truth->label(e));
  return out.dump();
}

std::string reduce(const std::string& formula, const std::string& preset, const std::string& algebra, int max_k) {
  auto logic = logic_for(preset, algebra, max_k);
  auto reg = builtin_rules(logic);
  return render(*reduce_full(parse_formula(formula, logic->signature()), reg));
}

std::string rules(const std::string& preset, const std::string& algebra, int max_k) {
  return builtin_rules(logic_for(preset, algebra, max_k)).to_json().dump();
}

std::string verify_rules(const std::string& preset, const std::string& algebra, int max_k, int max_n,
                         const std::string& mode, std::uint64_t trials, std::uint64_t seed) {
  auto logic = logic_for(preset, algebra, max_k);
  auto reg = builtin_rules(logic);
  const Bounds b = bounds_from(max_n, mode, trials, seed);
  json out = json::array();
  for (const auto& [key, rule] : reg.rules()) {
    json j = verify_reduction_rule(rule, *logic, b).to_json();
    j["rule"] = rule.to_json();
    out.push_back(j);
  }
  return out.dump();
}

std::string entail(const std::vector<std::string>& gamma, const std::string& phi, const std::string& preset,
                   const std::string& algebra, int max_n, const std::string& mode, std::uint64_t trials,
                   std::uint64_t seed) {
  auto logic = logic_for(preset, algebra, 2);
  const Signature sig = logic->signature();
  std::vector<FormulaPtr> g;
  for (const auto& s : gamma) g.push_back(parse_formula(s, sig));
  return bounded_entailment(g, parse_formula(phi, sig), logic, bounds_from(max_n, mode, trials, seed))
      .to_json()
      .dump();
}

bool replay(const std::string& cex) { return replay_counterexample(json::parse(cex)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Many-valued coalgebraic dynamic logic workbench";
  m.attr("__version__") = MVDL_VERSION;

  static py::exception<Error> error(m, "MvdlError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    } catch (const json::exception& e) {
      py::set_error(error, (std::string("invalid-input: ") + e.what()).c_str());
    }
  });

  m.def("validate_algebra", &validate_algebra, py::arg("algebra"));
  m.def("is_semiprimal", &semiprimal, py::arg("algebra"));
  m.def("evaluate", &evaluate, py::arg("model_json"), py::arg("formula"));
  m.def("reduce", &reduce, py::arg("formula"), py::arg("preset"), py::arg("algebra") = "L2", py::arg("max_k") = 2);
  m.def("rules", &rules, py::arg("preset"), py::arg("algebra") = "L2", py::arg("max_k") = 2);
  m.def("verify_rules", &verify_rules, py::arg("preset"), py::arg("algebra") = "L2", py::arg("max_k") = 2,
        py::arg("max_n") = 2, py::arg("mode") = "exhaustive", py::arg("trials") = 10000,
        py::arg("seed") = kDefaultSeed);
  m.def("entail", &entail, py::arg("gamma"), py::arg("phi"), py::arg("preset"), py::arg("algebra") = "B2",
        py::arg("max_n") = 2, py::arg("mode") = "exhaustive", py::arg("trials") = 10000,
        py::arg("seed") = kDefaultSeed);
  m.def("replay_counterexample", &replay, py::arg("counterexample_json"));
}
