#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ctxsim/json_io.hpp"

namespace py = pybind11;
using namespace ctxsim;

namespace {

// The module speaks JSON strings at the boundary: every artifact format is
// already pinned there, and exact rationals survive as "p/q" literals.
EmpiricalModel model_of(const std::string& text) {
  return model_from_json(parse_json_text(text, "model"));
}

std::string analyze_json(const std::string& model, const std::vector<std::string>& checks) {
  return report_to_json(analyze(model_of(model), {checks.begin(), checks.end()})).dump(2);
}

std::string pushforward_json(const std::string& morphism, const std::string& model) {
  Morphism m = morphism_from_json(parse_json_text(morphism, "morphism"));
  return model_to_json(pushforward(m, model_of(model))).dump(2);
}

py::tuple is_simulation_json(const std::string& morphism, const std::string& source,
                             const std::string& target) {
  Morphism m = morphism_from_json(parse_json_text(morphism, "morphism"));
  auto check = is_simulation(m, model_of(source), model_of(target));
  py::object witness = py::none();
  if (check.witness_context) witness = py::cast(face_to_json(*check.witness_context).dump());
  return py::make_tuple(check.ok, witness);
}

std::string simulation_exists_json(const std::string& source, const std::string& target,
                                   std::optional<double> max_seconds) {
  SearchBudget budget;
  budget.max_seconds = max_seconds;
  auto result = simulation_exists(model_of(source), model_of(target), budget);
  Json out = Json::object();
  if (result.status == SimSearchResult::Status::budget_exceeded) {
    out["status"] = "budget_exceeded";
  } else {
    out["exists"] = result.status == SimSearchResult::Status::found;
    if (result.witness) out["witness"] = morphism_to_json(result.witness->morphism);
  }
  out["relations_examined"] = result.relations_examined;
  return out.dump(2);
}

std::vector<std::string> validate_json(const std::string& artifact) {
  std::vector<std::string> out;
  for (const auto& issue : validate_artifact_json(parse_json_text(artifact, "artifact")))
    out.push_back(std::string(errc_name(issue.code)) + ": " + issue.message);
  return out;
}

std::string graham_step_json(const std::string& model, const std::string& vertex,
                             std::optional<std::string> fallback) {
  Simulation sim = graham_simulation(model_of(model), vertex, fallback);
  return simulation_to_json(sim).dump(2);
}

std::string acyclicity_json(const std::string& model) {
  auto e = model_of(model);
  auto result = is_acyclic(e.scenario());
  Json out = Json::object();
  out["acyclic"] = result.acyclic;
  out["order"] = result.order;
  Json reducible = Json::array();
  for (const auto& m : graham_reducible_vertices(e.scenario())) reducible.push_back(m);
  out["reducible"] = reducible;
  return out.dump(2);
}

}  // namespace

PYBIND11_MODULE(ctxsim, m) {
  m.doc() =
      "Exact calculus of empirical models and simulations: no-signalling models "
      "over semifields, stochastic morphisms, and LP-based contextuality "
      "analyses. All functions exchange the library's JSON formats as strings.";

  py::register_exception<Error>(m, "CtxsimError");

  m.def("zoo_names", &zoo_names, "names of the canonical models");
  m.def("zoo", [](const std::string& name) { return model_to_json(zoo_get(name)).dump(2); },
        py::arg("name"), "canonical model as JSON");
  m.def("analyze", &analyze_json, py::arg("model"),
        py::arg("checks") = std::vector<std::string>{"nc", "ncf", "sc", "lc"},
        "contextuality report; checks drawn from nc, ncf, sc, lc");
  m.def("ncf", [](const std::string& model) { return rational_to_string(ncf(model_of(model)).ncf); },
        py::arg("model"), "non-contextual fraction as an exact rational literal");
  m.def("validate", &validate_json, py::arg("artifact"),
        "issues found in a scenario/model/morphism JSON document (empty = valid)");
  m.def("pushforward", &pushforward_json, py::arg("morphism"), py::arg("model"));
  m.def("is_simulation", &is_simulation_json, py::arg("morphism"), py::arg("source"),
        py::arg("target"), "(ok, witness_context or None)");
  m.def("simulation_exists", &simulation_exists_json, py::arg("source"), py::arg("target"),
        py::arg("max_seconds") = std::nullopt);
  m.def("tensor", [](const std::string& a, const std::string& b) {
          return model_to_json(tensor_models(model_of(a), model_of(b))).dump(2);
        },
        py::arg("left"), py::arg("right"));
  m.def("restrict", [](const std::string& model, const std::vector<std::string>& keep) {
          return model_to_json(restrict_model(model_of(model), Face(keep.begin(), keep.end())))
              .dump(2);
        },
        py::arg("model"), py::arg("keep"));
  m.def("mix", [](const std::string& a, const std::string& wa, const std::string& b,
                  const std::string& wb) {
          EmpiricalModel left = model_of(a);
          return model_to_json(
                     mix_models({{Value::rational(left.tag(), rational_from_string(wa)), left},
                                 {Value::rational(left.tag(), rational_from_string(wb)),
                                  model_of(b)}}))
              .dump(2);
        },
        py::arg("left"), py::arg("left_weight"), py::arg("right"), py::arg("right_weight"));
  m.def("collapse", [](const std::string& model) {
          return model_to_json(collapse_model(model_of(model), Hom::collapse_to_boolean()))
              .dump(2);
        },
        py::arg("model"), "possibilistic collapse to the boolean semifield");
  m.def("coarse_grain", [](const std::string& model, const OutcomeMaps& maps) {
          return model_to_json(coarse_grain(model_of(model), maps)).dump(2);
        },
        py::arg("model"), py::arg("maps"));
  m.def("graham_step", &graham_step_json, py::arg("model"), py::arg("vertex"),
        py::arg("fallback") = std::nullopt,
        "one Graham reduction step as a verified simulation (JSON)");
  m.def("acyclicity", &acyclicity_json, py::arg("model"),
        "Graham reducibility report for the model's scenario");
}
