#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ctxsim/json_io.hpp"

using namespace ctxsim;

namespace {

int exit_class(Errc code) {
  switch (code) {
    case Errc::parse_error:
    case Errc::io_error:
      return 1;
    default:
      return 2;
  }
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path);
}

void emit(const Json& out, const std::string& to, bool pretty) {
  std::string text = out.dump(2);
  if (to.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream file(to);
    if (!file) fail(Errc::io_error, "cannot write '" + to + "'");
    file << text << "\n";
  }
  if (pretty) {
    for (const auto& [key, value] : out.items())
      if (value.is_primitive()) std::cerr << key << ": " << value.dump() << "\n";
  }
}

std::set<std::string> split_checks(const std::string& csv) {
  std::set<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(item);
  return out;
}

Face split_face(const std::string& csv) {
  Face out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(item);
  return out;
}

std::optional<double> default_budget_seconds() {
  if (const char* env = std::getenv("CONTEXTUALITY_MAX_SECONDS"))
    return std::strtod(env, nullptr);
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact contextuality calculus: empirical models, simulations, LP analyses"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  bool pretty = false;
  app.add_option("-o,--output", out_path, "write JSON here instead of stdout");
  app.add_flag("--pretty", pretty, "echo a human-readable summary to stderr");

  std::string model_path, second_path, morphism_path, verify_path, checks_csv, keep_csv,
      map_path, weights_csv, delete_vertex, fallback_outcome, zoo_name;
  double max_seconds = -1;
  bool list_zoo = false;

  auto* validate_cmd = app.add_subcommand("validate", "validate a scenario/model/morphism file");
  validate_cmd->add_option("artifact", model_path)->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "contextuality report for a model");
  analyze_cmd->add_option("model", model_path)->required();
  analyze_cmd->add_option("--checks", checks_csv, "subset of nc,ncf,sc,lc");

  auto* push_cmd = app.add_subcommand("push", "push a model forward along a morphism");
  push_cmd->add_option("morphism", morphism_path)->required();
  push_cmd->add_option("model", model_path)->required();
  push_cmd->add_option("--verify", verify_path, "check the result against this model");

  auto* sim_cmd = app.add_subcommand("simexists", "search for a simulation between two models");
  sim_cmd->add_option("from", model_path)->required();
  sim_cmd->add_option("to", second_path)->required();
  sim_cmd->add_option("--max-seconds", max_seconds);

  auto* graham_cmd = app.add_subcommand("graham", "Graham reduction info or one reduction step");
  graham_cmd->add_option("model", model_path)->required();
  graham_cmd->add_option("--delete", delete_vertex, "reducible measurement to delete");
  graham_cmd->add_option("--fallback", fallback_outcome, "outcome used outside the support");

  auto* tensor_cmd = app.add_subcommand("tensor", "parallel composition of two models");
  tensor_cmd->add_option("left", model_path)->required();
  tensor_cmd->add_option("right", second_path)->required();

  auto* restrict_cmd = app.add_subcommand("restrict", "restrict a model to a measurement subset");
  restrict_cmd->add_option("model", model_path)->required();
  restrict_cmd->add_option("--keep", keep_csv, "comma-separated measurements (empty for none)");

  auto* coarse_cmd = app.add_subcommand("coarse-grain", "push outcomes through relabeling maps");
  coarse_cmd->add_option("model", model_path)->required();
  coarse_cmd->add_option("--map", map_path, "JSON file {measurement: {outcome: new}}")->required();

  auto* mix_cmd = app.add_subcommand("mix", "convex mixture of models on one scenario");
  mix_cmd->add_option("left", model_path)->required();
  mix_cmd->add_option("right", second_path)->required();
  mix_cmd->add_option("--weights", weights_csv, "comma-separated rationals summing to 1")
      ->required();

  auto* collapse_cmd = app.add_subcommand("collapse", "possibilistic collapse of a model");
  collapse_cmd->add_option("model", model_path)->required();

  auto* zoo_cmd = app.add_subcommand("zoo", "canonical models");
  zoo_cmd->add_option("name", zoo_name);
  zoo_cmd->add_flag("--list", list_zoo);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate_cmd) {
      auto issues = validate_artifact_json(read_json(model_path));
      Json out = Json::object();
      out["valid"] = issues.empty();
      Json list = Json::array();
      for (const auto& issue : issues)
        list.push_back(Json{{"code", errc_name(issue.code)}, {"message", issue.message}});
      out["issues"] = list;
      emit(out, out_path, pretty);
      return issues.empty() ? 0 : 2;
    }
    if (*analyze_cmd) {
      EmpiricalModel e = load_model(model_path);
      std::set<std::string> checks = split_checks(checks_csv);
      if (checks.empty()) {
        checks = {"nc", "sc"};
        if (e.tag() == Semifield::nonneg_rational) {
          checks.insert("ncf");
          checks.insert("lc");
        }
      }
      emit(report_to_json(analyze(e, checks)), out_path, pretty);
      return 0;
    }
    if (*push_cmd) {
      Morphism m = morphism_from_json(read_json(morphism_path));
      EmpiricalModel d = load_model(model_path);
      EmpiricalModel pushed = pushforward(m, d);
      if (!verify_path.empty()) {
        EmpiricalModel expected = load_model(verify_path);
        auto check = is_simulation(m, d, expected);
        Json out = model_to_json(pushed);
        out["verified"] = check.ok;
        if (!check.ok) out["witness_context"] = face_to_json(*check.witness_context);
        emit(out, out_path, pretty);
        return check.ok ? 0 : 3;
      }
      emit(model_to_json(pushed), out_path, pretty);
      return 0;
    }
    if (*sim_cmd) {
      EmpiricalModel d = load_model(model_path);
      EmpiricalModel e = load_model(second_path);
      SearchBudget budget;
      budget.max_seconds = max_seconds >= 0 ? std::optional<double>(max_seconds)
                                            : default_budget_seconds();
      auto result = simulation_exists(d, e, budget);
      Json out = Json::object();
      if (result.status == SimSearchResult::Status::budget_exceeded) {
        out["status"] = "budget_exceeded";
        out["relations_examined"] = result.relations_examined;
      } else {
        out["exists"] = result.status == SimSearchResult::Status::found;
        out["relations_examined"] = result.relations_examined;
        if (result.witness) out["witness"] = morphism_to_json(result.witness->morphism);
      }
      emit(out, out_path, pretty);
      return 0;
    }
    if (*graham_cmd) {
      EmpiricalModel e = load_model(model_path);
      if (delete_vertex.empty()) {
        auto acyclic = is_acyclic(e.scenario());
        Json out = Json::object();
        out["acyclic"] = acyclic.acyclic;
        out["order"] = acyclic.order;
        Json reducible = Json::array();
        for (const auto& m : graham_reducible_vertices(e.scenario())) reducible.push_back(m);
        out["reducible"] = reducible;
        emit(out, out_path, pretty);
        return 0;
      }
      std::optional<std::string> fallback;
      if (!fallback_outcome.empty()) fallback = fallback_outcome;
      Simulation sim = graham_simulation(e, delete_vertex, fallback);
      emit(simulation_to_json(sim), out_path, pretty);
      return 0;
    }
    if (*tensor_cmd) {
      emit(model_to_json(tensor_models(load_model(model_path), load_model(second_path))),
           out_path, pretty);
      return 0;
    }
    if (*restrict_cmd) {
      emit(model_to_json(restrict_model(load_model(model_path), split_face(keep_csv))), out_path,
           pretty);
      return 0;
    }
    if (*coarse_cmd) {
      EmpiricalModel e = load_model(model_path);
      OutcomeMaps maps;
      for (const auto& [m, table] : read_json(map_path).items())
        for (const auto& [from, to] : table.items()) maps[m][from] = to.get<std::string>();
      emit(model_to_json(coarse_grain(e, maps)), out_path, pretty);
      return 0;
    }
    if (*mix_cmd) {
      EmpiricalModel left = load_model(model_path);
      EmpiricalModel right = load_model(second_path);
      std::vector<std::string> parts;
      std::stringstream ss(weights_csv);
      std::string item;
      while (std::getline(ss, item, ',')) parts.push_back(item);
      if (parts.size() != 2) fail(Errc::parse_error, "--weights needs exactly two rationals");
      auto mixed = mix_models(
          {{Value::rational(left.tag(), rational_from_string(parts[0])), left},
           {Value::rational(right.tag(), rational_from_string(parts[1])), right}});
      emit(model_to_json(mixed), out_path, pretty);
      return 0;
    }
    if (*collapse_cmd) {
      emit(model_to_json(collapse_model(load_model(model_path), Hom::collapse_to_boolean())),
           out_path, pretty);
      return 0;
    }
    if (*zoo_cmd) {
      if (list_zoo || zoo_name.empty()) {
        Json out = Json::object();
        out["models"] = zoo_names();
        emit(out, out_path, pretty);
        return 0;
      }
      emit(model_to_json(zoo_get(zoo_name)), out_path, pretty);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_class(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
