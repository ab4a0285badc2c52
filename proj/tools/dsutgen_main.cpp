// dsutgen command line tool.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 syntax or shape error in an
// input file, 3 model or requirement validation error, 4 coverage criterion
// violation.  Reports go to stdout, diagnostics to stderr; a criterion
// violation still prints the full report before exiting.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dsutgen/bounds.hpp"
#include "dsutgen/facts.hpp"
#include "dsutgen/generate.hpp"
#include "dsutgen/model.hpp"
#include "dsutgen/report.hpp"
#include "dsutgen/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitCriterion = 4;

#ifndef DSUTGEN_VERSION
#define DSUTGEN_VERSION "0.0.0"
#endif

struct LoadedInput {
  dsutgen::FactSet facts;
  std::optional<dsutgen::SystemModel> model;  // engaged after load_inputs succeeds
  std::vector<dsutgen::Requirement> requirements;
};

int load_inputs(const std::vector<std::string>& files, LoadedInput& out) {
  dsutgen::FactSet merged;
  for (const std::string& file : files) {
    std::ifstream in(file);
    if (!in) {
      std::cerr << "error: cannot open " << file << "\n";
      return kExitUsage;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    dsutgen::ParseResult parsed = dsutgen::parse_facts(buffer.str());
    if (!parsed.ok()) {
      for (const dsutgen::ParseError& e : parsed.errors) {
        std::cerr << file << ":" << e.pos.line << ":" << e.pos.column << ": " << e.message << "\n";
      }
      return kExitParse;
    }
    auto append = [](auto& dst, const auto& src) { dst.insert(dst.end(), src.begin(), src.end()); };
    append(merged.objects, parsed.facts.objects);
    append(merged.connections, parsed.facts.connections);
    append(merged.maps, parsed.facts.maps);
    append(merged.requirements, parsed.facts.requirements);
  }

  auto built = dsutgen::SystemModel::build(merged);
  if (!built.model) {
    for (const dsutgen::BuildError& e : built.errors) {
      std::cerr << "error " << to_string(e.code) << " line " << e.pos.line << ": " << e.detail
                << "\n";
    }
    return kExitValidation;
  }
  out.facts = std::move(merged);
  out.model = std::move(*built.model);
  out.requirements = dsutgen::collect_requirements(out.facts);
  return kExitOk;
}

std::vector<dsutgen::Diagnostic> run_validation(const LoadedInput& input) {
  std::vector<dsutgen::Diagnostic> diagnostics = dsutgen::validate_model(*input.model);
  std::vector<dsutgen::Diagnostic> more =
      dsutgen::validate_requirements(*input.model, input.facts.requirements);
  diagnostics.insert(diagnostics.end(), more.begin(), more.end());
  more = dsutgen::lint_phantom_risk(*input.model);
  diagnostics.insert(diagnostics.end(), more.begin(), more.end());
  return diagnostics;
}

void print_diagnostics(const std::vector<dsutgen::Diagnostic>& diagnostics) {
  for (const dsutgen::Diagnostic& d : diagnostics) {
    std::cerr << dsutgen::format_diagnostic(d) << "\n";
  }
}

std::vector<dsutgen::Obligation> expand_all(const LoadedInput& input) {
  std::vector<dsutgen::Obligation> obligations;
  for (const dsutgen::Requirement& r : input.requirements) {
    if (r.layer < 1 || r.layer > dsutgen::kLayerCount) continue;
    if (auto ob = dsutgen::expand_requirement(*input.model, r)) {
      obligations.push_back(std::move(*ob));
    }
  }
  return obligations;
}

dsutgen::BoundInputs make_bound_inputs(const LoadedInput& input,
                                       const std::vector<dsutgen::Obligation>& obligations,
                                       bool worst_case) {
  dsutgen::BoundInputs inputs{};
  for (int n = 1; n <= dsutgen::kLayerCount; ++n) {
    inputs[n].components =
        static_cast<long long>(input.model->layer_view(n).components.size());
    inputs[n].communicating = static_cast<long long>(
        dsutgen::communicating_subgraph(*input.model, n, obligations, worst_case).size());
  }
  return inputs;
}

int cmd_validate(const std::vector<std::string>& files) {
  LoadedInput input;
  if (int rc = load_inputs(files, input); rc != kExitOk) return rc;

  std::vector<dsutgen::Diagnostic> diagnostics = run_validation(input);
  print_diagnostics(diagnostics);

  for (int n = dsutgen::kLayerCount; n >= 1; --n) {
    const dsutgen::LayerView& view = input.model->layer_view(n);
    std::cout << "layer " << n << " (" << dsutgen::layer_name(n) << "): "
              << view.components.size() << " components, " << view.connections.size()
              << " connections, " << view.projections.size() << " projections down\n";
  }
  std::cout << "requirements: " << input.facts.requirements.size() << "\n";
  return dsutgen::has_errors(diagnostics) ? kExitValidation : kExitOk;
}

int cmd_generate(const std::vector<std::string>& files, const dsutgen::StrategyConfig& config,
                 const std::string& format) {
  LoadedInput input;
  if (int rc = load_inputs(files, input); rc != kExitOk) return rc;

  std::vector<dsutgen::Diagnostic> diagnostics = run_validation(input);
  if (dsutgen::has_errors(diagnostics)) {
    print_diagnostics(diagnostics);
    return kExitValidation;
  }

  dsutgen::StrategyReport report =
      dsutgen::run_strategy(*input.model, input.requirements, config);

  std::vector<dsutgen::Obligation> obligations = expand_all(input);
  dsutgen::BoundInputs inputs = make_bound_inputs(input, obligations, false);
  std::vector<dsutgen::Diagnostic> bound_warnings =
      dsutgen::check_against_generation(report, inputs);

  print_diagnostics(diagnostics);
  for (int n = dsutgen::kLayerCount; n >= 1; --n) {
    print_diagnostics(report.layers[n].diagnostics);
  }
  print_diagnostics(bound_warnings);

  if (format == "json") {
    std::cout << dsutgen::render_json(report, config, DSUTGEN_VERSION);
  } else {
    std::cout << dsutgen::render_table(report);
  }
  return dsutgen::has_criterion_violation(report) ? kExitCriterion : kExitOk;
}

int cmd_estimate(const std::vector<std::string>& files, const std::string& mode, int redundancy,
                 bool worst_case, const std::string& format) {
  LoadedInput input;
  if (int rc = load_inputs(files, input); rc != kExitOk) return rc;

  // The requirements file is optional here; when it is absent only the model
  // itself is validated and the bounds fall back to the worst case.
  std::vector<dsutgen::Diagnostic> diagnostics = dsutgen::validate_model(*input.model);
  if (!input.facts.requirements.empty()) {
    std::vector<dsutgen::Diagnostic> more =
        dsutgen::validate_requirements(*input.model, input.facts.requirements);
    diagnostics.insert(diagnostics.end(), more.begin(), more.end());
  }
  std::vector<dsutgen::Diagnostic> lint = dsutgen::lint_phantom_risk(*input.model);
  diagnostics.insert(diagnostics.end(), lint.begin(), lint.end());
  print_diagnostics(diagnostics);
  if (dsutgen::has_errors(diagnostics)) return kExitValidation;

  bool effective_worst = worst_case || input.facts.requirements.empty();

  std::vector<dsutgen::Obligation> obligations = expand_all(input);
  dsutgen::BoundInputs inputs = make_bound_inputs(input, obligations, effective_worst);
  dsutgen::BoundsFragment fragment = mode == "complex"
                                         ? dsutgen::complex_bounds(inputs, redundancy)
                                         : dsutgen::simple_bounds(inputs);
  std::string label = "redundancy " + std::to_string(fragment.redundancy);

  if (format == "json") {
    nlohmann::ordered_json layers = nlohmann::ordered_json::array();
    for (int n = dsutgen::kLayerCount; n >= 1; --n) {
      layers.push_back(nlohmann::ordered_json{{"layer", n},
                                              {"components", inputs[n].components},
                                              {"communicating", inputs[n].communicating},
                                              {"distributed_bound", fragment.dist_bound[n]}});
    }
    nlohmann::ordered_json doc{{"layers", std::move(layers)},
                               {"component_templates", dsutgen::total_components(inputs)},
                               {"distributed_bound", fragment.dist_total},
                               {"total", fragment.grand_total},
                               {"redundancy", fragment.redundancy},
                               {"worst_case", effective_worst}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << dsutgen::render_bounds_table(inputs, fragment, label, effective_worst);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"test template generator for layered system models"};
  app.set_version_flag("--version", DSUTGEN_VERSION);
  app.require_subcommand(1);

  std::vector<std::string> files;
  dsutgen::StrategyConfig config;
  std::string mode = "full";
  std::string estimate_mode = "simple";
  std::string format = "table";
  int redundancy = 2;
  bool worst_case = false;
  bool no_edge_coverage = false;

  CLI::App* validate = app.add_subcommand("validate", "check model and requirement consistency");
  validate->add_option("files", files, "input fact files")->required()->expected(-1);

  CLI::App* generate = app.add_subcommand("generate", "generate test templates");
  generate->add_option("files", files, "input fact files")->required()->expected(-1);
  generate->add_option("--mode", mode, "coverage mode")
      ->check(CLI::IsMember({"full", "minimal"}))
      ->capture_default_str();
  generate->add_option("--max-path-len", config.limits.max_len, "path node limit, 0 disables")
      ->capture_default_str();
  generate
      ->add_option("--max-paths-per-pair", config.limits.max_paths,
                   "paths kept per endpoint pair, 0 disables")
      ->capture_default_str();
  generate->add_flag("--no-physical-edge-coverage", no_edge_coverage,
                     "keep full paths on the physical layer");
  generate->add_option("--threads", config.threads, "worker threads, 0 = all cores, 1 = serial")
      ->capture_default_str();
  generate->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();

  CLI::App* estimate = app.add_subcommand("estimate", "compute test count bounds");
  estimate->add_option("files", files, "input fact files")->required()->expected(-1);
  estimate->add_option("--mode", estimate_mode, "bound strategy")
      ->check(CLI::IsMember({"simple", "complex"}))
      ->capture_default_str();
  estimate->add_option("--redundancy", redundancy, "routes per pair for the complex strategy")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  estimate->add_flag("--worst-case", worst_case, "assume every component communicates");
  estimate->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  config.mode = mode == "minimal" ? dsutgen::CoverageMode::minimal : dsutgen::CoverageMode::full;
  config.physical_edge_coverage = !no_edge_coverage;

  try {
    if (validate->parsed()) return cmd_validate(files);
    if (generate->parsed()) return cmd_generate(files, config, format);
    return cmd_estimate(files, estimate_mode, redundancy, worst_case, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
