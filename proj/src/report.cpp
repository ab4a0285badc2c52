// Report rendering.
//
// The JSON form is built with ordered_json and fully derived data, so two
// runs over the same input produce the same bytes.  The table groups
// distributed templates by kind, class sequence and parameters; node indices
// that vary inside a group are shown as "_".

#include "dsutgen/report.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

namespace dsutgen {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(const char* format, long long value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

std::string group_key(const TestTemplate& t) {
  std::string key = std::to_string(static_cast<int>(t.kind));
  for (const ComponentRef& n : t.nodes) key += "|" + n.class_name;
  for (const std::string& p : t.params) key += "#" + std::to_string(p.size()) + ":" + p;
  return key;
}

std::string group_pattern(const std::vector<const TestTemplate*>& group) {
  const TestTemplate& first = *group.front();
  std::string out;
  for (std::size_t i = 0; i < first.nodes.size(); ++i) {
    bool uniform = true;
    for (const TestTemplate* t : group) {
      if (t->nodes[i].index != first.nodes[i].index) {
        uniform = false;
        break;
      }
    }
    if (i) out += " <-> ";
    out += "[" + first.nodes[i].class_name + ", ";
    out += uniform ? std::to_string(first.nodes[i].index) : std::string("_");
    out += "]";
  }
  if (!first.params.empty()) {
    out += " {";
    for (std::size_t i = 0; i < first.params.size(); ++i) {
      if (i) out += ", ";
      out += first.params[i];
    }
    out += "}";
  }
  return out;
}

void append_template_lines(std::ostringstream& os, const std::vector<TestTemplate>& templates) {
  std::map<std::string, std::vector<const TestTemplate*>> groups;
  for (const TestTemplate& t : templates) groups[group_key(t)].push_back(&t);
  for (const auto& [key, group] : groups) {
    os << fmt("  %5lld x ", static_cast<long long>(group.size())) << group_pattern(group) << "\n";
  }
}

ordered_json template_json(const TestTemplate& t) {
  ordered_json nodes = ordered_json::array();
  for (const ComponentRef& n : t.nodes) nodes.push_back(to_string(n));
  return ordered_json{{"id", t.id},
                      {"nodes", std::move(nodes)},
                      {"params", t.params},
                      {"origin", to_string(t.origin)}};
}

ordered_json diagnostic_json(const Diagnostic& d) {
  return ordered_json{{"severity", to_string(d.severity)},
                      {"code", d.code},
                      {"layer", d.layer},
                      {"subject", d.subject},
                      {"message", d.message}};
}

}  // namespace

std::string render_table(const StrategyReport& report) {
  std::ostringstream os;
  for (int n = kLayerCount; n >= 1; --n) {
    const LayerReport& layer = report.layers[n];
    os << "Layer " << n << " (" << layer_name(n) << ")\n";
    os << fmt("  Individual components %5lld\n",
              static_cast<long long>(layer.component_templates.size()));
    os << fmt("  Distributed aspect    %5lld\n", static_cast<long long>(layer.distributed.size()));
    os << fmt("  Trivially satisfied   %5lld\n",
              static_cast<long long>(layer.trivially_satisfied.size()));
    if (!layer.inventory.empty()) {
      os << "  Inventory\n";
      for (const std::string& label : layer.inventory) os << "    " << label << "\n";
    }
    if (!layer.distributed.empty()) {
      os << "  Distributed templates\n";
      append_template_lines(os, layer.distributed);
    }
    os << "\n";
  }
  os << "Total\n";
  os << fmt("  Individual components %5lld\n",
            static_cast<long long>(report.totals.component_templates));
  os << fmt("  Distributed aspect    %5lld\n",
            static_cast<long long>(report.totals.distributed_templates));
  os << fmt("  All templates         %5lld\n",
            static_cast<long long>(report.totals.component_templates +
                                   report.totals.distributed_templates));
  return os.str();
}

std::string render_json(const StrategyReport& report, const StrategyConfig& config,
                        std::string_view tool_version) {
  ordered_json layers = ordered_json::array();
  for (int n = kLayerCount; n >= 1; --n) {
    const LayerReport& layer = report.layers[n];
    ordered_json component_templates = ordered_json::array();
    for (const TestTemplate& t : layer.component_templates) {
      component_templates.push_back(template_json(t));
    }
    ordered_json distributed = ordered_json::array();
    for (const TestTemplate& t : layer.distributed) distributed.push_back(template_json(t));
    ordered_json trivially = ordered_json::array();
    for (const TrivialRecord& r : layer.trivially_satisfied) {
      trivially.push_back(ordered_json{{"node", to_string(r.node)}, {"origin", r.origin_template}});
    }
    ordered_json diagnostics = ordered_json::array();
    for (const Diagnostic& d : layer.diagnostics) diagnostics.push_back(diagnostic_json(d));
    layers.push_back(ordered_json{{"layer", n},
                                  {"component_templates", std::move(component_templates)},
                                  {"distributed_templates", std::move(distributed)},
                                  {"trivially_satisfied", std::move(trivially)},
                                  {"diagnostics", std::move(diagnostics)}});
  }

  ordered_json doc{
      {"layers", std::move(layers)},
      {"totals",
       ordered_json{{"component_templates", report.totals.component_templates},
                    {"distributed_templates", report.totals.distributed_templates},
                    {"total", report.totals.component_templates +
                                  report.totals.distributed_templates}}},
      {"config", ordered_json{{"mode", to_string(config.mode)},
                              {"max_path_len", config.limits.max_len},
                              {"max_paths_per_pair", config.limits.max_paths},
                              {"physical_edge_coverage", config.physical_edge_coverage}}},
      {"tool_version", std::string(tool_version)}};
  return doc.dump(2) + "\n";
}

std::string render_bounds_table(const BoundInputs& inputs, const BoundsFragment& fragment,
                                std::string_view label, bool worst_case) {
  std::ostringstream os;
  os << "Estimate, " << label << "\n";
  os << "  scope: " << (worst_case ? "worst case, every component communicating"
                                   : "declared requirements")
     << "\n";
  for (int n = kLayerCount; n >= 1; --n) {
    os << "  layer " << n << fmt("  components %5lld", inputs[n].components)
       << fmt("  communicating %5lld", inputs[n].communicating)
       << fmt("  distributed bound %7lld\n", fragment.dist_bound[n]);
  }
  os << fmt("  component templates %7lld\n", total_components(inputs));
  os << fmt("  distributed bound   %7lld\n", fragment.dist_total);
  os << fmt("  Total               %7lld\n", fragment.grand_total);
  return os.str();
}

}  // namespace dsutgen
