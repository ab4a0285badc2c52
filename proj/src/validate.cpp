#include "dsutgen/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dsutgen {
namespace {

Diagnostic make(Severity sev, std::string_view code, int layer, std::string subject,
                std::string message) {
  return Diagnostic{sev, std::string(code), layer, std::move(subject), std::move(message)};
}

/// Cut vertices of one layer graph, via articulation-point DFS.
std::vector<ComponentRef> cut_vertices(const SystemModel& model, int layer) {
  const LayerView view = model.layer_view(layer);
  const std::vector<ComponentRef>& nodes = view.components;

  std::map<ComponentRef, int> disc;
  std::map<ComponentRef, int> low;
  std::set<ComponentRef> cuts;
  int time = 0;

  struct Frame {
    ComponentRef node;
    ComponentRef parent;
    bool has_parent;
    std::size_t next_neighbor;
    int child_count;
  };

  for (const ComponentRef& root : nodes) {
    if (disc.contains(root)) continue;

    std::vector<Frame> stack;
    stack.push_back({root, {}, false, 0, 0});
    disc[root] = low[root] = ++time;

    while (!stack.empty()) {
      Frame& fr = stack.back();
      const auto& nbrs = model.neighbors(layer, fr.node);
      if (fr.next_neighbor < nbrs.size()) {
        const ComponentRef& nb = nbrs[fr.next_neighbor++];
        if (fr.has_parent && nb == fr.parent) continue;
        auto it = disc.find(nb);
        if (it != disc.end()) {
          low[fr.node] = std::min(low[fr.node], it->second);
        } else {
          ++fr.child_count;
          disc[nb] = low[nb] = ++time;
          stack.push_back({nb, fr.node, true, 0, 0});
        }
      } else {
        Frame done = fr;
        stack.pop_back();
        if (!stack.empty()) {
          Frame& up = stack.back();
          low[up.node] = std::min(low[up.node], low[done.node]);
          if (up.has_parent && low[done.node] >= disc[up.node]) cuts.insert(up.node);
        } else if (done.child_count > 1) {
          cuts.insert(done.node);  // DFS root with two or more subtrees
        }
      }
    }
  }
  return {cuts.begin(), cuts.end()};
}

}  // namespace

const char* to_string(Severity severity) {
  switch (severity) {
    case Severity::error: return "error";
    case Severity::warning: return "warning";
    case Severity::info: return "info";
  }
  return "?";
}

std::vector<Diagnostic> validate_model(const SystemModel& model) {
  std::vector<Diagnostic> out;

  for (int n = kLayerCount; n >= 1; --n) {
    if (model.layer_view(n).components.empty()) {
      out.push_back(make(Severity::error, diag::kEmptyLayer, n, layer_name(n),
                         "layer has no components"));
    }
  }
  for (const Component& c : model.components()) {
    if (c.layer >= 2 && model.lower_images(c.layer, c.ref).empty()) {
      out.push_back(make(Severity::error, diag::kNoProjection, c.layer, to_string(c.ref),
                         "component has no projection onto the layer below"));
    }
  }
  for (const Component& c : model.components()) {
    // Layers 1 and 3 hold concrete equipment and software; a missing type
    // label there leaves nothing to put on a test order.
    if ((c.layer == kPhysicalLayer || c.layer == kSystemLayer) && !c.type_label) {
      out.push_back(make(Severity::warning, diag::kUntypedConcrete, c.layer, to_string(c.ref),
                         "concrete component has no type label"));
    }
  }
  for (const Component& c : model.components()) {
    if (c.layer < kLayerCount && model.upper_images(c.layer, c.ref).empty()) {
      out.push_back(make(Severity::info, diag::kNoUpwardImage, c.layer, to_string(c.ref),
                         "no upper-layer component projects onto this component"));
    }
  }
  return out;
}

std::vector<Diagnostic> validate_requirements(const SystemModel& model,
                                              std::span<const RequirementFact> requirements) {
  std::vector<Diagnostic> out;

  auto class_exists = [&](int layer, const std::string& cls) {
    for (const Component& c : model.components()) {
      if (c.layer == layer && c.ref.class_name == cls) return true;
    }
    return false;
  };

  int ordinal = 0;
  for (const RequirementFact& r : requirements) {
    ++ordinal;
    std::string rid = "r" + std::to_string(ordinal);
    if (r.layer < 1 || r.layer > kLayerCount) {
      out.push_back(make(Severity::error, diag::kBadReqLayer, r.layer, rid,
                         "requirement layer " + std::to_string(r.layer) + " is outside 1..4"));
      continue;
    }
    for (const ComponentPattern* p : {&r.source, &r.target}) {
      if (p->kind != ComponentPattern::Kind::any && !class_exists(r.layer, p->class_name)) {
        out.push_back(make(Severity::error, diag::kUnknownClass, r.layer,
                           rid + " " + to_string(*p),
                           "class '" + p->class_name + "' does not exist on layer " +
                               std::to_string(r.layer)));
      }
    }
  }

  bool top_level = std::any_of(requirements.begin(), requirements.end(), [](const RequirementFact& r) {
    return r.layer == kFunctionalLayer &&
           (r.source.kind != ComponentPattern::Kind::any ||
            r.target.kind != ComponentPattern::Kind::any);
  });
  if (!top_level) {
    out.push_back(make(Severity::error, diag::kNoTopLevelRequirement, kFunctionalLayer,
                       layer_name(kFunctionalLayer),
                       "no functional-layer requirement names a component or class"));
  }
  return out;
}

std::vector<Diagnostic> lint_phantom_risk(const SystemModel& model) {
  std::vector<Diagnostic> out;
  for (int n = 2; n <= kLayerCount; ++n) {
    for (const ComponentRef& ref : cut_vertices(model, n)) {
      out.push_back(make(Severity::info, diag::kPhantomRisk, n, to_string(ref),
                         "every route between some components passes through this one; "
                         "a stray connection here can create phantom paths"));
    }
  }
  return out;
}

bool has_errors(std::span<const Diagnostic> diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::string format_diagnostic(const Diagnostic& d) {
  return std::string(to_string(d.severity)) + " " + d.code + " layer=" + std::to_string(d.layer) +
         " " + d.subject + " " + d.message;
}

}  // namespace dsutgen
