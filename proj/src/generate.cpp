// Test template generation.
//
// Path enumeration walks the layer graph breadth-first over partial paths,
// completing one node count at a time, so results arrive shortest-first and
// the per-pair cap cuts a deterministic prefix.  Endpoint pairs are
// independent of each other; the strategy fans them out over OpenMP when
// available and merges results in task order, so thread count never changes
// the output.  `threads == 1` takes a plain serial loop instead, kept as the
// reference implementation for tests and benchmarks.

#include "dsutgen/generate.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dsutgen {
namespace {

std::string node_key(const ComponentRef& ref) {
  return ref.class_name + "/" + std::to_string(ref.index);
}

std::string join_nodes(const std::vector<ComponentRef>& nodes, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += sep;
    out += node_key(nodes[i]);
  }
  return out;
}

std::string template_id(const TestTemplate& t) {
  std::string prefix;
  switch (t.kind) {
    case TestTemplate::Kind::component: prefix = "c"; break;
    case TestTemplate::Kind::path: prefix = "p"; break;
    case TestTemplate::Kind::link: prefix = "k"; break;
  }
  std::string id = prefix + std::to_string(t.layer) + ":" +
                   join_nodes(t.nodes, t.kind == TestTemplate::Kind::link ? "--" : "-");
  if (!t.params.empty()) {
    id += "|";
    for (std::size_t i = 0; i < t.params.size(); ++i) {
      if (i) id += ";";
      id += t.params[i];
    }
  }
  return id;
}

void canonicalize(std::vector<ComponentRef>& nodes) {
  if (nodes.back() < nodes.front()) std::reverse(nodes.begin(), nodes.end());
}

bool reachable(const SystemModel& model, int layer, const ComponentRef& s, const ComponentRef& t) {
  std::set<ComponentRef> seen{s};
  std::deque<ComponentRef> queue{s};
  while (!queue.empty()) {
    ComponentRef cur = queue.front();
    queue.pop_front();
    if (cur == t) return true;
    for (const ComponentRef& nb : model.neighbors(layer, cur)) {
      if (seen.insert(nb).second) queue.push_back(nb);
    }
  }
  return false;
}

/// Runs fn(0..count-1).  threads == 1 is the serial reference path.
template <typename Fn>
void for_each_index(std::size_t count, int threads, Fn&& fn) {
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
#ifdef _OPENMP
  int num = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(num)
  for (long long i = 0; i < static_cast<long long>(count); ++i) {
    fn(static_cast<std::size_t>(i));
  }
#else
  for (std::size_t i = 0; i < count; ++i) fn(i);
#endif
}

TestTemplate make_path_template(int layer, std::vector<ComponentRef> nodes,
                                std::vector<std::string> params, TemplateOrigin origin) {
  TestTemplate t;
  t.layer = layer;
  t.kind = TestTemplate::Kind::path;
  t.nodes = std::move(nodes);
  t.params = std::move(params);
  t.origin = std::move(origin);
  t.id = template_id(t);
  return t;
}

/// Work unit for the parallel kernel: one source against an ordered list of
/// candidate targets.
struct PairTask {
  int layer = 0;
  ComponentRef source;
  std::vector<ComponentRef> targets;
  std::vector<std::string> params;
  TemplateOrigin origin;
  bool stop_at_first = false;       // minimal mode: first path of first reachable target
  std::string violation_code;      // emitted when no target is reachable
  std::string violation_subject;
  std::string violation_message;
};

struct PairOutcome {
  std::vector<TestTemplate> templates;
  std::optional<Diagnostic> violation;
  bool truncated = false;
};

std::vector<PairOutcome> run_pair_tasks(const SystemModel& model, const std::vector<PairTask>& tasks,
                                        const PathLimits& limits, int threads) {
  std::vector<PairOutcome> outcomes(tasks.size());
  for_each_index(tasks.size(), threads, [&](std::size_t i) {
    const PairTask& task = tasks[i];
    PairOutcome& out = outcomes[i];
    PathLimits effective = limits;
    if (task.stop_at_first) effective.max_paths = 1;
    for (const ComponentRef& target : task.targets) {
      if (target == task.source) continue;
      EnumeratedPaths found = enumerate_paths(model, task.layer, task.source, target, effective);
      if (!task.stop_at_first) out.truncated |= found.truncated;
      for (Path& p : found.paths) {
        out.templates.push_back(
            make_path_template(task.layer, std::move(p.nodes), task.params, task.origin));
      }
      if (task.stop_at_first && !out.templates.empty()) break;
    }
    if (out.templates.empty() && !task.violation_code.empty()) {
      out.violation = Diagnostic{Severity::error, task.violation_code, task.layer,
                                 task.violation_subject, task.violation_message};
    }
  });
  return outcomes;
}

std::vector<ComponentRef> class_instances(const SystemModel& model, int layer,
                                          const std::string& cls) {
  std::vector<ComponentRef> refs;
  for (const ComponentRef& ref : model.layer_view(layer).components) {
    if (ref.class_name == cls) refs.push_back(ref);
  }
  return refs;
}

}  // namespace

const char* to_string(CoverageMode mode) {
  return mode == CoverageMode::full ? "full" : "minimal";
}

std::string to_string(const TemplateOrigin& origin) {
  switch (origin.kind) {
    case TemplateOrigin::Kind::node_coverage: return "node_coverage";
    case TemplateOrigin::Kind::direct: return "direct:" + origin.ref;
    case TemplateOrigin::Kind::projected: return "projected:" + origin.ref;
  }
  return {};
}

std::string template_identity(const TestTemplate& t) {
  std::string id = std::to_string(t.layer) + "#" + std::to_string(static_cast<int>(t.kind)) + "#" +
                   join_nodes(t.nodes, "-") + "#";
  for (const std::string& p : t.params) {
    id += std::to_string(p.size()) + ":" + p;
  }
  return id;
}

EnumeratedPaths enumerate_paths(const SystemModel& model, int layer, const ComponentRef& s,
                                const ComponentRef& t, const PathLimits& limits) {
  if (s == t) throw std::invalid_argument("enumerate_paths: endpoints are the same component");
  model.neighbors(layer, s);  // existence checks; throws std::out_of_range
  model.neighbors(layer, t);

  EnumeratedPaths result;
  if (!reachable(model, layer, s, t)) return result;

  const std::size_t layer_size = model.layer_view(layer).components.size();
  const std::size_t max_len =
      limits.max_len > 0 ? static_cast<std::size_t>(limits.max_len) : layer_size;
  const std::size_t max_paths =
      limits.max_paths > 0 ? static_cast<std::size_t>(limits.max_paths) : SIZE_MAX;

  std::vector<std::vector<ComponentRef>> frontier{{s}};
  std::size_t nodes_in_frontier = 1;  // node count of every partial path in `frontier`

  while (!frontier.empty() && nodes_in_frontier + 1 <= max_len) {
    std::vector<std::vector<ComponentRef>> next;
    std::vector<std::vector<ComponentRef>> completed;
    for (const std::vector<ComponentRef>& partial : frontier) {
      for (const ComponentRef& nb : model.neighbors(layer, partial.back())) {
        if (std::find(partial.begin(), partial.end(), nb) != partial.end()) continue;
        std::vector<ComponentRef> grown = partial;
        grown.push_back(nb);
        if (nb == t) {
          canonicalize(grown);
          completed.push_back(std::move(grown));
        } else {
          next.push_back(std::move(grown));
        }
      }
    }
    std::sort(completed.begin(), completed.end());
    for (auto& nodes : completed) {
      result.paths.push_back(Path{layer, std::move(nodes)});
    }
    if (result.paths.size() > max_paths) {
      result.paths.resize(max_paths);
      result.truncated = true;
      return result;
    }
    frontier = std::move(next);
    ++nodes_in_frontier;
  }
  return result;
}

std::vector<Requirement> collect_requirements(const FactSet& facts) {
  std::vector<Requirement> out;
  int ordinal = 0;
  for (const RequirementFact& f : facts.requirements) {
    ++ordinal;
    out.push_back(Requirement{f.layer, f.source, f.target, f.params,
                              "r" + std::to_string(ordinal), f.pos});
  }
  return out;
}

std::optional<Obligation> expand_requirement(const SystemModel& model, const Requirement& req) {
  if (req.source.kind == ComponentPattern::Kind::any &&
      req.target.kind == ComponentPattern::Kind::any) {
    return std::nullopt;  // placeholder: coverage is delegated to projections
  }

  auto expand = [&](const ComponentPattern& p) -> std::vector<ComponentRef> {
    switch (p.kind) {
      case ComponentPattern::Kind::exact:
        return {ComponentRef{p.class_name, p.index}};
      case ComponentPattern::Kind::class_all:
        return class_instances(model, req.layer, p.class_name);
      case ComponentPattern::Kind::any:
        return model.layer_view(req.layer).components;
    }
    return {};
  };

  Obligation ob;
  ob.layer = req.layer;
  ob.conjuncts = expand(req.source);
  ob.disjuncts = expand(req.target);
  ob.params = req.params;
  ob.requirement_id = req.id;
  return ob;
}

std::array<std::vector<TestTemplate>, kLayerCount + 1> component_templates(const SystemModel& model) {
  std::array<std::vector<TestTemplate>, kLayerCount + 1> out;
  for (const Component& c : model.components()) {
    TestTemplate t;
    t.layer = c.layer;
    t.kind = TestTemplate::Kind::component;
    t.nodes = {c.ref};
    t.params = c.params;
    t.origin = TemplateOrigin{TemplateOrigin::Kind::node_coverage, {}};
    t.id = template_id(t);
    out[c.layer].push_back(std::move(t));
  }
  return out;
}

std::vector<std::string> inventory_types(const SystemModel& model, int layer) {
  std::vector<std::string> labels;
  for (const Component& c : model.components()) {
    if (c.layer == layer && c.type_label) labels.push_back(*c.type_label);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

DirectResult direct_templates(const SystemModel& model, int layer,
                              std::span<const Obligation> obligations, CoverageMode mode,
                              const PathLimits& limits, int threads) {
  std::vector<PairTask> tasks;
  for (const Obligation& ob : obligations) {
    for (const ComponentRef& s : ob.conjuncts) {
      PairTask task;
      task.layer = layer;
      task.source = s;
      task.targets = ob.disjuncts;
      task.params = ob.params;
      task.origin = TemplateOrigin{TemplateOrigin::Kind::direct, ob.requirement_id};
      task.stop_at_first = mode == CoverageMode::minimal;
      task.violation_code = std::string(diag::kCriterion1Violation);
      task.violation_subject = ob.requirement_id + " " + to_string(s);
      task.violation_message = "component " + to_string(s) + " reaches no admissible target of " +
                               ob.requirement_id + " on layer " + std::to_string(layer);
      tasks.push_back(std::move(task));
    }
  }

  DirectResult result;
  for (PairOutcome& out : run_pair_tasks(model, tasks, limits, threads)) {
    result.truncated |= out.truncated;
    std::move(out.templates.begin(), out.templates.end(), std::back_inserter(result.templates));
    if (out.violation) result.diagnostics.push_back(std::move(*out.violation));
  }
  return result;
}

ProjectionResult project_templates(const SystemModel& model, int layer,
                                   std::span<const TestTemplate> templates) {
  ProjectionResult result;
  if (layer <= 1) return result;

  std::map<std::pair<ComponentRef, ComponentRef>, std::vector<std::string>> pairs;

  for (const TestTemplate& t : templates) {
    if (t.kind != TestTemplate::Kind::path) continue;
    const auto& src_images = model.lower_images(layer, t.nodes.front());
    const auto& dst_images = model.lower_images(layer, t.nodes.back());
    if (src_images.empty() || dst_images.empty()) {
      result.diagnostics.push_back(Diagnostic{
          Severity::error, std::string(diag::kNoProjectionForTemplate), layer, t.id,
          "a template endpoint has no image on layer " + std::to_string(layer - 1)});
      continue;
    }
    for (const ComponentRef& p : src_images) {
      for (const ComponentRef& q : dst_images) {
        if (p == q) {
          result.trivially_satisfied.push_back(TrivialRecord{layer - 1, p, t.id});
          continue;
        }
        auto key = p < q ? std::pair(p, q) : std::pair(q, p);
        auto& origins = pairs[key];
        if (std::find(origins.begin(), origins.end(), t.id) == origins.end()) {
          origins.push_back(t.id);
        }
      }
    }
  }

  for (auto& [key, origins] : pairs) {
    InducedRequirement ir;
    ir.layer = layer - 1;
    ir.source = key.first;
    ir.target = key.second;
    ir.origin_templates = std::move(origins);
    ir.id = "i" + std::to_string(ir.layer) + ":" + node_key(ir.source) + "--" + node_key(ir.target);
    result.induced.push_back(std::move(ir));
  }
  std::sort(result.trivially_satisfied.begin(), result.trivially_satisfied.end(),
            [](const TrivialRecord& l, const TrivialRecord& r) {
              return std::tie(l.node, l.origin_template) < std::tie(r.node, r.origin_template);
            });
  return result;
}

namespace {

std::vector<TestTemplate> dedup_templates(std::vector<TestTemplate> direct,
                                          std::vector<TestTemplate> induced) {
  std::vector<TestTemplate> out;
  std::set<std::string> seen;
  for (auto* batch : {&direct, &induced}) {
    for (TestTemplate& t : *batch) {
      if (seen.insert(template_identity(t)).second) out.push_back(std::move(t));
    }
  }
  return out;
}

/// Replaces layer-1 path templates by one link template per distinct
/// connection they traverse.  A link inherits the connection's own
/// parameters; its origin is the first template that covered it.
std::vector<TestTemplate> reduce_to_links(const SystemModel& model,
                                          const std::vector<TestTemplate>& distributed) {
  std::map<std::pair<ComponentRef, ComponentRef>, TemplateOrigin> links;
  std::vector<TestTemplate> out;

  for (const TestTemplate& t : distributed) {
    if (t.kind != TestTemplate::Kind::path) {
      out.push_back(t);
      continue;
    }
    for (std::size_t i = 0; i + 1 < t.nodes.size(); ++i) {
      ComponentRef a = t.nodes[i];
      ComponentRef b = t.nodes[i + 1];
      if (b < a) std::swap(a, b);
      links.try_emplace(std::pair(a, b), t.origin);
    }
  }

  for (const auto& [pair, origin] : links) {
    TestTemplate t;
    t.layer = kPhysicalLayer;
    t.kind = TestTemplate::Kind::link;
    t.nodes = {pair.first, pair.second};
    for (const Connection& c : model.connections()) {
      if (c.layer == kPhysicalLayer && c.a == pair.first && c.b == pair.second) {
        t.params = c.params;
        break;
      }
    }
    t.origin = origin;
    t.id = template_id(t);
    out.push_back(std::move(t));
  }
  return out;
}

std::size_t count_endpoint_pairs(const std::vector<TestTemplate>& templates) {
  std::set<std::pair<ComponentRef, ComponentRef>> pairs;
  for (const TestTemplate& t : templates) {
    if (t.kind == TestTemplate::Kind::path) {
      pairs.insert({t.nodes.front(), t.nodes.back()});
    }
  }
  return pairs.size();
}

}  // namespace

StrategyReport run_strategy(const SystemModel& model, std::span<const Requirement> requirements,
                            const StrategyConfig& config) {
  StrategyReport report;

  std::array<std::vector<Obligation>, kLayerCount + 1> obligations;
  for (const Requirement& r : requirements) {
    if (r.layer < 1 || r.layer > kLayerCount) continue;  // flagged by validation
    if (std::optional<Obligation> ob = expand_requirement(model, r)) {
      obligations[r.layer].push_back(std::move(*ob));
    }
  }

  auto all_component_templates = component_templates(model);
  std::vector<InducedRequirement> pending;  // induced by the layer above

  for (int n = kLayerCount; n >= 1; --n) {
    LayerReport& layer = report.layers[n];
    layer.layer = n;
    layer.component_templates = std::move(all_component_templates[n]);
    layer.inventory = inventory_types(model, n);

    std::set<ComponentRef> communicating;
    for (const Obligation& ob : obligations[n]) {
      communicating.insert(ob.conjuncts.begin(), ob.conjuncts.end());
      communicating.insert(ob.disjuncts.begin(), ob.disjuncts.end());
    }

    DirectResult direct =
        direct_templates(model, n, obligations[n], config.mode, config.limits, config.threads);
    layer.direct = std::move(direct.templates);
    layer.diagnostics = std::move(direct.diagnostics);
    if (direct.truncated) report.truncated = true;

    // Induced requirements carried down from layer n+1.
    std::vector<PairTask> induced_tasks;
    for (const InducedRequirement& ir : pending) {
      communicating.insert(ir.source);
      communicating.insert(ir.target);
      PairTask task;
      task.layer = n;
      task.source = ir.source;
      task.targets = {ir.target};
      task.origin = TemplateOrigin{TemplateOrigin::Kind::projected, ir.origin_templates.front()};
      task.stop_at_first = config.mode == CoverageMode::minimal;
      task.violation_code = std::string(diag::kCriterion2Violation);
      task.violation_subject = ir.id;
      task.violation_message = "projected pair " + to_string(ir.source) + " -- " +
                               to_string(ir.target) + " has no path on layer " + std::to_string(n);
      induced_tasks.push_back(std::move(task));
    }
    bool induced_truncated = false;
    for (PairOutcome& out : run_pair_tasks(model, induced_tasks, config.limits, config.threads)) {
      induced_truncated |= out.truncated;
      std::move(out.templates.begin(), out.templates.end(), std::back_inserter(layer.induced));
      if (out.violation) layer.diagnostics.push_back(std::move(*out.violation));
    }
    if (induced_truncated) report.truncated = true;
    if (direct.truncated || induced_truncated) {
      layer.diagnostics.push_back(Diagnostic{Severity::warning, std::string(diag::kPathsTruncated),
                                             n, layer_name(n),
                                             "path enumeration hit the per-pair limit"});
    }

    layer.distributed = dedup_templates(layer.direct, layer.induced);
    layer.endpoint_pairs = count_endpoint_pairs(layer.distributed);
    layer.communicating.assign(communicating.begin(), communicating.end());

    if (n > 1) {
      ProjectionResult projected = project_templates(model, n, layer.distributed);
      pending = std::move(projected.induced);
      report.layers[n - 1].trivially_satisfied = std::move(projected.trivially_satisfied);
      std::move(projected.diagnostics.begin(), projected.diagnostics.end(),
                std::back_inserter(layer.diagnostics));
    }
    if (n == 1 && config.physical_edge_coverage) {
      layer.distributed = reduce_to_links(model, layer.distributed);
    }

    report.totals.component_templates += layer.component_templates.size();
    report.totals.distributed_templates += layer.distributed.size();
  }
  return report;
}

bool has_criterion_violation(const StrategyReport& report) {
  for (const LayerReport& layer : report.layers) {
    for (const Diagnostic& d : layer.diagnostics) {
      if (d.code == diag::kCriterion1Violation || d.code == diag::kCriterion2Violation) return true;
    }
  }
  return false;
}

}  // namespace dsutgen
