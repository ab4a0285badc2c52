#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dsutgen/model.hpp"
#include "dsutgen/validate.hpp"

namespace dsutgen {

enum class CoverageMode { full, minimal };

const char* to_string(CoverageMode mode);

/// Enumeration limits.  A value of 0 disables the corresponding limit.
struct PathLimits {
  int max_len = 16;    // maximum node count per path
  int max_paths = 64;  // maximum paths kept per endpoint pair
};

/// Simple path stored in canonical orientation: the lexicographically
/// smaller endpoint comes first.
struct Path {
  int layer = 0;
  std::vector<ComponentRef> nodes;
};

struct EnumeratedPaths {
  std::vector<Path> paths;  // shortest first, then lexicographic
  bool truncated = false;   // true when max_paths cut the list
};

/// All simple paths between two distinct components of one layer.
/// Throws std::invalid_argument when s == t, std::out_of_range when either
/// endpoint is unknown.
EnumeratedPaths enumerate_paths(const SystemModel& model, int layer, const ComponentRef& s,
                                const ComponentRef& t, const PathLimits& limits = {});

struct Requirement {
  int layer = 0;
  ComponentPattern source;
  ComponentPattern target;
  std::vector<std::string> params;
  std::string id;  // r1, r2, ... in source order
  SourcePos pos;
};

std::vector<Requirement> collect_requirements(const FactSet& facts);

/// A requirement expanded against a model: every conjunct must reach at
/// least one disjunct.
struct Obligation {
  int layer = 0;
  std::vector<ComponentRef> conjuncts;
  std::vector<ComponentRef> disjuncts;
  std::vector<std::string> params;
  std::string requirement_id;
};

/// nullopt for the placeholder form (both sides wildcards): such a
/// requirement delegates its coverage to projections from above.
std::optional<Obligation> expand_requirement(const SystemModel& model, const Requirement& req);

struct TemplateOrigin {
  enum class Kind { node_coverage, direct, projected };

  Kind kind = Kind::node_coverage;
  std::string ref;  // requirement id (direct) or upper template id (projected)
};

std::string to_string(const TemplateOrigin& origin);

struct TestTemplate {
  enum class Kind { component, path, link };

  std::string id;
  int layer = 0;
  Kind kind = Kind::component;
  std::vector<ComponentRef> nodes;  // 1 node, 2 link endpoints, or a path
  std::vector<std::string> params;
  TemplateOrigin origin;
};

/// Dedup key: layer, kind, canonical node sequence, params.  Origins are
/// deliberately excluded.
std::string template_identity(const TestTemplate& t);

/// One component template per component; index 1..4 by layer.
std::array<std::vector<TestTemplate>, kLayerCount + 1> component_templates(const SystemModel& model);

/// Sorted unique type labels declared on a layer.
std::vector<std::string> inventory_types(const SystemModel& model, int layer);

struct DirectResult {
  std::vector<TestTemplate> templates;  // may repeat across obligations
  std::vector<Diagnostic> diagnostics;
  bool truncated = false;
};

/// Path templates for declared obligations of one layer.  In full mode every
/// enumerated path to every reachable disjunct becomes a template; in minimal
/// mode each conjunct contributes the first path to the first reachable
/// disjunct.  A conjunct that reaches no disjunct is a criterion-1 violation.
/// `threads`: 1 = serial reference loop, 0 = all cores, n = n threads.
DirectResult direct_templates(const SystemModel& model, int layer,
                              std::span<const Obligation> obligations, CoverageMode mode,
                              const PathLimits& limits, int threads = 1);

struct InducedRequirement {
  int layer = 0;  // the lower layer
  ComponentRef source;
  ComponentRef target;
  std::vector<std::string> origin_templates;  // upper template ids, merged
  std::string id;
};

struct TrivialRecord {
  int layer = 0;
  ComponentRef node;
  std::string origin_template;
};

struct ProjectionResult {
  std::vector<InducedRequirement> induced;
  std::vector<TrivialRecord> trivially_satisfied;
  std::vector<Diagnostic> diagnostics;
};

/// Projects path templates of layer `layer` one layer down through the
/// endpoint images.  Pairs with identical members are trivially satisfied;
/// duplicates are merged keeping every origin.
ProjectionResult project_templates(const SystemModel& model, int layer,
                                   std::span<const TestTemplate> templates);

struct StrategyConfig {
  CoverageMode mode = CoverageMode::full;
  PathLimits limits{};
  bool physical_edge_coverage = true;
  int threads = 0;  // 0 = parallel on all cores, 1 = serial reference
};

struct LayerReport {
  int layer = 0;
  std::vector<TestTemplate> component_templates;
  std::vector<std::string> inventory;
  std::vector<TestTemplate> direct;       // T_n1, as emitted
  std::vector<TestTemplate> induced;      // T_n2, as emitted
  std::vector<TestTemplate> distributed;  // dedup(direct + induced); links on layer 1
  std::vector<TrivialRecord> trivially_satisfied;
  std::vector<Diagnostic> diagnostics;
  std::size_t endpoint_pairs = 0;            // distinct endpoint pairs before link reduction
  std::vector<ComponentRef> communicating;   // endpoints of declared + induced obligations
};

struct StrategyTotals {
  std::size_t component_templates = 0;
  std::size_t distributed_templates = 0;
};

struct StrategyReport {
  std::array<LayerReport, kLayerCount + 1> layers;  // index by layer, [0] unused
  StrategyTotals totals;
  bool truncated = false;
};

/// Runs the coverage strategy top-down: layer 4 first, each layer's template
/// union projected onto the next layer down.  Deterministic output for a
/// given model, requirement list and config, independent of thread count.
StrategyReport run_strategy(const SystemModel& model, std::span<const Requirement> requirements,
                            const StrategyConfig& config = {});

bool has_criterion_violation(const StrategyReport& report);

}  // namespace dsutgen
