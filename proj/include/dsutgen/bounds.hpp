#pragma once

#include <array>
#include <span>

#include "dsutgen/generate.hpp"
#include "dsutgen/model.hpp"

namespace dsutgen {

/// Per-layer inputs for the analytic bounds: C_n components in total, of
/// which `communicating` appear in some obligation.
struct LayerBoundInput {
  long long components = 0;
  long long communicating = 0;
};

using BoundInputs = std::array<LayerBoundInput, kLayerCount + 1>;  // index by layer

struct BoundsFragment {
  std::array<long long, kLayerCount + 1> dist_bound{};  // per-layer distributed bound
  long long dist_total = 0;
  long long grand_total = 0;  // component tests + distributed bound
  int redundancy = 1;
};

/// Components that can take part in communication on layer n: endpoints of
/// layer-n obligations plus the downward images of the communicating
/// components of every layer above.  With worst_case set, every component of
/// the layer.  Sorted.
std::vector<ComponentRef> communicating_subgraph(const SystemModel& model, int layer,
                                                 std::span<const Obligation> obligations,
                                                 bool worst_case);

/// Exact component-template count: one per component.
long long total_components(const BoundInputs& inputs);

/// One route per communicating pair: sum of g(g-1)/2 over layers.
BoundsFragment simple_bounds(const BoundInputs& inputs);

/// `redundancy` routes per communicating pair.  redundancy == 1 coincides
/// with simple_bounds field for field.
BoundsFragment complex_bounds(const BoundInputs& inputs, int redundancy);

/// Warns (BOUND_EXCEEDED) when a generation run produced more distinct
/// endpoint pairs on some layer than the simple bound allows.
std::vector<Diagnostic> check_against_generation(const StrategyReport& report,
                                                 const BoundInputs& inputs);

}  // namespace dsutgen
