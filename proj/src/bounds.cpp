// A-priori test-count estimates.
//
// The communicating subgraph of a layer collects every component named by an
// expanded requirement on that layer, plus the downward images of the
// communicating components above it; it over-approximates the endpoints that
// generation can produce, so pair counts from an actual run never exceed the
// bounds computed here.

#include "dsutgen/bounds.hpp"

#include <set>

namespace dsutgen {
namespace {

long long pair_bound(long long g, long long redundancy) {
  return redundancy * (g * (g - 1)) / 2;
}

}  // namespace

std::vector<ComponentRef> communicating_subgraph(const SystemModel& model, int layer,
                                                 std::span<const Obligation> obligations,
                                                 bool worst_case) {
  if (worst_case) return model.layer_view(layer).components;

  std::array<std::set<ComponentRef>, kLayerCount + 1> sets;
  for (const Obligation& ob : obligations) {
    if (ob.layer < 1 || ob.layer > kLayerCount) continue;
    sets[ob.layer].insert(ob.conjuncts.begin(), ob.conjuncts.end());
    sets[ob.layer].insert(ob.disjuncts.begin(), ob.disjuncts.end());
  }
  for (int n = kLayerCount; n > layer; --n) {
    for (const ComponentRef& ref : sets[n]) {
      const auto& images = model.lower_images(n, ref);
      sets[n - 1].insert(images.begin(), images.end());
    }
  }
  return {sets[layer].begin(), sets[layer].end()};
}

long long total_components(const BoundInputs& inputs) {
  long long total = 0;
  for (int n = 1; n <= kLayerCount; ++n) total += inputs[n].components;
  return total;
}

BoundsFragment simple_bounds(const BoundInputs& inputs) {
  return complex_bounds(inputs, 1);
}

BoundsFragment complex_bounds(const BoundInputs& inputs, int redundancy) {
  BoundsFragment f;
  f.redundancy = redundancy;
  for (int n = 1; n <= kLayerCount; ++n) {
    f.dist_bound[n] = pair_bound(inputs[n].communicating, redundancy);
    f.dist_total += f.dist_bound[n];
  }
  f.grand_total = f.dist_total + total_components(inputs);
  return f;
}

std::vector<Diagnostic> check_against_generation(const StrategyReport& report,
                                                 const BoundInputs& inputs) {
  std::vector<Diagnostic> out;
  for (int n = kLayerCount; n >= 1; --n) {
    long long bound = pair_bound(inputs[n].communicating, 1);
    long long actual = static_cast<long long>(report.layers[n].endpoint_pairs);
    if (actual > bound) {
      out.push_back(Diagnostic{
          Severity::warning, std::string(diag::kBoundExceeded), n, layer_name(n),
          std::to_string(actual) + " endpoint pairs exceed the estimate of " +
              std::to_string(bound)});
    }
  }
  return out;
}

}  // namespace dsutgen
