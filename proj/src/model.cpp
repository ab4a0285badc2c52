#include "dsutgen/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace dsutgen {
namespace {

void sort_unique(std::vector<ComponentRef>& refs) {
  std::sort(refs.begin(), refs.end());
  refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
}

}  // namespace

const char* layer_name(int layer) {
  switch (layer) {
    case kPhysicalLayer: return "physical";
    case kLogicalLayer: return "logical";
    case kSystemLayer: return "system";
    case kFunctionalLayer: return "functional";
  }
  return "unknown";
}

const char* to_string(BuildError::Code code) {
  switch (code) {
    case BuildError::Code::duplicate_component: return "DuplicateComponent";
    case BuildError::Code::dangling_endpoint: return "DanglingEndpoint";
    case BuildError::Code::cross_layer_connection: return "CrossLayerConnection";
    case BuildError::Code::bad_projection_layers: return "BadProjectionLayers";
    case BuildError::Code::self_loop: return "SelfLoop";
  }
  return "?";
}

const char* to_string(ProjectionArity arity) {
  switch (arity) {
    case ProjectionArity::one_to_one: return "one_to_one";
    case ProjectionArity::one_to_many: return "one_to_many";
    case ProjectionArity::many_to_one: return "many_to_one";
    case ProjectionArity::many_to_many: return "many_to_many";
  }
  return "?";
}

SystemModel::BuildResult SystemModel::build(const FactSet& facts) {
  BuildResult result;
  SystemModel model;
  auto& errors = result.errors;

  for (const ObjectFact& f : facts.objects) {
    Key key{f.layer, f.ref};
    if (model.index_.contains(key)) {
      errors.push_back({BuildError::Code::duplicate_component, f.pos,
                        "component " + to_string(f.ref) + " declared twice on layer " +
                            std::to_string(f.layer)});
      continue;
    }
    model.index_.emplace(key, model.components_.size());
    model.components_.push_back(Component{f.layer, f.ref, f.type_label, f.params});
  }

  auto exists = [&](int layer, const ComponentRef& ref) {
    return model.index_.contains(Key{layer, ref});
  };
  auto exists_elsewhere = [&](int layer, const ComponentRef& ref) {
    for (int n = 1; n <= kLayerCount; ++n) {
      if (n != layer && exists(n, ref)) return true;
    }
    return false;
  };
  // Distinguishes "endpoint lives on another layer" from "endpoint does not
  // exist at all"; both abort the fact but report differently.
  auto check_endpoint = [&](int layer, const ComponentRef& ref, const EdgeFact& f,
                            BuildError::Code wrong_layer_code) {
    if (exists(layer, ref)) return true;
    if (exists_elsewhere(layer, ref)) {
      errors.push_back({wrong_layer_code, f.pos,
                        "component " + to_string(ref) + " is not on layer " +
                            std::to_string(layer)});
    } else {
      errors.push_back({BuildError::Code::dangling_endpoint, f.pos,
                        "component " + to_string(ref) + " is not declared"});
    }
    return false;
  };

  for (const EdgeFact& f : facts.connections) {
    if (f.a == f.b) {
      errors.push_back({BuildError::Code::self_loop, f.pos,
                        "connection of " + to_string(f.a) + " to itself"});
      continue;
    }
    bool ok = check_endpoint(f.layer, f.a, f, BuildError::Code::cross_layer_connection);
    ok &= check_endpoint(f.layer, f.b, f, BuildError::Code::cross_layer_connection);
    if (!ok) continue;
    Connection c{f.layer, f.a, f.b, f.params};
    if (c.b < c.a) std::swap(c.a, c.b);
    model.connections_.push_back(std::move(c));
  }

  for (const EdgeFact& f : facts.maps) {
    if (f.layer <= 1) {
      errors.push_back({BuildError::Code::bad_projection_layers, f.pos,
                        "map on layer " + std::to_string(f.layer) + " has no layer below"});
      continue;
    }
    if (!check_endpoint(f.layer, f.a, f, BuildError::Code::bad_projection_layers)) continue;
    if (!check_endpoint(f.layer - 1, f.b, f, BuildError::Code::bad_projection_layers)) continue;
    model.projections_.push_back(Projection{f.layer, f.a, f.b, f.params});
  }

  if (!errors.empty()) return result;

  // Canonical storage order; duplicate connection and map facts collapse to
  // the first occurrence.
  std::sort(model.connections_.begin(), model.connections_.end(),
            [](const Connection& l, const Connection& r) {
              return std::tuple(l.layer, l.a, l.b) < std::tuple(r.layer, r.a, r.b);
            });
  model.connections_.erase(
      std::unique(model.connections_.begin(), model.connections_.end(),
                  [](const Connection& l, const Connection& r) {
                    return l.layer == r.layer && l.a == r.a && l.b == r.b;
                  }),
      model.connections_.end());

  std::sort(model.projections_.begin(), model.projections_.end(),
            [](const Projection& l, const Projection& r) {
              return std::tuple(l.upper_layer, l.upper, l.lower) <
                     std::tuple(r.upper_layer, r.upper, r.lower);
            });
  model.projections_.erase(
      std::unique(model.projections_.begin(), model.projections_.end(),
                  [](const Projection& l, const Projection& r) {
                    return l.upper_layer == r.upper_layer && l.upper == r.upper && l.lower == r.lower;
                  }),
      model.projections_.end());

  std::sort(model.components_.begin(), model.components_.end(),
            [](const Component& l, const Component& r) {
              return std::tuple(l.layer, l.ref) < std::tuple(r.layer, r.ref);
            });
  model.index_.clear();
  for (std::size_t i = 0; i < model.components_.size(); ++i) {
    model.index_.emplace(Key{model.components_[i].layer, model.components_[i].ref}, i);
  }

  for (const Connection& c : model.connections_) {
    model.adjacency_[Key{c.layer, c.a}].push_back(c.b);
    model.adjacency_[Key{c.layer, c.b}].push_back(c.a);
  }
  for (auto& [key, nbrs] : model.adjacency_) sort_unique(nbrs);

  for (const Projection& p : model.projections_) {
    model.lower_[Key{p.upper_layer, p.upper}].push_back(p.lower);
    model.upper_[Key{p.upper_layer - 1, p.lower}].push_back(p.upper);
  }
  for (auto& [key, refs] : model.lower_) sort_unique(refs);
  for (auto& [key, refs] : model.upper_) sort_unique(refs);

  result.model = std::move(model);
  return result;
}

LayerView SystemModel::layer_view(int layer) const {
  LayerView view;
  view.layer = layer;
  for (const Component& c : components_) {
    if (c.layer == layer) view.components.push_back(c.ref);
  }
  for (const Connection& c : connections_) {
    if (c.layer == layer) view.connections.push_back(c);
  }
  for (const Projection& p : projections_) {
    if (p.upper_layer == layer) {
      view.projections.push_back(p);
      view.lower_components.push_back(p.lower);
    }
  }
  sort_unique(view.lower_components);
  return view;
}

const Component* SystemModel::find(int layer, const ComponentRef& ref) const {
  auto it = index_.find(Key{layer, ref});
  return it == index_.end() ? nullptr : &components_[it->second];
}

namespace {
const std::vector<ComponentRef> kNoRefs;
}

const std::vector<ComponentRef>& SystemModel::neighbors(int layer, const ComponentRef& ref) const {
  if (!find(layer, ref)) {
    throw std::out_of_range("unknown component " + to_string(ref) + " on layer " +
                            std::to_string(layer));
  }
  auto it = adjacency_.find(Key{layer, ref});
  return it == adjacency_.end() ? kNoRefs : it->second;
}

const std::vector<ComponentRef>& SystemModel::lower_images(int layer, const ComponentRef& ref) const {
  if (!find(layer, ref)) {
    throw std::out_of_range("unknown component " + to_string(ref) + " on layer " +
                            std::to_string(layer));
  }
  auto it = lower_.find(Key{layer, ref});
  return it == lower_.end() ? kNoRefs : it->second;
}

const std::vector<ComponentRef>& SystemModel::upper_images(int layer, const ComponentRef& ref) const {
  if (!find(layer, ref)) {
    throw std::out_of_range("unknown component " + to_string(ref) + " on layer " +
                            std::to_string(layer));
  }
  auto it = upper_.find(Key{layer, ref});
  return it == upper_.end() ? kNoRefs : it->second;
}

ProjectionArity SystemModel::projection_arity(int layer, const ComponentRef& ref) const {
  const std::vector<ComponentRef>& lows = lower_images(layer, ref);
  if (lows.empty()) {
    throw std::domain_error("component " + to_string(ref) + " has no projection below layer " +
                            std::to_string(layer));
  }
  if (lows.size() == 1) {
    return upper_images(layer - 1, lows.front()).size() > 1 ? ProjectionArity::many_to_one
                                                            : ProjectionArity::one_to_one;
  }
  for (const ComponentRef& low : lows) {
    const auto& ups = upper_images(layer - 1, low);
    if (ups.size() != 1 || ups.front() != ref) return ProjectionArity::many_to_many;
  }
  return ProjectionArity::one_to_many;
}

FactSet SystemModel::to_facts() const {
  FactSet facts;
  for (const Component& c : components_) {
    facts.objects.push_back(ObjectFact{c.layer, c.ref, c.type_label, c.params, {}});
  }
  for (const Connection& c : connections_) {
    facts.connections.push_back(EdgeFact{c.layer, c.a, c.b, c.params, {}});
  }
  for (const Projection& p : projections_) {
    facts.maps.push_back(EdgeFact{p.upper_layer, p.upper, p.lower, p.params, {}});
  }
  return facts;
}

bool same_structure(const SystemModel& lhs, const SystemModel& rhs) {
  return structurally_equal(lhs.to_facts(), rhs.to_facts());
}

}  // namespace dsutgen
