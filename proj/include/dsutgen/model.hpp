#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsutgen/facts.hpp"

namespace dsutgen {

inline constexpr int kLayerCount = 4;
inline constexpr int kPhysicalLayer = 1;
inline constexpr int kLogicalLayer = 2;
inline constexpr int kSystemLayer = 3;
inline constexpr int kFunctionalLayer = 4;

const char* layer_name(int layer);  // "physical" .. "functional"

struct Component {
  int layer = 0;
  ComponentRef ref;
  std::optional<std::string> type_label;
  std::vector<std::string> params;
};

/// Undirected intra-layer connection, stored canonically with a < b.
struct Connection {
  int layer = 0;
  ComponentRef a;
  ComponentRef b;
  std::vector<std::string> params;

  friend auto operator<=>(const Connection&, const Connection&) = default;
};

/// Projection of an upper-layer component onto one component of the layer
/// directly below.
struct Projection {
  int upper_layer = 0;
  ComponentRef upper;
  ComponentRef lower;
  std::vector<std::string> params;
};

struct BuildError {
  enum class Code {
    duplicate_component,
    dangling_endpoint,
    cross_layer_connection,
    bad_projection_layers,
    self_loop,
  };

  Code code;
  SourcePos pos;
  std::string detail;
};

const char* to_string(BuildError::Code code);

enum class ProjectionArity { one_to_one, one_to_many, many_to_one, many_to_many };

const char* to_string(ProjectionArity arity);

/// One layer of the model: its components and connections, plus the
/// projections leaving it and the lower-layer components they reach.
struct LayerView {
  int layer = 0;
  std::vector<ComponentRef> components;
  std::vector<Connection> connections;
  std::vector<Projection> projections;
  std::vector<ComponentRef> lower_components;
};

/// Immutable four-layer model.  Built from a FactSet in one shot; all build
/// errors are collected rather than stopping at the first.  All queries are
/// pure and safe to call concurrently.
class SystemModel {
 public:
  struct BuildResult;

  static BuildResult build(const FactSet& facts);

  const std::vector<Component>& components() const { return components_; }
  const std::vector<Connection>& connections() const { return connections_; }
  const std::vector<Projection>& projections() const { return projections_; }

  LayerView layer_view(int layer) const;

  /// Null when the component does not exist on that layer.
  const Component* find(int layer, const ComponentRef& ref) const;

  /// Adjacent components on the same layer, canonically ordered.
  /// Throws std::out_of_range for an unknown component.
  const std::vector<ComponentRef>& neighbors(int layer, const ComponentRef& ref) const;

  /// Components of layer-1 that `ref` projects onto (sorted).  Throws
  /// std::out_of_range for an unknown component.
  const std::vector<ComponentRef>& lower_images(int layer, const ComponentRef& ref) const;

  /// Components of layer+1 projecting onto `ref` (sorted).
  const std::vector<ComponentRef>& upper_images(int layer, const ComponentRef& ref) const;

  /// Classification of the projection fan of `ref` one layer down.
  /// Throws std::domain_error when `ref` has no downward projection.
  ProjectionArity projection_arity(int layer, const ComponentRef& ref) const;

  /// The model's own facts (objects, connections, maps), canonically ordered.
  /// Rebuilding from these yields an identical model.
  FactSet to_facts() const;

 private:
  using Key = std::pair<int, ComponentRef>;

  SystemModel() = default;

  std::vector<Component> components_;    // sorted by (layer, ref)
  std::vector<Connection> connections_;  // canonical, sorted
  std::vector<Projection> projections_;  // sorted by (upper_layer, upper, lower)
  std::map<Key, std::size_t> index_;
  std::map<Key, std::vector<ComponentRef>> adjacency_;
  std::map<Key, std::vector<ComponentRef>> lower_;
  std::map<Key, std::vector<ComponentRef>> upper_;
};

struct SystemModel::BuildResult {
  std::optional<SystemModel> model;  // engaged iff errors is empty
  std::vector<BuildError> errors;

  bool ok() const { return errors.empty(); }
};

bool same_structure(const SystemModel& lhs, const SystemModel& rhs);

}  // namespace dsutgen
