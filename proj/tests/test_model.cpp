#include <doctest.h>

#include <stdexcept>

#include "dsutgen/facts.hpp"
#include "dsutgen/model.hpp"
#include "oracles.hpp"

using namespace dsutgen;

namespace {

SystemModel from_text(const char* text) {
  auto parsed = parse_facts(text);
  REQUIRE(parsed.ok());
  auto built = SystemModel::build(parsed.facts);
  REQUIRE(built.model.has_value());
  return std::move(*built.model);
}

std::vector<BuildError> errors_of(const char* text) {
  auto parsed = parse_facts(text);
  REQUIRE(parsed.ok());
  auto built = SystemModel::build(parsed.facts);
  REQUIRE_FALSE(built.model.has_value());
  return built.errors;
}

const char* kTwoLayer =
    "object_(layer(2), component_(vm,1), type_([]), parameters_([])).\n"
    "object_(layer(2), component_(vm,2), type_([]), parameters_([])).\n"
    "object_(layer(1), component_(host,1), type_(metal), parameters_([])).\n"
    "connection_(layer(2), component_(vm,2), component_(vm,1), parameters_([w])).\n"
    "map_(layer(2), component_(vm,1), component_(host,1), parameters_([])).\n"
    "map_(layer(2), component_(vm,2), component_(host,1), parameters_([])).";

}  // namespace

TEST_CASE("connections stored canonically and deduplicated") {
  SystemModel m = from_text(kTwoLayer);
  REQUIRE(m.connections().size() == 1);
  CHECK(m.connections()[0].a == ComponentRef{"vm", 1});
  CHECK(m.connections()[0].b == ComponentRef{"vm", 2});
  CHECK(m.connections()[0].params == std::vector<std::string>{"w"});

  SystemModel dup = from_text(
      "object_(layer(1), component_(a,1), type_(t), parameters_([])).\n"
      "object_(layer(1), component_(a,2), type_(t), parameters_([])).\n"
      "connection_(layer(1), component_(a,1), component_(a,2), parameters_([])).\n"
      "connection_(layer(1), component_(a,2), component_(a,1), parameters_([])).");
  CHECK(dup.connections().size() == 1);
}

TEST_CASE("neighbors are sorted and symmetric") {
  SystemModel m = testutil::single_layer_model(3, 4, {{3, 1}, {1, 2}, {4, 1}});
  auto nb = m.neighbors(3, testutil::node(1));
  REQUIRE(nb.size() == 3);
  CHECK(nb[0] == testutil::node(2));
  CHECK(nb[1] == testutil::node(3));
  CHECK(nb[2] == testutil::node(4));
  for (const ComponentRef& other : nb) {
    auto back = m.neighbors(3, other);
    CHECK(std::find(back.begin(), back.end(), testutil::node(1)) != back.end());
  }
  CHECK_THROWS_AS((void)m.neighbors(3, testutil::node(9)), std::out_of_range);
}

TEST_CASE("layer views partition components") {
  SystemModel m = from_text(kTwoLayer);
  CHECK(m.layer_view(2).components.size() == 2);
  CHECK(m.layer_view(1).components.size() == 1);
  CHECK(m.layer_view(3).components.empty());
  CHECK(m.layer_view(2).connections.size() == 1);
  CHECK(m.layer_view(2).projections.size() == 2);
  CHECK(m.layer_view(2).lower_components == std::vector<ComponentRef>{{"host", 1}});
  CHECK(m.layer_view(1).projections.empty());
  CHECK(m.layer_view(1).lower_components.empty());
}

TEST_CASE("projection images") {
  SystemModel m = from_text(kTwoLayer);
  CHECK(m.lower_images(2, ComponentRef{"vm", 1}) == std::vector<ComponentRef>{{"host", 1}});
  CHECK(m.upper_images(1, ComponentRef{"host", 1}) ==
        std::vector<ComponentRef>{{"vm", 1}, {"vm", 2}});
  CHECK(m.lower_images(1, ComponentRef{"host", 1}).empty());
  CHECK_THROWS_AS((void)m.lower_images(2, ComponentRef{"vm", 9}), std::out_of_range);
}

TEST_CASE("build error catalogue") {
  auto dangling = errors_of(
      "object_(layer(1), component_(a,1), type_(t), parameters_([])).\n"
      "connection_(layer(1), component_(a,1), component_(ghost,1), parameters_([])).");
  REQUIRE(dangling.size() == 1);
  CHECK(dangling[0].code == BuildError::Code::dangling_endpoint);
  CHECK(dangling[0].detail.find("ghost") != std::string::npos);

  auto self_loop = errors_of(
      "object_(layer(1), component_(a,1), type_(t), parameters_([])).\n"
      "connection_(layer(1), component_(a,1), component_(a,1), parameters_([])).");
  CHECK(self_loop[0].code == BuildError::Code::self_loop);

  auto cross = errors_of(
      "object_(layer(1), component_(a,1), type_(t), parameters_([])).\n"
      "object_(layer(2), component_(b,1), type_([]), parameters_([])).\n"
      "connection_(layer(1), component_(a,1), component_(b,1), parameters_([])).");
  CHECK(cross[0].code == BuildError::Code::cross_layer_connection);

  auto dup = errors_of(
      "object_(layer(1), component_(a,1), type_(t), parameters_([])).\n"
      "object_(layer(1), component_(a,1), type_(u), parameters_([])).");
  CHECK(dup[0].code == BuildError::Code::duplicate_component);

  auto bad_map = errors_of(
      "object_(layer(1), component_(a,1), type_(t), parameters_([])).\n"
      "object_(layer(1), component_(b,1), type_(t), parameters_([])).\n"
      "map_(layer(1), component_(a,1), component_(b,1), parameters_([])).");
  CHECK(bad_map[0].code == BuildError::Code::bad_projection_layers);

  auto several = errors_of(
      "connection_(layer(1), component_(a,1), component_(b,1), parameters_([])).\n"
      "connection_(layer(2), component_(c,1), component_(d,1), parameters_([])).");
  CHECK(several.size() == 4);  // all collected, not just the first
}

TEST_CASE("projection arity classification") {
  SystemModel m = from_text(
      "object_(layer(2), component_(dedicated,1), type_([]), parameters_([])).\n"
      "object_(layer(2), component_(cluster,1), type_([]), parameters_([])).\n"
      "object_(layer(2), component_(shared_a,1), type_([]), parameters_([])).\n"
      "object_(layer(2), component_(shared_b,1), type_([]), parameters_([])).\n"
      "object_(layer(2), component_(wide,1), type_([]), parameters_([])).\n"
      "object_(layer(1), component_(h,1), type_(t), parameters_([])).\n"
      "object_(layer(1), component_(h,2), type_(t), parameters_([])).\n"
      "object_(layer(1), component_(h,3), type_(t), parameters_([])).\n"
      "object_(layer(1), component_(h,4), type_(t), parameters_([])).\n"
      "object_(layer(1), component_(h,5), type_(t), parameters_([])).\n"
      "map_(layer(2), component_(dedicated,1), component_(h,1), parameters_([])).\n"
      "map_(layer(2), component_(cluster,1), component_(h,2), parameters_([])).\n"
      "map_(layer(2), component_(cluster,1), component_(h,3), parameters_([])).\n"
      "map_(layer(2), component_(shared_a,1), component_(h,4), parameters_([])).\n"
      "map_(layer(2), component_(shared_b,1), component_(h,4), parameters_([])).\n"
      "map_(layer(2), component_(wide,1), component_(h,4), parameters_([])).\n"
      "map_(layer(2), component_(wide,1), component_(h,5), parameters_([])).");
  CHECK(m.projection_arity(2, ComponentRef{"dedicated", 1}) == ProjectionArity::one_to_one);
  CHECK(m.projection_arity(2, ComponentRef{"cluster", 1}) == ProjectionArity::one_to_many);
  CHECK(m.projection_arity(2, ComponentRef{"shared_a", 1}) == ProjectionArity::many_to_one);
  CHECK(m.projection_arity(2, ComponentRef{"shared_b", 1}) == ProjectionArity::many_to_one);
  CHECK(m.projection_arity(2, ComponentRef{"wide", 1}) == ProjectionArity::many_to_many);

  SystemModel bare = from_text("object_(layer(2), component_(x,1), type_([]), parameters_([])).");
  CHECK_THROWS_AS((void)bare.projection_arity(2, ComponentRef{"x", 1}), std::domain_error);
}

TEST_CASE("model round trips through its own facts") {
  SystemModel m = from_text(kTwoLayer);
  auto rebuilt = SystemModel::build(m.to_facts());
  REQUIRE(rebuilt.model.has_value());
  CHECK(same_structure(m, *rebuilt.model));
}

TEST_CASE("empty fact set builds an empty model") {
  auto built = SystemModel::build(FactSet{});
  REQUIRE(built.model.has_value());
  CHECK(built.model->components().empty());
}

TEST_CASE("duplicate maps are deduplicated") {
  SystemModel m = from_text(
      "object_(layer(2), component_(vm,1), type_([]), parameters_([])).\n"
      "object_(layer(1), component_(h,1), type_(t), parameters_([])).\n"
      "map_(layer(2), component_(vm,1), component_(h,1), parameters_([])).\n"
      "map_(layer(2), component_(vm,1), component_(h,1), parameters_([])).");
  CHECK(m.projections().size() == 1);
  CHECK(m.lower_images(2, ComponentRef{"vm", 1}).size() == 1);
}
