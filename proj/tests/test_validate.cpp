#include <doctest.h>

#include <random>

#include "dsutgen/facts.hpp"
#include "dsutgen/model.hpp"
#include "dsutgen/validate.hpp"
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

std::vector<Diagnostic> with_code(const std::vector<Diagnostic>& all, std::string_view code) {
  std::vector<Diagnostic> out;
  for (const Diagnostic& d : all) {
    if (d.code == code) out.push_back(d);
  }
  return out;
}

}  // namespace

TEST_CASE("empty layers are errors") {
  SystemModel m = from_text("object_(layer(4), component_(a,1), type_([]), parameters_([])).");
  auto empty = with_code(validate_model(m), diag::kEmptyLayer);
  REQUIRE(empty.size() == 3);
  for (const Diagnostic& d : empty) CHECK(d.severity == Severity::error);
  CHECK(has_errors(validate_model(m)));
}

TEST_CASE("missing projection is an error except on layer 1") {
  SystemModel m = from_text(
      "object_(layer(2), component_(vm,1), type_([]), parameters_([])).\n"
      "object_(layer(2), component_(vm,2), type_([]), parameters_([])).\n"
      "object_(layer(1), component_(h,1), type_(t), parameters_([])).\n"
      "map_(layer(2), component_(vm,1), component_(h,1), parameters_([])).");
  auto missing = with_code(validate_model(m), diag::kNoProjection);
  REQUIRE(missing.size() == 1);
  CHECK(missing[0].layer == 2);
  CHECK(missing[0].subject == "(vm,2)");
  CHECK(missing[0].severity == Severity::error);
}

TEST_CASE("untyped concrete components warn on layers 1 and 3 only") {
  SystemModel m = from_text(
      "object_(layer(1), component_(h,1), type_([]), parameters_([])).\n"
      "object_(layer(2), component_(vm,1), type_([]), parameters_([])).\n"
      "object_(layer(3), component_(s,1), type_([]), parameters_([])).\n"
      "object_(layer(4), component_(f,1), type_([]), parameters_([])).");
  auto untyped = with_code(validate_model(m), diag::kUntypedConcrete);
  REQUIRE(untyped.size() == 2);
  CHECK(untyped[0].severity == Severity::warning);
  CHECK(untyped[0].layer == 1);
  CHECK(untyped[1].layer == 3);
}

TEST_CASE("missing upward image is informational") {
  SystemModel m = from_text(
      "object_(layer(2), component_(vm,1), type_([]), parameters_([])).\n"
      "object_(layer(1), component_(h,1), type_(t), parameters_([])).\n"
      "object_(layer(1), component_(h,2), type_(t), parameters_([])).\n"
      "map_(layer(2), component_(vm,1), component_(h,1), parameters_([])).");
  auto infos = with_code(validate_model(m), diag::kNoUpwardImage);
  REQUIRE(infos.size() == 2);  // (h,2) and (vm,1)
  for (const Diagnostic& d : infos) CHECK(d.severity == Severity::info);
}

TEST_CASE("top level requirement must exist and bind something") {
  SystemModel m = from_text(
      "object_(layer(4), component_(f,1), type_([]), parameters_([])).\n"
      "object_(layer(4), component_(g,1), type_([]), parameters_([])).");

  auto parsed = parse_facts("requirement_(layer(2), _, _).");
  REQUIRE(parsed.ok());
  auto diags = validate_requirements(m, parsed.facts.requirements);
  CHECK(with_code(diags, diag::kNoTopLevelRequirement).size() == 1);
  CHECK(has_errors(diags));

  auto good = parse_facts("requirement_(layer(4), component_(f,_), _).");
  REQUIRE(good.ok());
  CHECK(with_code(validate_requirements(m, good.facts.requirements),
                  diag::kNoTopLevelRequirement)
            .empty());

  auto any_only = parse_facts("requirement_(layer(4), _, _).");
  REQUIRE(any_only.ok());
  CHECK(with_code(validate_requirements(m, any_only.facts.requirements),
                  diag::kNoTopLevelRequirement)
            .size() == 1);
}

TEST_CASE("unknown classes and bad layers in requirements") {
  SystemModel m = from_text(
      "object_(layer(3), component_(dns_server,1), type_(t), parameters_([])).\n"
      "object_(layer(4), component_(f,1), type_([]), parameters_([])).");
  auto parsed = parse_facts(
      "requirement_(layer(4), component_(f,1), _).\n"
      "requirement_(layer(3), component_(dns_serverr,_), component_(dns_server,_)).\n"
      "requirement_(layer(7), _, _).");
  REQUIRE(parsed.ok());
  auto diags = validate_requirements(m, parsed.facts.requirements);

  auto unknown = with_code(diags, diag::kUnknownClass);
  REQUIRE(unknown.size() == 1);
  CHECK(unknown[0].layer == 3);
  CHECK(unknown[0].subject.find("r2") != std::string::npos);
  CHECK(unknown[0].subject.find("dns_serverr") != std::string::npos);

  auto bad_layer = with_code(diags, diag::kBadReqLayer);
  REQUIRE(bad_layer.size() == 1);
  CHECK(bad_layer[0].subject.find("r3") != std::string::npos);
}

TEST_CASE("exact pattern with unknown class is flagged") {
  SystemModel m = from_text("object_(layer(4), component_(f,1), type_([]), parameters_([])).");
  auto parsed = parse_facts("requirement_(layer(4), component_(f,1), component_(nope,2)).");
  REQUIRE(parsed.ok());
  CHECK(with_code(validate_requirements(m, parsed.facts.requirements), diag::kUnknownClass)
            .size() == 1);
}

TEST_CASE("phantom risk flags cut vertices on layers 2 to 4") {
  SystemModel line = testutil::single_layer_model(3, 3, {{1, 2}, {2, 3}});
  auto diags = lint_phantom_risk(line);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].code == diag::kPhantomRisk);
  CHECK(diags[0].severity == Severity::info);
  CHECK(diags[0].subject == "(c,2)");

  SystemModel cycle = testutil::single_layer_model(2, 3, {{1, 2}, {2, 3}, {3, 1}});
  CHECK(lint_phantom_risk(cycle).empty());

  SystemModel physical = testutil::single_layer_model(1, 3, {{1, 2}, {2, 3}});
  CHECK(lint_phantom_risk(physical).empty());  // layer 1 exempt
}

TEST_CASE("transit chain is fully flagged") {
  // service chain: client - ss - dns - ss - server modeled with direct links
  SystemModel chain = testutil::single_layer_model(3, 5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}});
  auto diags = lint_phantom_risk(chain);
  REQUIRE(diags.size() == 3);
  CHECK(diags[0].subject == "(c,2)");
  CHECK(diags[1].subject == "(c,3)");
  CHECK(diags[2].subject == "(c,4)");
}

TEST_CASE("cut vertex lint matches brute force oracle on random graphs") {
  std::mt19937 rng(987654321);
  for (int i = 0; i < 60; ++i) {
    int n = std::uniform_int_distribution<int>(2, 10)(rng);
    SystemModel m =
        testutil::single_layer_model(3, n, testutil::random_connected_edges(rng, n, 0.2));
    std::set<std::string> reported;
    for (const Diagnostic& d : lint_phantom_risk(m)) reported.insert(d.subject);
    std::set<std::string> expected;
    for (const ComponentRef& v : testutil::oracle_cut_vertices(m, 3)) {
      expected.insert(to_string(v));
    }
    CAPTURE(n);
    CHECK(reported == expected);
  }
}

TEST_CASE("diagnostic line format") {
  Diagnostic d{Severity::warning, "UNTYPED_CONCRETE", 3, "(s,1)", "component has no type label"};
  CHECK(format_diagnostic(d) == "warning UNTYPED_CONCRETE layer=3 (s,1) component has no type label");
}
