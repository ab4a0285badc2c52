#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dsutgen/model.hpp"

namespace dsutgen {

enum class Severity { error, warning, info };

const char* to_string(Severity severity);

/// A finding about a model, a requirement set, or a generation run.
/// Diagnostics are plain values; callers decide what to do with them.
struct Diagnostic {
  Severity severity = Severity::info;
  std::string code;
  int layer = 0;
  std::string subject;
  std::string message;
};

namespace diag {
inline constexpr std::string_view kEmptyLayer = "EMPTY_LAYER";
inline constexpr std::string_view kNoProjection = "NO_PROJECTION";
inline constexpr std::string_view kUntypedConcrete = "UNTYPED_CONCRETE";
inline constexpr std::string_view kNoUpwardImage = "NO_UPWARD_IMAGE";
inline constexpr std::string_view kNoTopLevelRequirement = "NO_TOP_LEVEL_REQUIREMENT";
inline constexpr std::string_view kUnknownClass = "UNKNOWN_CLASS";
inline constexpr std::string_view kBadReqLayer = "BAD_REQ_LAYER";
inline constexpr std::string_view kPhantomRisk = "PHANTOM_RISK";
inline constexpr std::string_view kCriterion1Violation = "CRITERION1_VIOLATION";
inline constexpr std::string_view kCriterion2Violation = "CRITERION2_VIOLATION";
inline constexpr std::string_view kNoProjectionForTemplate = "NO_PROJECTION_FOR_TEMPLATE";
inline constexpr std::string_view kPathsTruncated = "PATHS_TRUNCATED";
inline constexpr std::string_view kBoundExceeded = "BOUND_EXCEEDED";
}  // namespace diag

/// Structural completeness checks on a built model.
std::vector<Diagnostic> validate_model(const SystemModel& model);

/// Requirement sanity checks against a model.
std::vector<Diagnostic> validate_requirements(const SystemModel& model,
                                              std::span<const RequirementFact> requirements);

/// Flags components of layers 2..4 that are cut vertices of their layer
/// graph: every route between some pair of components passes through them,
/// so a mis-modelled connection there can smuggle paths between otherwise
/// unrelated subsystems.
std::vector<Diagnostic> lint_phantom_risk(const SystemModel& model);

bool has_errors(std::span<const Diagnostic> diagnostics);

/// "severity CODE layer=N subject message"
std::string format_diagnostic(const Diagnostic& diagnostic);

}  // namespace dsutgen
