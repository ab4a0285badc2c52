#pragma once

#include <string>
#include <string_view>

#include "dsutgen/bounds.hpp"
#include "dsutgen/generate.hpp"

namespace dsutgen {

/// Human-readable table, one row group per layer, functional layer first.
std::string render_table(const StrategyReport& report);

/// Machine-readable report with a fixed key order; byte-identical across
/// runs for identical inputs.  Newline-terminated.
std::string render_json(const StrategyReport& report, const StrategyConfig& config,
                        std::string_view tool_version);

/// Bound estimate table; `label` names the bound flavor shown.
std::string render_bounds_table(const BoundInputs& inputs, const BoundsFragment& fragment,
                                std::string_view label, bool worst_case);

}  // namespace dsutgen
