#pragma once

#include <filesystem>
#include <optional>
#include <string_view>

#include "framecheck/fidelity.hpp"
#include "framecheck/params.hpp"

namespace framecheck {

/// Everything a run can be configured with. Span-table paths in a config file
/// resolve relative to that file.
struct RunConfig {
    ValidationParams validation;
    FidelityParams fidelity;
    std::optional<std::filesystem::path> span_table;

    /// Validates both parameter sets; call after all overrides are applied.
    void check() const;
};

/// Flat JSON object whose keys mirror the ValidationParams and FidelityParams
/// field names; `contact` is a nested object. Unknown keys are a ConfigError.
void apply_config_document(RunConfig& config, std::string_view document, const std::filesystem::path& base_dir = {});
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Single override "NAME=VALUE"; NAME may be "contact.ground_height". List
/// values use JSON syntax: spacing_standards=[0.406,0.61]. Does not call check().
void apply_param_override(RunConfig& config, std::string_view assignment);

}  // namespace framecheck
