#include "framecheck/config.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include "framecheck/errors.hpp"
#include "framecheck/scene_io.hpp"

namespace framecheck {

using nlohmann::json;

namespace {

double as_number(const json& v, std::string_view key) {
    if (!v.is_number()) throw ConfigError(fmt::format("config '{}': expected a number", key));
    return v.get<double>();
}

void set_contact(ContactParams& c, std::string_view key, const json& v) {
    if (key == "contact_tolerance_eps") c.contact_tolerance_eps = as_number(v, key);
    else if (key == "ground_height") c.ground_height = as_number(v, key);
    else throw ConfigError(fmt::format("unknown config key 'contact.{}'", key));
}

void set_key(RunConfig& cfg, std::string_view key, const json& v, const std::filesystem::path& base_dir) {
    ValidationParams& p = cfg.validation;
    FidelityParams& f = cfg.fidelity;
    struct Scalar {
        std::string_view name;
        double* target;
    };
    const Scalar scalars[] = {
        {"span_tolerance_tau", &p.span_tolerance_tau},
        {"spacing_tolerance", &p.spacing_tolerance},
        {"spacing_exempt_below", &p.spacing_exempt_below},
        {"lumber_tol_w", &p.lumber_tol_w},
        {"lumber_tol_d", &p.lumber_tol_d},
        {"deflection_load_w", &p.deflection_load_w},
        {"elastic_modulus_E", &p.elastic_modulus_E},
        {"deflection_tolerance_tau_delta", &p.deflection_tolerance_tau_delta},
        {"grid_cell", &p.grid_cell},
        {"rafter_margin_mu", &p.rafter_margin_mu},
        {"coverage_min_rho", &p.coverage_min_rho},
        {"gap_max_gamma", &p.gap_max_gamma},
        {"cantilever_max_c", &p.cantilever_max_c},
        {"cantilever_spacing_c_sp", &p.cantilever_spacing_c_sp},
        {"elevated_sill_z", &p.elevated_sill_z},
        {"zone_fraction_alpha", &p.zone_fraction_alpha},
        {"zone_tolerance_eps_c", &p.zone_tolerance_eps_c},
        {"min_dualend_height", &p.min_dualend_height},
        {"match_tolerance_delta", &f.match_tolerance_delta},
        {"w_C", &f.w_C},
        {"w_M", &f.w_M},
        {"w_V", &f.w_V},
        {"voxel_resolution", &f.voxel_resolution},
        {"visual_lambda", &f.visual_lambda},
        {"visual_threshold_tau", &f.visual_threshold_tau},
        {"alpha_cutoff", &f.alpha_cutoff},
    };
    for (const Scalar& s : scalars) {
        if (s.name == key) {
            *s.target = as_number(v, key);
            return;
        }
    }
    if (key == "spacing_standards") {
        if (!v.is_array() || v.empty()) throw ConfigError("config 'spacing_standards': expected a non-empty array");
        p.spacing_standards.clear();
        for (const auto& e : v) p.spacing_standards.push_back(as_number(e, key));
    } else if (key == "lumber_set_Lambda") {
        if (!v.is_array() || v.empty()) throw ConfigError("config 'lumber_set_Lambda': expected a non-empty array");
        p.lumber_set_Lambda.clear();
        for (const auto& e : v) {
            if (!e.is_array() || e.size() != 2) {
                throw ConfigError("config 'lumber_set_Lambda': entries must be [width_mm, depth_mm]");
            }
            p.lumber_set_Lambda.push_back({as_number(e[0], key), as_number(e[1], key)});
        }
    } else if (key == "contact") {
        if (!v.is_object()) throw ConfigError("config 'contact': expected an object");
        for (const auto& [k, e] : v.items()) set_contact(p.contact, k, e);
    } else if (key.starts_with("contact.")) {
        set_contact(p.contact, key.substr(8), v);
    } else if (key == "visual_pass_rule") {
        const std::string rule = v.is_string() ? v.get<std::string>() : "";
        if (rule == "all_views") f.visual_pass_rule = VisualPassRule::AllViews;
        else if (rule == "mean") f.visual_pass_rule = VisualPassRule::Mean;
        else throw ConfigError("config 'visual_pass_rule': expected \"all_views\" or \"mean\"");
    } else if (key == "span_table") {
        if (!v.is_string()) throw ConfigError("config 'span_table': expected a path string");
        const std::filesystem::path path = v.get<std::string>();
        cfg.span_table = path.is_relative() && !base_dir.empty() ? base_dir / path : path;
    } else {
        throw ConfigError(fmt::format("unknown config key '{}'", key));
    }
}

}  // namespace

void apply_config_document(RunConfig& config, std::string_view document, const std::filesystem::path& base_dir) {
    json root;
    try {
        root = json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(document, e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigError(fmt::format("malformed config at line {}, column {}", line, column));
    }
    if (!root.is_object()) throw ConfigError("config document must be a JSON object");
    for (const auto& [k, v] : root.items()) set_key(config, k, v, base_dir);
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const ParseError& e) {
        throw ConfigError(e.what());
    }
    apply_config_document(config, text, path.parent_path());
}

void apply_param_override(RunConfig& config, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError(fmt::format("--param expects NAME=VALUE, got '{}'", assignment));
    }
    const std::string_view key = assignment.substr(0, eq);
    const std::string_view raw = assignment.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw.begin(), raw.end());
    } catch (const json::parse_error&) {
        value = std::string(raw);  // bare words such as visual_pass_rule=mean
    }
    set_key(config, key, value, {});
}

void RunConfig::check() const {
    validation.check();
    fidelity.check();
}

}  // namespace framecheck
