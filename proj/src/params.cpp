#include "framecheck/params.hpp"

#include <cmath>

#include <fmt/format.h>

#include "framecheck/errors.hpp"

namespace framecheck {

std::vector<LumberSize> default_lumber_set() {
    return {{38, 89}, {38, 140}, {38, 184}, {38, 235}, {38, 286}, {89, 89}, {140, 140}};
}

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(fmt::format("parameter '{}' must be positive", name));
}

void require_ratio(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) throw ConfigError(fmt::format("parameter '{}' must lie in (0, 1)", name));
}

}  // namespace

void ValidationParams::check() const {
    require_positive(span_tolerance_tau, "span_tolerance_tau");
    if (spacing_standards.empty()) throw ConfigError("parameter 'spacing_standards' must not be empty");
    for (double s : spacing_standards) require_positive(s, "spacing_standards");
    require_positive(spacing_tolerance, "spacing_tolerance");
    require_positive(spacing_exempt_below, "spacing_exempt_below");
    if (lumber_set_Lambda.empty()) throw ConfigError("parameter 'lumber_set_Lambda' must not be empty");
    for (const auto& l : lumber_set_Lambda) {
        require_positive(l.width_mm, "lumber_set_Lambda");
        require_positive(l.depth_mm, "lumber_set_Lambda");
        if (l.width_mm > l.depth_mm) throw ConfigError("lumber_set_Lambda entries must be (width <= depth)");
    }
    require_positive(lumber_tol_w, "lumber_tol_w");
    require_positive(lumber_tol_d, "lumber_tol_d");
    require_positive(deflection_load_w, "deflection_load_w");
    require_positive(elastic_modulus_E, "elastic_modulus_E");
    require_positive(deflection_tolerance_tau_delta, "deflection_tolerance_tau_delta");
    require_positive(grid_cell, "grid_cell");
    require_positive(rafter_margin_mu, "rafter_margin_mu");
    require_ratio(coverage_min_rho, "coverage_min_rho");
    require_ratio(gap_max_gamma, "gap_max_gamma");
    require_positive(cantilever_max_c, "cantilever_max_c");
    require_positive(cantilever_spacing_c_sp, "cantilever_spacing_c_sp");
    require_positive(elevated_sill_z, "elevated_sill_z");
    require_ratio(zone_fraction_alpha, "zone_fraction_alpha");
    require_positive(zone_tolerance_eps_c, "zone_tolerance_eps_c");
    require_positive(min_dualend_height, "min_dualend_height");
    require_positive(contact.contact_tolerance_eps, "contact_tolerance_eps");
    require_positive(contact.ground_height, "ground_height");
}

}  // namespace framecheck
