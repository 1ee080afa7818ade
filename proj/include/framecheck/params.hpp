#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "framecheck/contact.hpp"

namespace framecheck {

/// Nominal lumber size, actual dimensions in millimetres, width <= depth.
struct LumberSize {
    double width_mm = 0.0;
    double depth_mm = 0.0;

    friend bool operator==(const LumberSize&, const LumberSize&) = default;
};

/// The standard nominal-dimension set used for T4 and span-table keys.
std::vector<LumberSize> default_lumber_set();

/// Every threshold used by the ten structural tests.
struct ValidationParams {
    double span_tolerance_tau = 0.03;
    std::vector<double> spacing_standards{0.406, 0.610};
    double spacing_tolerance = 0.05;
    double spacing_exempt_below = 0.1;
    std::vector<LumberSize> lumber_set_Lambda = default_lumber_set();
    double lumber_tol_w = 10.0;  // mm
    double lumber_tol_d = 20.0;  // mm
    double deflection_load_w = 1900.0;  // N/m
    double elastic_modulus_E = 12e9;    // Pa
    double deflection_tolerance_tau_delta = 0.08;
    double grid_cell = 1.0;
    double rafter_margin_mu = 0.3;
    double coverage_min_rho = 0.70;
    double gap_max_gamma = 0.20;
    double cantilever_max_c = 1.5;
    double cantilever_spacing_c_sp = 3.0;
    double elevated_sill_z = 1.0;
    double zone_fraction_alpha = 0.20;
    double zone_tolerance_eps_c = 0.10;
    double min_dualend_height = 0.3;
    ContactParams contact{};

    /// Throws ConfigError on a non-positive value or a ratio outside (0,1).
    void check() const;
};

}  // namespace framecheck
