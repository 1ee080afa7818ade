#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "framecheck/scene.hpp"
#include "framecheck/validators.hpp"

namespace framecheck {

/// Which rule decides the visual pass: every view >= tau, or the mean >= tau.
enum class VisualPassRule { AllViews, Mean };

struct FidelityParams {
    double match_tolerance_delta = 0.3;  ///< m
    double w_C = 0.3;
    double w_M = 0.4;
    double w_V = 0.3;
    double voxel_resolution = 0.1;  ///< m
    double visual_lambda = 10.0;
    double visual_threshold_tau = 0.6;
    double alpha_cutoff = 0.0;  ///< alpha strictly above this is foreground
    VisualPassRule visual_pass_rule = VisualPassRule::AllViews;

    /// Throws ConfigError unless weights are positive, sum to 1 and w_M > w_C = w_V.
    void check() const;
};

struct TopoScores {
    double census_C = 1.0;
    double match_M = 1.0;
    double voxel_V = 1.0;
    double composite_T = 1.0;
};

/// Mean over present categories of min(n_ref, n_gen) / max(n_ref, n_gen).
double census_accuracy(const Scene& reference, const Scene& generated);

/// Fraction of reference members whose optimally assigned generated member
/// (by centroid distance) lies within delta.
double hungarian_match(const Scene& reference, const Scene& generated, const FidelityParams& p);

/// IoU of centre-sampled voxel occupancy on a grid anchored at the joint minimum.
double voxel_iou(const Scene& reference, const Scene& generated, const FidelityParams& p);

double composite_topo(double census_C, double match_M, double voxel_V, const FidelityParams& p);

TopoScores topo_scores(const Scene& reference, const Scene& generated, const FidelityParams& p);

// --- visual fidelity -------------------------------------------------------

enum class ViewId { Front, Back, Left, Right, FrontRight };

inline constexpr std::array<ViewId, 5> kAllViews{ViewId::Front, ViewId::Back, ViewId::Left, ViewId::Right,
                                                 ViewId::FrontRight};
inline constexpr int kScoringSize = 512;

std::string_view view_name(ViewId v);  // "front_right", also the PNG stem
std::optional<ViewId> view_from_string(std::string_view name);

/// Camera placement used for the reference renders; informational metadata.
struct ViewCamera {
    double azimuth_deg;
    double elevation_deg;
    double distance_multiplier;
};
ViewCamera view_camera(ViewId v);

/// RGBA raster with channels in [0,1]; rgb is interleaved, 3 floats per pixel.
struct RasterView {
    ViewId view = ViewId::Front;
    int width = 0;
    int height = 0;
    std::vector<float> rgb;
    std::vector<float> alpha;

    RasterView() = default;
    RasterView(ViewId v, int w, int h);

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }
    void set(int x, int y, float r, float g, float b, float a);
};

/// Area-averaging resample of rgb and alpha to the given size.
RasterView resize_area(const RasterView& src, int width, int height);

/// Union-mask mean squared RGB error (summed over channels); 0 when the mask is empty.
double masked_mse(const RasterView& generated, const RasterView& reference, const FidelityParams& p);

/// max(0, 1 - lambda * MSE) over the union alpha mask; 1 when both masks are empty.
/// Both rasters must already share dimensions.
double view_score(const RasterView& generated, const RasterView& reference, const FidelityParams& p);

struct VisualScores {
    std::array<double, 5> per_view{1, 1, 1, 1, 1};  ///< indexed like kAllViews
    double mean_S = 1.0;
    bool all_views_pass = true;
    bool mean_pass = true;
    bool joint_visual_pass = true;  ///< per FidelityParams::visual_pass_rule
};

/// Requires each canonical view exactly once on both sides; resizes to 512x512.
VisualScores visual_scores(std::span<const RasterView> generated, std::span<const RasterView> reference,
                           const FidelityParams& p);

/// Structural validity and visual pass together.
bool joint_pass(const SuiteReport& report, const VisualScores& visual);

}  // namespace framecheck
