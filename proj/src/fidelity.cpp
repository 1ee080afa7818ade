#include "framecheck/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "framecheck/errors.hpp"
#include "framecheck/hungarian.hpp"

namespace framecheck {

void FidelityParams::check() const {
    if (!(w_C > 0.0 && w_M > 0.0 && w_V > 0.0)) throw ConfigError("fidelity weights must be positive");
    if (std::abs(w_C + w_M + w_V - 1.0) > 1e-9) {
        throw ConfigError(fmt::format("fidelity weights must sum to 1 (got {})", w_C + w_M + w_V));
    }
    if (!(w_M > w_C) || w_C != w_V) throw ConfigError("fidelity weights must satisfy w_M > w_C = w_V");
    if (!(match_tolerance_delta > 0.0)) throw ConfigError("match_tolerance_delta must be positive");
    if (!(voxel_resolution > 0.0)) throw ConfigError("voxel_resolution must be positive");
    if (!(visual_lambda > 0.0)) throw ConfigError("visual_lambda must be positive");
    if (!(visual_threshold_tau > 0.0 && visual_threshold_tau <= 1.0)) {
        throw ConfigError("visual_threshold_tau must lie in (0, 1]");
    }
    if (!(alpha_cutoff >= 0.0 && alpha_cutoff < 1.0)) throw ConfigError("alpha_cutoff must lie in [0, 1)");
}

// ---------------------------------------------------------------------------
// Topological fidelity

double census_accuracy(const Scene& reference, const Scene& generated) {
    std::array<std::size_t, kCategoryCount> ref{};
    std::array<std::size_t, kCategoryCount> gen{};
    for (const Member& m : reference.members) ++ref[static_cast<std::size_t>(m.category)];
    for (const Member& m : generated.members) ++gen[static_cast<std::size_t>(m.category)];
    double sum = 0.0;
    std::size_t present = 0;
    for (std::size_t k = 0; k < kCategoryCount; ++k) {
        const std::size_t hi = std::max(ref[k], gen[k]);
        if (hi == 0) continue;
        ++present;
        sum += static_cast<double>(std::min(ref[k], gen[k])) / static_cast<double>(hi);
    }
    return present == 0 ? 1.0 : sum / static_cast<double>(present);
}

double hungarian_match(const Scene& reference, const Scene& generated, const FidelityParams& p) {
    const std::size_t n_ref = reference.members.size();
    const std::size_t n_gen = generated.members.size();
    if (n_ref == 0) return n_gen == 0 ? 1.0 : 0.0;
    if (n_gen == 0) return 0.0;

    std::vector<Vec3> a(n_ref);
    std::vector<Vec3> b(n_gen);
    Vec3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
    Vec3 hi{-lo.x, -lo.y, -lo.z};
    auto grow = [&](const Vec3& c) {
        for (int k = 0; k < 3; ++k) {
            lo[k] = std::min(lo[k], c[k]);
            hi[k] = std::max(hi[k], c[k]);
        }
    };
    for (std::size_t i = 0; i < n_ref; ++i) grow(a[i] = reference.members[i].box.center());
    for (std::size_t j = 0; j < n_gen; ++j) grow(b[j] = generated.members[j].box.center());

    auto distance = [](const Vec3& u, const Vec3& w) { return std::hypot(u.x - w.x, u.y - w.y, u.z - w.z); };
    CostMatrix cost(n_ref, n_gen);
    for (std::size_t i = 0; i < n_ref; ++i) {
        for (std::size_t j = 0; j < n_gen; ++j) cost(i, j) = distance(a[i], b[j]);
    }
    const double diagonal = distance(lo, hi);
    const Assignment match = solve_assignment(cost, diagonal + 1.0);

    std::size_t within = 0;
    for (std::size_t i = 0; i < n_ref; ++i) {
        const long j = match.row_to_col[i];
        if (j >= 0 && cost(i, static_cast<std::size_t>(j)) <= p.match_tolerance_delta) ++within;
    }
    return static_cast<double>(within) / static_cast<double>(n_ref);
}

namespace {

struct VoxelGrid {
    Vec3 origin;
    double cell = 0.1;
    std::size_t nx = 0, ny = 0, nz = 0;

    std::size_t size() const { return nx * ny * nz; }
};

// Index range of voxel centres inside [lo, hi] on one axis.
std::pair<long, long> centre_range(double lo, double hi, double origin, double cell, std::size_t n) {
    long first = static_cast<long>(std::floor((lo - origin) / cell - 0.5)) - 1;
    long last = static_cast<long>(std::ceil((hi - origin) / cell - 0.5)) + 1;
    first = std::max(first, 0L);
    last = std::min(last, static_cast<long>(n) - 1);
    while (first <= last && origin + (static_cast<double>(first) + 0.5) * cell < lo) ++first;
    while (last >= first && origin + (static_cast<double>(last) + 0.5) * cell > hi) --last;
    return {first, last};
}

std::vector<unsigned char> voxelize(const Scene& scene, const VoxelGrid& g) {
    std::vector<unsigned char> occ(g.size(), 0);
    for (const Member& m : scene.members) {
        const auto [i0, i1] = centre_range(m.box.min.x, m.box.max.x, g.origin.x, g.cell, g.nx);
        const auto [j0, j1] = centre_range(m.box.min.y, m.box.max.y, g.origin.y, g.cell, g.ny);
        const auto [k0, k1] = centre_range(m.box.min.z, m.box.max.z, g.origin.z, g.cell, g.nz);
        for (long k = k0; k <= k1; ++k) {
            for (long j = j0; j <= j1; ++j) {
                const std::size_t row = (static_cast<std::size_t>(k) * g.ny + static_cast<std::size_t>(j)) * g.nx;
                for (long i = i0; i <= i1; ++i) occ[row + static_cast<std::size_t>(i)] = 1;
            }
        }
    }
    return occ;
}

constexpr std::size_t kMaxVoxels = 200000000;

}  // namespace

double voxel_iou(const Scene& reference, const Scene& generated, const FidelityParams& p) {
    if (reference.members.empty() && generated.members.empty()) return 1.0;

    const double inf = std::numeric_limits<double>::infinity();
    Vec3 lo{inf, inf, inf};
    Vec3 hi{-inf, -inf, -inf};
    for (const Scene* s : {&reference, &generated}) {
        for (const Member& m : s->members) {
            for (int k = 0; k < 3; ++k) {
                lo[k] = std::min(lo[k], m.box.min[k]);
                hi[k] = std::max(hi[k], m.box.max[k]);
            }
        }
    }
    VoxelGrid g;
    g.origin = lo;
    g.cell = p.voxel_resolution;
    g.nx = static_cast<std::size_t>(std::max(1.0, std::ceil((hi.x - lo.x) / g.cell)));
    g.ny = static_cast<std::size_t>(std::max(1.0, std::ceil((hi.y - lo.y) / g.cell)));
    g.nz = static_cast<std::size_t>(std::max(1.0, std::ceil((hi.z - lo.z) / g.cell)));
    if (static_cast<double>(g.nx) * static_cast<double>(g.ny) * static_cast<double>(g.nz) >
        static_cast<double>(kMaxVoxels)) {
        throw ConfigError("voxel grid too large for the scene extent; raise voxel_resolution");
    }

    const auto a = voxelize(reference, g);
    const auto b = voxelize(generated, g);
    std::size_t inter = 0;
    std::size_t uni = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        inter += static_cast<std::size_t>(a[i] & b[i]);
        uni += static_cast<std::size_t>(a[i] | b[i]);
    }
    return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double composite_topo(double census_C, double match_M, double voxel_V, const FidelityParams& p) {
    if (std::abs(p.w_C + p.w_M + p.w_V - 1.0) > 1e-9) {
        throw ConfigError(fmt::format("fidelity weights must sum to 1 (got {})", p.w_C + p.w_M + p.w_V));
    }
    for (double v : {census_C, match_M, voxel_V}) {
        if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("composite inputs must lie in [0, 1]");
    }
    return p.w_C * census_C + p.w_M * match_M + p.w_V * voxel_V;
}

TopoScores topo_scores(const Scene& reference, const Scene& generated, const FidelityParams& p) {
    TopoScores s;
    s.census_C = census_accuracy(reference, generated);
    s.match_M = hungarian_match(reference, generated, p);
    s.voxel_V = voxel_iou(reference, generated, p);
    s.composite_T = composite_topo(s.census_C, s.match_M, s.voxel_V, p);
    return s;
}

// ---------------------------------------------------------------------------
// Visual fidelity

std::string_view view_name(ViewId v) {
    switch (v) {
        case ViewId::Front: return "front";
        case ViewId::Back: return "back";
        case ViewId::Left: return "left";
        case ViewId::Right: return "right";
        case ViewId::FrontRight: return "front_right";
    }
    return "?";
}

std::optional<ViewId> view_from_string(std::string_view name) {
    for (ViewId v : kAllViews) {
        if (view_name(v) == name) return v;
    }
    return std::nullopt;
}

ViewCamera view_camera(ViewId v) {
    switch (v) {
        case ViewId::Front: return {0.0, 12.0, 1.05};
        case ViewId::Back: return {180.0, 12.0, 1.05};
        case ViewId::Left: return {270.0, 12.0, 1.05};
        case ViewId::Right: return {90.0, 12.0, 1.05};
        case ViewId::FrontRight: return {45.0, 18.0, 1.10};
    }
    return {0.0, 0.0, 1.0};
}

RasterView::RasterView(ViewId v, int w, int h)
    : view(v), width(w), height(h), rgb(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, 0.0f),
      alpha(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.0f) {}

void RasterView::set(int x, int y, float r, float g, float b, float a) {
    const std::size_t i = static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x);
    rgb[3 * i] = r;
    rgb[3 * i + 1] = g;
    rgb[3 * i + 2] = b;
    alpha[i] = a;
}

namespace {

// Weights of source samples for each destination sample: the overlap length of
// [d*scale, (d+1)*scale] with each source cell, normalised to sum to 1.
struct Tap {
    int src;
    double weight;
};

std::vector<std::vector<Tap>> area_taps(int src_n, int dst_n) {
    std::vector<std::vector<Tap>> taps(static_cast<std::size_t>(dst_n));
    const double scale = static_cast<double>(src_n) / static_cast<double>(dst_n);
    for (int d = 0; d < dst_n; ++d) {
        const double lo = d * scale;
        const double hi = (d + 1) * scale;
        const int first = static_cast<int>(std::floor(lo));
        const int last = std::min(src_n - 1, static_cast<int>(std::ceil(hi)) - 1);
        double total = 0.0;
        for (int s = first; s <= last; ++s) {
            const double w = std::min(hi, s + 1.0) - std::max(lo, static_cast<double>(s));
            if (w > 0.0) {
                taps[static_cast<std::size_t>(d)].push_back({s, w});
                total += w;
            }
        }
        for (auto& t : taps[static_cast<std::size_t>(d)]) t.weight /= total;
    }
    return taps;
}

}  // namespace

RasterView resize_area(const RasterView& src, int width, int height) {
    if (src.width <= 0 || src.height <= 0) throw ValidationError("cannot resize an empty raster");
    if (src.width == width && src.height == height) return src;
    const auto tx = area_taps(src.width, width);
    const auto ty = area_taps(src.height, height);

    // Horizontal pass into a (width x src.height) buffer of 4 channels.
    std::vector<double> mid(static_cast<std::size_t>(width) * static_cast<std::size_t>(src.height) * 4, 0.0);
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < width; ++x) {
            double acc[4] = {0, 0, 0, 0};
            for (const Tap& t : tx[static_cast<std::size_t>(x)]) {
                const std::size_t si = static_cast<std::size_t>(y) * static_cast<std::size_t>(src.width) +
                                       static_cast<std::size_t>(t.src);
                acc[0] += t.weight * src.rgb[3 * si];
                acc[1] += t.weight * src.rgb[3 * si + 1];
                acc[2] += t.weight * src.rgb[3 * si + 2];
                acc[3] += t.weight * src.alpha[si];
            }
            const std::size_t mi = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 4;
            for (int c = 0; c < 4; ++c) mid[mi + static_cast<std::size_t>(c)] = acc[c];
        }
    }
    RasterView out(src.view, width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double acc[4] = {0, 0, 0, 0};
            for (const Tap& t : ty[static_cast<std::size_t>(y)]) {
                const std::size_t mi = (static_cast<std::size_t>(t.src) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 4;
                for (int c = 0; c < 4; ++c) acc[c] += t.weight * mid[mi + static_cast<std::size_t>(c)];
            }
            out.set(x, y, static_cast<float>(acc[0]), static_cast<float>(acc[1]), static_cast<float>(acc[2]),
                    static_cast<float>(std::clamp(acc[3], 0.0, 1.0)));
        }
    }
    return out;
}

double masked_mse(const RasterView& generated, const RasterView& reference, const FidelityParams& p) {
    if (generated.width != reference.width || generated.height != reference.height) {
        throw ValidationError(fmt::format("view '{}': raster sizes differ ({}x{} vs {}x{})", view_name(generated.view),
                                          generated.width, generated.height, reference.width, reference.height));
    }
    double err = 0.0;
    std::size_t mask = 0;
    const std::size_t n = generated.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(generated.alpha[i] > p.alpha_cutoff) && !(reference.alpha[i] > p.alpha_cutoff)) continue;
        ++mask;
        for (std::size_t c = 0; c < 3; ++c) {
            const double d = static_cast<double>(generated.rgb[3 * i + c]) - static_cast<double>(reference.rgb[3 * i + c]);
            err += d * d;
        }
    }
    return mask == 0 ? 0.0 : err / static_cast<double>(mask);
}

double view_score(const RasterView& generated, const RasterView& reference, const FidelityParams& p) {
    return std::max(0.0, 1.0 - p.visual_lambda * masked_mse(generated, reference, p));
}

VisualScores visual_scores(std::span<const RasterView> generated, std::span<const RasterView> reference,
                           const FidelityParams& p) {
    auto index = [](std::span<const RasterView> views, const char* side) {
        std::array<const RasterView*, 5> slot{};
        for (const RasterView& v : views) {
            auto& s = slot[static_cast<std::size_t>(v.view)];
            if (s) throw ValidationError(fmt::format("{} views: duplicate view '{}'", side, view_name(v.view)));
            s = &v;
        }
        for (ViewId id : kAllViews) {
            if (!slot[static_cast<std::size_t>(id)]) {
                throw ValidationError(fmt::format("{} views: missing view '{}'", side, view_name(id)));
            }
        }
        return slot;
    };
    const auto gen = index(generated, "generated");
    const auto ref = index(reference, "reference");

    VisualScores out;
    double sum = 0.0;
    out.all_views_pass = true;
    for (std::size_t k = 0; k < kAllViews.size(); ++k) {
        const RasterView g = resize_area(*gen[k], kScoringSize, kScoringSize);
        const RasterView r = resize_area(*ref[k], kScoringSize, kScoringSize);
        out.per_view[k] = view_score(g, r, p);
        sum += out.per_view[k];
        if (!(out.per_view[k] >= p.visual_threshold_tau)) out.all_views_pass = false;
    }
    out.mean_S = sum / static_cast<double>(kAllViews.size());
    out.mean_pass = out.mean_S >= p.visual_threshold_tau;
    out.joint_visual_pass = p.visual_pass_rule == VisualPassRule::AllViews ? out.all_views_pass : out.mean_pass;
    return out;
}

bool joint_pass(const SuiteReport& report, const VisualScores& visual) {
    return report.overall_pass && visual.joint_visual_pass;
}

}  // namespace framecheck
