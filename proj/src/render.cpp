#include "framecheck/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace framecheck {

namespace {

struct P2 {
    double x, y;
};

double cross(const P2& o, const P2& a, const P2& b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

// Andrew's monotone chain; counter-clockwise, no collinear points.
std::vector<P2> convex_hull(std::vector<P2> pts) {
    std::sort(pts.begin(), pts.end(), [](const P2& a, const P2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    if (pts.size() < 3) return pts;
    std::vector<P2> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

std::array<float, 3> category_colour(Category c) {
    switch (phase_of(c)) {
        case Phase::Foundation: return {0.45f, 0.42f, 0.40f};
        case Phase::Floor: return {0.80f, 0.62f, 0.38f};
        case Phase::Walls: return {0.90f, 0.78f, 0.55f};
        case Phase::Roof: return {0.62f, 0.36f, 0.24f};
    }
    return {1.0f, 1.0f, 1.0f};
}

}  // namespace

RasterView render_view(const Scene& scene, ViewId view, int size) {
    RasterView out(view, size, size);
    if (scene.members.empty()) return out;

    const ViewCamera cam = view_camera(view);
    const double az = cam.azimuth_deg * std::numbers::pi / 180.0;
    const double el = cam.elevation_deg * std::numbers::pi / 180.0;
    // Direction from the scene towards the camera; azimuth 0 looks along +y.
    const Vec3 d{-std::sin(az) * std::cos(el), -std::cos(az) * std::cos(el), std::sin(el)};
    const Vec3 f{-d.x, -d.y, -d.z};
    Vec3 r{f.y, -f.x, 0.0};  // f x z
    const double rn = std::hypot(r.x, r.y);
    r = {r.x / rn, r.y / rn, 0.0};
    const Vec3 u{r.y * f.z - r.z * f.y, r.z * f.x - r.x * f.z, r.x * f.y - r.y * f.x};
    auto dot = [](const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; };

    const double inf = std::numeric_limits<double>::infinity();
    Vec3 lo{inf, inf, inf}, hi{-inf, -inf, -inf};
    for (const Member& m : scene.members) {
        for (int k = 0; k < 3; ++k) {
            lo[k] = std::min(lo[k], m.box.min[k]);
            hi[k] = std::max(hi[k], m.box.max[k]);
        }
    }
    const Vec3 centre{(lo.x + hi.x) / 2, (lo.y + hi.y) / 2, (lo.z + hi.z) / 2};
    const double diagonal = std::max(1e-6, std::hypot(hi.x - lo.x, hi.y - lo.y, hi.z - lo.z));
    const double scale = size / (cam.distance_multiplier * diagonal);

    // Painter's order: farthest box centre first, name breaks ties.
    std::vector<std::pair<double, std::size_t>> order;
    order.reserve(scene.members.size());
    for (std::size_t i = 0; i < scene.members.size(); ++i) {
        order.emplace_back(dot(scene.members[i].box.center(), f), i);
    }
    std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return scene.members[a.second].name < scene.members[b.second].name;
    });

    for (const auto& [depth, idx] : order) {
        (void)depth;
        const Member& m = scene.members[idx];
        std::vector<P2> pts;
        for (int c = 0; c < 8; ++c) {
            const Vec3 p{(c & 1) ? m.box.max.x : m.box.min.x, (c & 2) ? m.box.max.y : m.box.min.y,
                         (c & 4) ? m.box.max.z : m.box.min.z};
            const Vec3 q{p.x - centre.x, p.y - centre.y, p.z - centre.z};
            pts.push_back({size / 2.0 + dot(q, r) * scale, size / 2.0 - dot(q, u) * scale});
        }
        const std::vector<P2> hull = convex_hull(pts);
        if (hull.size() < 3) continue;
        double x0 = inf, x1 = -inf, y0 = inf, y1 = -inf;
        for (const P2& p : hull) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
        const int px0 = std::max(0, static_cast<int>(std::floor(x0)));
        const int px1 = std::min(size - 1, static_cast<int>(std::ceil(x1)));
        const int py0 = std::max(0, static_cast<int>(std::floor(y0)));
        const int py1 = std::min(size - 1, static_cast<int>(std::ceil(y1)));
        const auto colour = category_colour(m.category);
        for (int y = py0; y <= py1; ++y) {
            for (int x = px0; x <= px1; ++x) {
                const P2 s{x + 0.5, y + 0.5};
                bool inside = true;
                for (std::size_t e = 0; e < hull.size() && inside; ++e) {
                    inside = cross(hull[e], hull[(e + 1) % hull.size()], s) >= 0;
                }
                if (inside) out.set(x, y, colour[0], colour[1], colour[2], 1.0f);
            }
        }
    }
    return out;
}

std::vector<RasterView> render_views(const Scene& scene, int size) {
    std::vector<RasterView> views;
    for (ViewId v : kAllViews) views.push_back(render_view(scene, v, size));
    return views;
}

}  // namespace framecheck
