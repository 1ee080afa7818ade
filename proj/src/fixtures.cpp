#include "framecheck/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

#include "framecheck/errors.hpp"

namespace framecheck {

namespace {

// Actual lumber dimensions, m.
constexpr double kThin = 0.038;
constexpr double kStudDepth = 0.089;
constexpr double kHeavy = 0.140;
constexpr double kPostSpacingMax = 2.0;
constexpr double kCollarFraction = 0.4;  // collar centre height as a fraction of rafter rise

Box3 box(double x0, double y0, double z0, double x1, double y1, double z1) { return {{x0, y0, z0}, {x1, y1, z1}}; }

// n evenly spaced values from a to b inclusive, n >= 2.
std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

// Stud or post centres from `start` at `spacing`, plus a closing one at `end`.
std::vector<double> on_centre(double start, double end, double spacing) {
    std::vector<double> out;
    for (double c = start; c < end - 0.1; c += spacing) out.push_back(c);
    out.push_back(end);
    return out;
}

class Builder {
public:
    void add(Category c, const Box3& b, std::optional<Section> section = std::nullopt) {
        const int n = ++counters_[c];
        scene.members.push_back({fmt::format("{}_{:02d}", category_name(c), n), c, b, section});
    }

    Scene scene;

private:
    std::map<Category, int> counters_;
};

Member prototype_joist(double depth_m, double span) {
    return {"Joist_proto", Category::Joist, box(0, 0, 0, kThin, span, depth_m), std::nullopt};
}

// Smallest 38 mm section whose span passes T2 and, for joists, T5.
double pick_depth(SpanKind kind, double span, const SpanTable& table, const ValidationParams& p) {
    std::vector<LumberSize> candidates;
    for (const LumberSize& s : p.lumber_set_Lambda) {
        if (std::abs(s.width_mm - kThin * 1000.0) < 1e-9) candidates.push_back(s);
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const LumberSize& a, const LumberSize& b) { return a.depth_mm < b.depth_mm; });
    for (const LumberSize& s : candidates) {
        const auto allowable = table.allowable(kind, span_key(s));
        if (!allowable || span > (1.0 + p.span_tolerance_tau) * *allowable) continue;
        if (kind == SpanKind::Joist && !joist_deflection(prototype_joist(s.depth_mm / 1000.0, span), p).pass) continue;
        return s.depth_mm / 1000.0;
    }
    throw ConfigError(fmt::format(
        "{} span {} m exceeds every 38 mm section in the span table; add CenterBeam lines to shorten the span",
        kind == SpanKind::Joist ? "joist" : "rafter", format_number(span)));
}

std::vector<double> floor_levels(const FixtureSpec& s) {
    std::vector<double> z = s.floor_z;
    z.resize(std::min(z.size(), static_cast<std::size_t>(std::max(s.stories, 0))));
    if (z.empty()) z.push_back(0.3);
    while (static_cast<int>(z.size()) < s.stories) z.push_back(z.back() + s.story_height);
    return z;
}

}  // namespace

void FixtureSpec::check() const {
    if (!(width > 1.0) || !(depth > 1.0)) throw ConfigError("fixture width and depth must exceed 1 m");
    if (stories < 1) throw ConfigError("fixture needs at least one story");
    if (!(roof_pitch_ratio > 0.0)) throw ConfigError("roof pitch must be positive");
    if (!(stud_spacing >= 0.1 && stud_spacing <= 1.2)) throw ConfigError("stud spacing must lie in [0.1, 1.2] m");
    if (!(joist_spacing >= 0.2 && joist_spacing <= 1.2)) throw ConfigError("joist spacing must lie in [0.2, 1.2] m");
    if (!(rafter_spacing >= 0.2 && rafter_spacing <= 0.638)) {
        throw ConfigError("rafter spacing must lie in [0.2, 0.638] m");
    }
    if (!(story_height > 1.0)) throw ConfigError("story height must exceed 1 m");
    const auto z = floor_levels(*this);
    if (!(z[0] >= 0.28 && z[0] <= 1.0)) throw ConfigError("first floor level must lie in [0.28, 1.0] m");
    for (std::size_t k = 1; k < z.size(); ++k) {
        if (!(z[k] - z[k - 1] > 1.0)) throw ConfigError("floor levels must rise by more than 1 m per story");
    }
}

Scene generate_gable(const FixtureSpec& spec, const SpanTable& table, const ValidationParams& params) {
    spec.check();
    const double W = spec.width;
    const double D = spec.depth;
    const double half = D / 2.0;
    const auto levels = floor_levels(spec);

    const double joist_depth = pick_depth(SpanKind::Joist, half - kThin, table, params);
    const double run = half - kHeavy / 2.0;
    const double rafter_depth = pick_depth(SpanKind::Rafter, run, table, params);
    const double rafter_h = spec.roof_pitch_ratio * run + rafter_depth;
    // Rafter top zones must stay clear of the collars so the ridge is their only top connection.
    const double collar_top = kCollarFraction * rafter_h + kStudDepth / 2.0;
    if (!(rafter_h - params.zone_fraction_alpha * rafter_h - collar_top > params.zone_tolerance_eps_c)) {
        throw ConfigError(fmt::format("roof too shallow: rafter rise {} m", format_number(rafter_h)));
    }

    Builder b;
    b.scene.meta = SceneMeta{W, D, spec.stories, RoofType::Gable, std::string("gable")};

    // Foundation: perimeter sills and a centre beam on posts.
    const double sill_top = levels[0];
    const double sill_bot = sill_top - kHeavy;
    b.add(Category::Sill, box(0, 0, sill_bot, W, kHeavy, sill_top));
    b.add(Category::Sill, box(0, D - kHeavy, sill_bot, W, D, sill_top));
    b.add(Category::Sill, box(0, kHeavy, sill_bot, kHeavy, D - kHeavy, sill_top));
    b.add(Category::Sill, box(W - kHeavy, kHeavy, sill_bot, W, D - kHeavy, sill_top));

    const auto n_along_x = static_cast<std::size_t>(std::ceil((W - kHeavy) / kPostSpacingMax)) + 1;
    const auto n_along_y = static_cast<std::size_t>(std::ceil((D - kHeavy) / kPostSpacingMax)) + 1;
    const double beam_y = half - kHeavy / 2.0;
    for (double y0 : {0.0, beam_y, D - kHeavy}) {
        for (double x0 : linspace(0, W - kHeavy, n_along_x)) {
            b.add(Category::Post, box(x0, y0, 0, x0 + kHeavy, y0 + kHeavy, sill_bot));
        }
    }
    const auto side = linspace(0, D - kHeavy, n_along_y);
    for (double x0 : {0.0, W - kHeavy}) {
        for (std::size_t i = 1; i + 1 < side.size(); ++i) {
            if (std::abs(side[i] - beam_y) < kHeavy) continue;
            b.add(Category::Post, box(x0, side[i], 0, x0 + kHeavy, side[i] + kHeavy, sill_bot));
        }
    }

    const auto n_joists = static_cast<std::size_t>(std::floor((W - 0.1) / spec.joist_spacing));
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const double fz = levels[k];
        const double ft = fz + joist_depth;
        const bool ground = k == 0;

        // Floor: rim band, centre beam, joists in two bays.
        b.add(Category::Rim, box(0, 0, fz, W, kThin, ft));
        b.add(Category::Rim, box(0, D - kThin, fz, W, D, ft));
        b.add(Category::Rim, box(0, kThin, fz, kThin, D - kThin, ft));
        b.add(Category::Rim, box(W - kThin, kThin, fz, W, D - kThin, ft));
        double bay_front_end = half;
        double bay_back_start = half;
        if (ground) {
            b.add(Category::CenterBeam, box(kHeavy, beam_y, sill_bot, W - kHeavy, beam_y + kHeavy, sill_top));
        } else {
            // Flush beam carried by the side-wall top plates; joists butt its faces.
            b.add(Category::CenterBeam, box(kStudDepth, beam_y, fz, W - kStudDepth, beam_y + kHeavy, fz + kHeavy));
            bay_front_end = beam_y;
            bay_back_start = beam_y + kHeavy;
        }
        for (std::size_t j = 1; j <= n_joists; ++j) {
            const double x = static_cast<double>(j) * spec.joist_spacing;
            b.add(Category::Joist, box(x - kThin / 2, kThin, fz, x + kThin / 2, bay_front_end, ft));
            b.add(Category::Joist, box(x - kThin / 2, bay_back_start, fz, x + kThin / 2, D - kThin, ft));
        }

        // Walls: plates and studs, front/back full width, sides between them.
        const double wall_top = k + 1 < levels.size() ? levels[k + 1] : fz + spec.story_height;
        const double stud_lo = ft + kThin;
        const double stud_hi = wall_top - kThin;
        if (!(stud_hi - stud_lo > 1.0)) throw ConfigError("story too short for its floor depth");
        for (double y0 : {0.0, D - kStudDepth}) {
            b.add(Category::SolePlate, box(0, y0, ft, W, y0 + kStudDepth, stud_lo));
            b.add(Category::TopPlate, box(0, y0, stud_hi, W, y0 + kStudDepth, wall_top));
        }
        for (double x0 : {0.0, W - kStudDepth}) {
            b.add(Category::SolePlate, box(x0, kStudDepth, ft, x0 + kStudDepth, D - kStudDepth, stud_lo));
            b.add(Category::TopPlate, box(x0, kStudDepth, stud_hi, x0 + kStudDepth, D - kStudDepth, wall_top));
        }
        for (double y0 : {0.0, D - kStudDepth}) {
            for (double c : on_centre(kThin / 2, W - kThin / 2, spec.stud_spacing)) {
                b.add(Category::Stud, box(c - kThin / 2, y0, stud_lo, c + kThin / 2, y0 + kStudDepth, stud_hi));
            }
        }
        for (double x0 : {0.0, W - kStudDepth}) {
            for (double c : on_centre(kStudDepth + kThin / 2, D - kStudDepth - kThin / 2, spec.stud_spacing)) {
                b.add(Category::Stud, box(x0, c - kThin / 2, stud_lo, x0 + kStudDepth, c + kThin / 2, stud_hi));
            }
        }
    }

    // Roof: ridge, rafter pairs bearing on the front/back top plates, collars.
    const double eave = levels.back() + spec.story_height;
    const double top = eave + rafter_h;
    b.add(Category::Ridge, box(0, beam_y, top - kHeavy, W, beam_y + kHeavy, top));
    const auto n_pairs = static_cast<std::size_t>(std::ceil((W - kThin) / spec.rafter_spacing)) + 1;
    const auto centres = linspace(kThin / 2, W - kThin / 2, n_pairs);
    const Section rafter_section{kThin, rafter_depth};
    for (double c : centres) {
        b.add(Category::Rafter, box(c - kThin / 2, 0, eave, c + kThin / 2, run, top), rafter_section);
        b.add(Category::Rafter, box(c - kThin / 2, D - run, eave, c + kThin / 2, D, top), rafter_section);
    }
    const double collar_z = eave + kCollarFraction * rafter_h;
    const double collar_y = std::clamp((kCollarFraction * rafter_h - rafter_depth / 2) / spec.roof_pitch_ratio, 0.0,
                                       run - 0.05);
    for (std::size_t i = 0; i < centres.size(); ++i) {
        const double x0 = i + 1 < centres.size() ? centres[i] + kThin / 2 : centres[i] - 1.5 * kThin;
        b.add(Category::Collar,
              box(x0, collar_y, collar_z - kStudDepth / 2, x0 + kThin, D - collar_y, collar_z + kStudDepth / 2));
    }
    return std::move(b.scene);
}

// ---------------------------------------------------------------------------
// Mutations

namespace {

constexpr std::array<std::string_view, 7> kMutationNames{
    "remove_member", "shift_member", "resize_section", "delete_every_other_joist",
    "remove_ridge",  "float_member", "stretch_span",
};

int long_axis(const Box3& b) { return b.extent(0) >= b.extent(1) ? 0 : 1; }

// Joist layers as in T3: same long axis, connected vertical overlap.
// Each layer is a list of lines, each line the members sharing a perpendicular position.
std::vector<std::vector<std::vector<std::size_t>>> joist_layers(const Scene& scene,
                                                                const std::vector<std::size_t>& joists) {
    std::vector<std::vector<std::vector<std::size_t>>> layers;
    for (int axis = 0; axis < 2; ++axis) {
        std::vector<std::size_t> js;
        for (std::size_t i : joists) {
            if (long_axis(scene.members[i].box) == axis) js.push_back(i);
        }
        std::sort(js.begin(), js.end(),
                  [&](std::size_t a, std::size_t b) { return scene.members[a].box.min.z < scene.members[b].box.min.z; });
        std::size_t start = 0;
        while (start < js.size()) {
            std::size_t end = start + 1;
            double reach = scene.members[js[start]].box.max.z;
            while (end < js.size() && scene.members[js[end]].box.min.z <= reach) {
                reach = std::max(reach, scene.members[js[end]].box.max.z);
                ++end;
            }
            const int perp = 1 - axis;
            std::vector<std::size_t> group(js.begin() + static_cast<std::ptrdiff_t>(start),
                                           js.begin() + static_cast<std::ptrdiff_t>(end));
            std::sort(group.begin(), group.end(), [&](std::size_t a, std::size_t b) {
                return scene.members[a].box.center()[perp] < scene.members[b].box.center()[perp];
            });
            std::vector<std::vector<std::size_t>> lines;
            double last = 0.0;
            for (std::size_t i : group) {
                const double pos = scene.members[i].box.center()[perp];
                if (lines.empty() || pos - last > 1e-6) lines.emplace_back();
                lines.back().push_back(i);
                last = pos;
            }
            layers.push_back(std::move(lines));
            start = end;
        }
    }
    return layers;
}

std::vector<std::size_t> matches(const Scene& scene, const Mutation& m) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < scene.members.size(); ++i) {
        const Member& mem = scene.members[i];
        if (m.kind == MutationKind::RemoveRidge) {
            if (mem.category == Category::Ridge && (m.target.empty() || glob_match(m.target, mem.name))) {
                out.push_back(i);
            }
        } else if (glob_match(m.target, mem.name)) {
            out.push_back(i);
        }
    }
    if (out.empty()) {
        throw ValidationError(fmt::format("{}: target '{}' matches no member", mutation_name(m.kind),
                                          m.kind == MutationKind::RemoveRidge && m.target.empty() ? "Ridge" : m.target));
    }
    return out;
}

Scene erase(const Scene& scene, const std::vector<std::size_t>& doomed) {
    Scene out;
    out.meta = scene.meta;
    std::vector<bool> drop(scene.members.size(), false);
    for (std::size_t i : doomed) drop[i] = true;
    for (std::size_t i = 0; i < scene.members.size(); ++i) {
        if (!drop[i]) out.members.push_back(scene.members[i]);
    }
    return out;
}

}  // namespace

std::string_view mutation_name(MutationKind k) { return kMutationNames[static_cast<std::size_t>(k)]; }

std::optional<MutationKind> mutation_from_string(std::string_view name) {
    for (MutationKind k : kAllMutations) {
        if (mutation_name(k) == name) return k;
    }
    return std::nullopt;
}

bool glob_match(std::string_view pattern, std::string_view name) {
    // Iterative wildcard match with single-star backtracking.
    std::size_t p = 0, n = 0, star = std::string_view::npos, mark = 0;
    while (n < name.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == name[n])) {
            ++p;
            ++n;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = n;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            n = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

Mutation parse_mutation(std::string_view text) {
    Mutation m;
    const auto c1 = text.find(':');
    const auto kind = mutation_from_string(text.substr(0, c1));
    if (!kind) throw ConfigError(fmt::format("unknown mutation kind in '{}'", text));
    m.kind = *kind;
    if (c1 == std::string_view::npos) {
        if (m.kind != MutationKind::RemoveRidge) throw ConfigError(fmt::format("mutation '{}' needs a target", text));
        return m;
    }
    const std::string_view rest = text.substr(c1 + 1);
    const auto c2 = rest.find(':');
    m.target = std::string(rest.substr(0, c2));
    if (c2 != std::string_view::npos) {
        const std::string mag(rest.substr(c2 + 1));
        try {
            std::size_t used = 0;
            m.magnitude = std::stod(mag, &used);
            if (used != mag.size()) throw std::invalid_argument(mag);
        } catch (const std::exception&) {
            throw ConfigError(fmt::format("mutation magnitude '{}' is not a number", mag));
        }
    }
    if (m.target.empty() && m.kind != MutationKind::RemoveRidge) {
        throw ConfigError(fmt::format("mutation '{}' needs a target", text));
    }
    return m;
}

Scene apply_mutation(const Scene& scene, const Mutation& m) {
    const std::vector<std::size_t> hit = matches(scene, m);
    auto magnitude = [&](double fallback) {
        const double v = m.magnitude.value_or(fallback);
        if (!std::isfinite(v) || v <= 0.0) {
            throw ConfigError(fmt::format("{}: magnitude must be positive", mutation_name(m.kind)));
        }
        return v;
    };

    Scene out = scene;
    switch (m.kind) {
        case MutationKind::RemoveMember:
        case MutationKind::RemoveRidge: return erase(scene, hit);

        case MutationKind::ShiftMember: {
            const double d = m.magnitude.value_or(0.2);
            if (!std::isfinite(d) || d == 0.0) throw ConfigError("shift_member: magnitude must be non-zero");
            for (std::size_t i : hit) {
                Box3& b = out.members[i].box;
                Vec3 offset{};
                offset[1 - long_axis(b)] = d;
                b = b.translated(offset);
            }
            return out;
        }

        case MutationKind::ResizeSection: {
            const double d = magnitude(0.025);
            for (std::size_t i : hit) {
                Member& mem = out.members[i];
                int thin = 0;
                for (int a = 1; a < 3; ++a) {
                    if (mem.box.extent(a) < mem.box.extent(thin)) thin = a;
                }
                mem.box.min[thin] -= d / 2;
                mem.box.max[thin] += d / 2;
                if (mem.section) mem.section->width += d;
            }
            return out;
        }

        case MutationKind::DeleteEveryOtherJoist: {
            std::vector<std::size_t> joists;
            for (std::size_t i : hit) {
                if (scene.members[i].category == Category::Joist) joists.push_back(i);
            }
            std::vector<std::size_t> doomed;
            for (const auto& lines : joist_layers(scene, joists)) {
                if (lines.size() < 3) continue;
                for (std::size_t k = 1; k < lines.size(); k += 2) doomed.insert(doomed.end(), lines[k].begin(), lines[k].end());
            }
            if (doomed.empty()) {
                throw ValidationError(fmt::format("delete_every_other_joist: no joist layer under '{}' has 3 or more lines",
                                                  m.target));
            }
            return erase(scene, doomed);
        }

        case MutationKind::FloatMember: {
            const double d = magnitude(1.0);
            std::vector<bool> moving(scene.members.size(), false);
            for (std::size_t i : hit) moving[i] = true;
            double ceiling = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < scene.members.size(); ++i) {
                if (!moving[i]) ceiling = std::max(ceiling, scene.members[i].box.max.z);
            }
            if (!std::isfinite(ceiling)) ceiling = 0.0;
            for (std::size_t i : hit) {
                Box3& b = out.members[i].box;
                b = b.translated({0, 0, ceiling + d - b.min.z});
            }
            return out;
        }

        case MutationKind::StretchSpan: {
            const double r = magnitude(2.0);
            for (std::size_t i : hit) {
                Box3& b = out.members[i].box;
                const int a = long_axis(b);
                const double c = (b.min[a] + b.max[a]) / 2;
                const double h = b.extent(a) * r / 2;
                b.min[a] = c - h;
                b.max[a] = c + h;
            }
            return out;
        }
    }
    return out;
}

MutationProfile mutation_profile(MutationKind k) {
    using enum TestId;
    switch (k) {
        case MutationKind::RemoveMember: return {k, "Post*", {T1, T9}, {T1, T9}, 0, 0};
        case MutationKind::ShiftMember: return {k, "one interior Joist", {T3}, {T3}, 0.15, 0.25};
        case MutationKind::ResizeSection: return {k, "one Stud", {T4}, {T4}, 0.02, 0.03};
        case MutationKind::DeleteEveryOtherJoist: return {k, "Joist*", {T3}, {T3}, 0, 0};
        case MutationKind::RemoveRidge: return {k, "Ridge*", {T10}, {T10}, 0, 0};
        case MutationKind::FloatMember: return {k, "one Collar", {T1, T9}, {T1, T9}, 0.5, 2.0};
        case MutationKind::StretchSpan: return {k, "one Joist", {T2}, {T2, T5, T6, T7}, 2.0, 2.0};
    }
    return {k, "", {}, {}, 0, 0};
}

std::vector<std::string> canonical_targets(const Scene& fixture, MutationKind k) {
    auto names_of = [&](Category c) {
        std::vector<std::string> out;
        for (const Member& m : fixture.members) {
            if (m.category == c) out.push_back(m.name);
        }
        return out;
    };
    switch (k) {
        case MutationKind::RemoveMember: return {"Post*"};
        case MutationKind::DeleteEveryOtherJoist: return {"Joist*"};
        case MutationKind::RemoveRidge: return {"Ridge*"};
        case MutationKind::ResizeSection: return names_of(Category::Stud);
        case MutationKind::FloatMember: return names_of(Category::Collar);
        case MutationKind::StretchSpan: return names_of(Category::Joist);
        case MutationKind::ShiftMember: {
            std::vector<std::size_t> joists;
            for (std::size_t i = 0; i < fixture.members.size(); ++i) {
                if (fixture.members[i].category == Category::Joist) joists.push_back(i);
            }
            std::vector<std::string> out;
            for (const auto& lines : joist_layers(fixture, joists)) {
                for (std::size_t l = 1; l + 1 < lines.size(); ++l) {
                    for (std::size_t i : lines[l]) out.push_back(fixture.members[i].name);
                }
            }
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    return {};
}

}  // namespace framecheck
