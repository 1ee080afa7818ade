#include "framecheck/scene.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <fmt/format.h>

#include "framecheck/errors.hpp"

namespace framecheck {

namespace {

struct CategoryInfo {
    Category category;
    std::string_view name;
    Phase phase;
};

constexpr std::array<CategoryInfo, kCategoryCount> kTaxonomy{{
    {Category::Sill, "Sill", Phase::Foundation},
    {Category::BeamPost, "BeamPost", Phase::Foundation},
    {Category::Post, "Post", Phase::Foundation},
    {Category::Rim, "Rim", Phase::Floor},
    {Category::Joist, "Joist", Phase::Floor},
    {Category::CenterBeam, "CenterBeam", Phase::Floor},
    {Category::SolePlate, "SolePlate", Phase::Walls},
    {Category::TopPlate, "TopPlate", Phase::Walls},
    {Category::Stud, "Stud", Phase::Walls},
    {Category::GableStud, "GableStud", Phase::Walls},
    {Category::Header, "Header", Phase::Walls},
    {Category::King, "King", Phase::Walls},
    {Category::Trimmer, "Trimmer", Phase::Walls},
    {Category::Cripple, "Cripple", Phase::Walls},
    {Category::Ridge, "Ridge", Phase::Roof},
    {Category::Rafter, "Rafter", Phase::Roof},
    {Category::Collar, "Collar", Phase::Roof},
    {Category::Lookout, "Lookout", Phase::Roof},
    {Category::Purlin, "Purlin", Phase::Roof},
}};

constexpr std::array<Category, kCategoryCount> kAllCategories = [] {
    std::array<Category, kCategoryCount> out{};
    for (std::size_t i = 0; i < kCategoryCount; ++i) out[i] = kTaxonomy[i].category;
    return out;
}();

const CategoryInfo& info(Category c) { return kTaxonomy[static_cast<std::size_t>(c)]; }

}  // namespace

Vec3 Box3::center() const {
    return {(min.x + max.x) * 0.5, (min.y + max.y) * 0.5, (min.z + max.z) * 0.5};
}

bool Box3::valid() const {
    for (int k = 0; k < 3; ++k) {
        if (!std::isfinite(min[k]) || !std::isfinite(max[k])) return false;
        if (min[k] > max[k]) return false;
    }
    return true;
}

std::array<double, 3> Box3::sorted_extents() const {
    std::array<double, 3> e{extent(0), extent(1), extent(2)};
    std::sort(e.begin(), e.end());
    return e;
}

Box3 Box3::translated(const Vec3& o) const {
    return {{min.x + o.x, min.y + o.y, min.z + o.z}, {max.x + o.x, max.y + o.y, max.z + o.z}};
}

std::span<const Category> all_categories() { return kAllCategories; }

std::string_view category_name(Category c) { return info(c).name; }

std::optional<Category> category_from_string(std::string_view name) {
    for (const auto& entry : kTaxonomy) {
        if (entry.name == name) return entry.category;
    }
    return std::nullopt;
}

Phase phase_of(Category c) { return info(c).phase; }

std::string_view phase_name(Phase p) {
    switch (p) {
        case Phase::Foundation: return "foundation";
        case Phase::Floor: return "floor";
        case Phase::Walls: return "walls";
        case Phase::Roof: return "roof";
    }
    return "?";
}

std::optional<Phase> phase_from_string(std::string_view name) {
    for (Phase p : {Phase::Foundation, Phase::Floor, Phase::Walls, Phase::Roof}) {
        if (phase_name(p) == name) return p;
    }
    return std::nullopt;
}

std::optional<Category> classify_member(std::string_view name) {
    std::optional<Category> best;
    std::size_t best_len = 0;
    for (const auto& entry : kTaxonomy) {
        if (name.starts_with(entry.name) && entry.name.size() > best_len) {
            best = entry.category;
            best_len = entry.name.size();
        }
    }
    return best;
}

std::string_view roof_type_name(RoofType r) {
    switch (r) {
        case RoofType::Gable: return "gable";
        case RoofType::Hip: return "hip";
        case RoofType::Gambrel: return "gambrel";
        case RoofType::Shed: return "shed";
    }
    return "?";
}

std::optional<RoofType> roof_type_from_string(std::string_view name) {
    for (RoofType r : {RoofType::Gable, RoofType::Hip, RoofType::Gambrel, RoofType::Shed}) {
        if (roof_type_name(r) == name) return r;
    }
    return std::nullopt;
}

double member_span(const Member& m) {
    return std::max(m.box.extent(Axis::X), m.box.extent(Axis::Y));
}

std::optional<std::size_t> find_member(const Scene& scene, std::string_view name) {
    for (std::size_t i = 0; i < scene.members.size(); ++i) {
        if (scene.members[i].name == name) return i;
    }
    return std::nullopt;
}

void check_scene(const Scene& scene) {
    std::unordered_set<std::string_view> seen;
    seen.reserve(scene.members.size());
    for (const Member& m : scene.members) {
        if (m.name.empty()) throw ValidationError("member with empty name");
        if (!seen.insert(m.name).second) {
            throw ValidationError(fmt::format("duplicate member name '{}'", m.name));
        }
        if (!m.box.valid()) {
            throw ValidationError(
                fmt::format("member '{}' has an invalid box (min > max or non-finite)", m.name));
        }
        if (auto derived = classify_member(m.name); derived && *derived != m.category) {
            throw ValidationError(fmt::format("member '{}' is stored as {} but its name denotes {}",
                                              m.name, category_name(m.category),
                                              category_name(*derived)));
        }
        if (m.section) {
            if (!(m.section->width > 0.0) || !(m.section->depth > 0.0) ||
                !std::isfinite(m.section->width) || !std::isfinite(m.section->depth)) {
                throw ValidationError(fmt::format("member '{}' has a non-positive section", m.name));
            }
        }
    }
    if (scene.meta) {
        const SceneMeta& meta = *scene.meta;
        if (!(meta.lot_width > 0.0) || !(meta.lot_depth > 0.0)) {
            throw ValidationError("scene meta requires positive lot_width and lot_depth");
        }
        if (meta.stories < 1) throw ValidationError("scene meta requires stories >= 1");
    }
}

}  // namespace framecheck
