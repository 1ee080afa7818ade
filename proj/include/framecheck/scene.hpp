#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace framecheck {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
    double& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }

    friend bool operator==(const Vec3&, const Vec3&) = default;
};

enum class Axis { X = 0, Y = 1, Z = 2 };

/// Axis-aligned box in world meters.
struct Box3 {
    Vec3 min;
    Vec3 max;

    double extent(int axis) const { return max[axis] - min[axis]; }
    double extent(Axis axis) const { return extent(static_cast<int>(axis)); }
    Vec3 center() const;

    /// Corners ordered and finite.
    bool valid() const;

    /// Extents sorted ascending.
    std::array<double, 3> sorted_extents() const;

    Box3 translated(const Vec3& offset) const;

    friend bool operator==(const Box3&, const Box3&) = default;
};

enum class Phase { Foundation, Floor, Walls, Roof };

enum class Category {
    Sill,
    BeamPost,
    Post,
    Rim,
    Joist,
    CenterBeam,
    SolePlate,
    TopPlate,
    Stud,
    GableStud,
    Header,
    King,
    Trimmer,
    Cripple,
    Ridge,
    Rafter,
    Collar,
    Lookout,
    Purlin,
};

inline constexpr std::size_t kCategoryCount = 19;

/// All categories in taxonomy (build) order.
std::span<const Category> all_categories();

std::string_view category_name(Category c);
std::optional<Category> category_from_string(std::string_view name);
Phase phase_of(Category c);
std::string_view phase_name(Phase p);
std::optional<Phase> phase_from_string(std::string_view name);

/// Category whose prefix starts `name`; longest prefix wins. Case-sensitive.
std::optional<Category> classify_member(std::string_view name);

/// Explicit cross-section (width, depth) in meters for members whose box is
/// not aligned with their own axes, such as sloped rafters.
struct Section {
    double width = 0.0;
    double depth = 0.0;

    friend bool operator==(const Section&, const Section&) = default;
};

struct Member {
    std::string name;
    Category category = Category::Stud;
    Box3 box;
    std::optional<Section> section;

    friend bool operator==(const Member&, const Member&) = default;
};

enum class RoofType { Gable, Hip, Gambrel, Shed };

std::string_view roof_type_name(RoofType r);
std::optional<RoofType> roof_type_from_string(std::string_view name);

struct SceneMeta {
    double lot_width = 0.0;
    double lot_depth = 0.0;
    int stories = 1;
    RoofType roof_type = RoofType::Gable;
    std::optional<std::string> style_tag;

    friend bool operator==(const SceneMeta&, const SceneMeta&) = default;
};

struct Scene {
    std::vector<Member> members;
    std::optional<SceneMeta> meta;

    friend bool operator==(const Scene&, const Scene&) = default;
};

/// Longest horizontal extent max(dx, dy): the clear span of joists and rafters.
double member_span(const Member& m);

/// Index of the member with the given name, if any.
std::optional<std::size_t> find_member(const Scene& scene, std::string_view name);

/// Checks every Scene invariant; throws ValidationError naming the offender.
void check_scene(const Scene& scene);

}  // namespace framecheck
