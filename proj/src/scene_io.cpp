#include "framecheck/scene_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "framecheck/errors.hpp"

namespace framecheck {

using nlohmann::json;

namespace {

Vec3 read_vec3(const json& j, const std::string& context) {
    if (!j.is_array() || j.size() != 3) {
        throw ParseError(fmt::format("{}: expected an array of 3 numbers", context));
    }
    Vec3 v;
    for (int k = 0; k < 3; ++k) {
        if (!j[k].is_number()) throw ParseError(fmt::format("{}: coordinate {} is not a number", context, k));
        v[k] = j[k].get<double>();
    }
    return v;
}

double read_number(const json& obj, const char* key, const std::string& context) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ParseError(fmt::format("{}: '{}' must be a number", context, key));
    return v.get<double>();
}

SceneMeta read_meta(const json& j) {
    if (!j.is_object()) throw ParseError("'meta' must be an object");
    SceneMeta meta;
    try {
        meta.lot_width = read_number(j, "lot_width", "meta");
        meta.lot_depth = read_number(j, "lot_depth", "meta");
        if (j.contains("stories")) {
            if (!j["stories"].is_number_integer()) throw ParseError("meta: 'stories' must be an integer");
            meta.stories = j["stories"].get<int>();
        }
    } catch (const json::out_of_range& e) {
        throw ParseError(fmt::format("meta: {}", e.what()));
    }
    if (j.contains("roof_type")) {
        if (!j["roof_type"].is_string()) throw ParseError("meta: 'roof_type' must be a string");
        auto roof = roof_type_from_string(j["roof_type"].get<std::string>());
        if (!roof) throw ValidationError(fmt::format("meta: unknown roof_type '{}'", j["roof_type"].get<std::string>()));
        meta.roof_type = *roof;
    }
    if (j.contains("style")) {
        if (!j["style"].is_string()) throw ParseError("meta: 'style' must be a string");
        meta.style_tag = j["style"].get<std::string>();
    }
    return meta;
}

Member read_member(const json& j, std::size_t index) {
    const std::string context = fmt::format("members[{}]", index);
    if (!j.is_object()) throw ParseError(context + ": expected an object");
    if (!j.contains("name") || !j["name"].is_string()) throw ParseError(context + ": missing string 'name'");
    Member m;
    m.name = j["name"].get<std::string>();
    if (m.name.empty()) throw ValidationError(context + ": empty member name");
    if (!j.contains("min") || !j.contains("max")) throw ParseError(context + ": missing 'min' or 'max'");
    m.box.min = read_vec3(j["min"], context + ".min");
    m.box.max = read_vec3(j["max"], context + ".max");
    if (!m.box.valid()) {
        throw ValidationError(fmt::format("member '{}': box min exceeds max or is non-finite", m.name));
    }

    const auto derived = classify_member(m.name);
    if (j.contains("category")) {
        if (!j["category"].is_string()) throw ParseError(context + ": 'category' must be a string");
        const std::string stored = j["category"].get<std::string>();
        auto cat = category_from_string(stored);
        if (!cat) throw ValidationError(fmt::format("member '{}': unknown category '{}'", m.name, stored));
        if (derived && *derived != *cat) {
            throw ValidationError(fmt::format("member '{}': stored category {} disagrees with name prefix {}",
                                              m.name, stored, category_name(*derived)));
        }
        m.category = *cat;
    } else if (derived) {
        m.category = *derived;
    } else {
        throw ValidationError(
            fmt::format("member '{}': name does not start with a taxonomy prefix and no category is stored", m.name));
    }

    if (j.contains("section")) {
        const auto& s = j["section"];
        if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number()) {
            throw ParseError(context + ": 'section' must be [width, depth]");
        }
        m.section = Section{s[0].get<double>(), s[1].get<double>()};
    }
    return m;
}

}  // namespace

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte_offset) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min(byte_offset, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

Scene parse_scene(std::string_view document) {
    json root;
    try {
        root = json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        // nlohmann reports the byte just past the offending token (1-based).
        const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
        auto [line, column] = line_column(document, offset);
        throw ParseError(fmt::format("malformed scene document at line {}, column {} (byte {})", line, column, offset),
                         line, column);
    }
    if (!root.is_object()) throw ParseError("scene document must be a JSON object");
    if (!root.contains("members") || !root["members"].is_array()) {
        throw ParseError("scene document requires a 'members' array");
    }

    Scene scene;
    if (root.contains("meta") && !root["meta"].is_null()) scene.meta = read_meta(root["meta"]);
    const auto& members = root["members"];
    scene.members.reserve(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) scene.members.push_back(read_member(members[i], i));
    check_scene(scene);
    return scene;
}

std::string serialize_scene(const Scene& scene) {
    nlohmann::ordered_json root = nlohmann::ordered_json::object();
    if (scene.meta) {
        nlohmann::ordered_json meta;
        meta["lot_width"] = scene.meta->lot_width;
        meta["lot_depth"] = scene.meta->lot_depth;
        meta["stories"] = scene.meta->stories;
        meta["roof_type"] = roof_type_name(scene.meta->roof_type);
        if (scene.meta->style_tag) meta["style"] = *scene.meta->style_tag;
        root["meta"] = std::move(meta);
    }
    auto members = nlohmann::ordered_json::array();
    for (const Member& m : scene.members) {
        nlohmann::ordered_json jm;
        jm["name"] = m.name;
        jm["category"] = category_name(m.category);
        jm["min"] = {m.box.min.x, m.box.min.y, m.box.min.z};
        jm["max"] = {m.box.max.x, m.box.max.y, m.box.max.z};
        if (m.section) jm["section"] = {m.section->width, m.section->depth};
        members.push_back(std::move(jm));
    }
    root["members"] = std::move(members);
    return root.dump(1) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(fmt::format("cannot open '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Scene load_scene(const std::filesystem::path& path) { return parse_scene(read_text_file(path)); }

void save_scene(const Scene& scene, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
    out << serialize_scene(scene);
}

}  // namespace framecheck
