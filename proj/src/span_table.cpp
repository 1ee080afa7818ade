#include "framecheck/span_table.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "framecheck/errors.hpp"
#include "framecheck/scene_io.hpp"

namespace framecheck {

using nlohmann::json;

void SpanTable::set(SpanKind kind, Key key, double span_m) {
    (kind == SpanKind::Joist ? joist_ : rafter_)[key] = span_m;
}

std::optional<double> SpanTable::allowable(SpanKind kind, Key key) const {
    const auto& map = kind == SpanKind::Joist ? joist_ : rafter_;
    if (auto it = map.find(key); it != map.end()) return it->second;
    return std::nullopt;
}

std::string span_key_string(SpanTable::Key key) { return fmt::format("{}x{}", key.first, key.second); }

std::optional<SpanTable::Key> parse_span_key(std::string_view text) {
    const auto x = text.find('x');
    if (x == std::string_view::npos || x == 0 || x + 1 >= text.size()) return std::nullopt;
    int w = 0;
    int d = 0;
    auto r1 = std::from_chars(text.data(), text.data() + x, w);
    auto r2 = std::from_chars(text.data() + x + 1, text.data() + text.size(), d);
    if (r1.ec != std::errc{} || r1.ptr != text.data() + x) return std::nullopt;
    if (r2.ec != std::errc{} || r2.ptr != text.data() + text.size()) return std::nullopt;
    if (w <= 0 || d <= 0) return std::nullopt;
    return SpanTable::Key{w, d};
}

SpanTable::Key span_key(const LumberSize& size) {
    return {static_cast<int>(std::lround(size.width_mm)), static_cast<int>(std::lround(size.depth_mm))};
}

SpanTable parse_span_table(std::string_view document) {
    json root;
    try {
        root = json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        auto [line, column] = line_column(document, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(fmt::format("malformed span table at line {}, column {}", line, column), line, column);
    }
    if (!root.is_object()) throw ParseError("span table must be a JSON object");

    SpanTable table;
    for (auto [field, kind] : {std::pair{"joist", SpanKind::Joist}, std::pair{"rafter", SpanKind::Rafter}}) {
        if (!root.contains(field)) continue;
        const auto& map = root[field];
        if (!map.is_object()) throw ParseError(fmt::format("span table '{}' must be an object", field));
        for (const auto& [key_text, value] : map.items()) {
            auto key = parse_span_key(key_text);
            if (!key) throw ConfigError(fmt::format("span table '{}': bad key '{}' (expected WxD in mm)", field, key_text));
            if (!value.is_number()) throw ParseError(fmt::format("span table '{}.{}' must be a number", field, key_text));
            const double span = value.get<double>();
            if (!(span > 0.0) || !std::isfinite(span)) {
                throw ConfigError(fmt::format("span table '{}.{}' must be a positive span", field, key_text));
            }
            table.set(kind, *key, span);
        }
    }
    return table;
}

SpanTable load_span_table(const std::filesystem::path& path) { return parse_span_table(read_text_file(path)); }

std::string serialize_span_table(const SpanTable& table) {
    nlohmann::ordered_json root;
    root["joist"] = nlohmann::ordered_json::object();
    root["rafter"] = nlohmann::ordered_json::object();
    for (const auto& [key, span] : table.joist_spans()) root["joist"][span_key_string(key)] = span;
    for (const auto& [key, span] : table.rafter_spans()) root["rafter"][span_key_string(key)] = span;
    return root.dump(2) + "\n";
}

const SpanTable& fixture_span_table() {
    static const SpanTable table = [] {
        SpanTable t;
        t.set(SpanKind::Joist, {38, 89}, 1.45);
        t.set(SpanKind::Joist, {38, 140}, 2.30);
        t.set(SpanKind::Joist, {38, 184}, 3.00);
        t.set(SpanKind::Joist, {38, 235}, 4.20);
        t.set(SpanKind::Joist, {38, 286}, 5.00);
        t.set(SpanKind::Joist, {89, 89}, 1.80);
        t.set(SpanKind::Joist, {140, 140}, 3.20);
        t.set(SpanKind::Rafter, {38, 89}, 1.60);
        t.set(SpanKind::Rafter, {38, 140}, 2.50);
        t.set(SpanKind::Rafter, {38, 184}, 3.30);
        t.set(SpanKind::Rafter, {38, 235}, 4.20);
        t.set(SpanKind::Rafter, {38, 286}, 5.10);
        t.set(SpanKind::Rafter, {89, 89}, 2.00);
        t.set(SpanKind::Rafter, {140, 140}, 3.50);
        return t;
    }();
    return table;
}

}  // namespace framecheck
