#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "framecheck/params.hpp"

namespace framecheck {

enum class SpanKind { Joist, Rafter };

/// Allowable spans (m) keyed by nominal section in whole millimetres.
/// Values come from external configuration; nothing here is code-book data.
class SpanTable {
public:
    using Key = std::pair<int, int>;

    void set(SpanKind kind, Key key, double span_m);
    std::optional<double> allowable(SpanKind kind, Key key) const;

    const std::map<Key, double>& joist_spans() const { return joist_; }
    const std::map<Key, double>& rafter_spans() const { return rafter_; }

    friend bool operator==(const SpanTable&, const SpanTable&) = default;

private:
    std::map<Key, double> joist_;
    std::map<Key, double> rafter_;
};

/// "38x235" <-> {38, 235}
std::string span_key_string(SpanTable::Key key);
std::optional<SpanTable::Key> parse_span_key(std::string_view text);
SpanTable::Key span_key(const LumberSize& size);

/// Document: {"joist": {"38x235": 4.2, ...}, "rafter": {...}}
SpanTable parse_span_table(std::string_view document);
SpanTable load_span_table(const std::filesystem::path& path);
std::string serialize_span_table(const SpanTable& table);

/// The documented test fixture table shipped as data/fixture_span_table.json.
/// Illustrative values sized so the generated gable fixture passes T2 and T5;
/// not taken from any building code.
const SpanTable& fixture_span_table();

}  // namespace framecheck
