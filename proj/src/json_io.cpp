#include "tanglekit/json_io.hpp"

#include <nlohmann/json.hpp>

namespace tanglekit {

using ojson = nlohmann::ordered_json;

namespace {

ojson attachment_json(const Attachment& a) {
    if (a.on_boundary) return ojson::array({"b", a.id, label_name(a.port)});
    return ojson::array({"x", a.id, a.port});
}

int count_field(const ojson& j, const char* key) {
    if (!j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
    const ojson& v = j.at(key);
    if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer");
    const auto x = v.get<long long>();
    if (x < 0 || x > (1 << 26)) throw SchemaError(std::string("field '") + key + "' out of range");
    return static_cast<int>(x);
}

Attachment attachment_from(const ojson& j) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_string() || !j[1].is_number_integer())
        throw SchemaError("attachment must be [\"x\", id, port] or [\"b\", id, label]");
    const std::string kind = j[0].get<std::string>();
    const int id = j[1].get<int>();
    if (kind == "x") {
        if (!j[2].is_number_integer()) throw SchemaError("crossing port must be an integer");
        return {false, id, j[2].get<int>()};
    }
    if (kind == "b") {
        if (!j[2].is_string()) throw SchemaError("boundary label must be a string");
        return {true, id, label_from_name(j[2].get<std::string>())};
    }
    throw SchemaError("attachment kind must be \"x\" or \"b\"");
}

}  // namespace

std::string diagram_to_json(const Diagram& d) {
    ojson arcs = ojson::array();
    for (const auto& [a, b] : arcs_of(d)) arcs.push_back(ojson::array({attachment_json(a), attachment_json(b)}));
    ojson j;
    j["crossings"] = d.num_crossings;
    j["arcs"] = std::move(arcs);
    j["free_loops"] = d.free_loops;
    j["boundaries"] = d.num_boundaries;
    return j.dump();
}

Diagram diagram_from_json(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const ojson::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("diagram must be a JSON object");
    const int c = count_field(j, "crossings");
    const int b = count_field(j, "boundaries");
    const int k = count_field(j, "free_loops");
    if (!j.contains("arcs") || !j.at("arcs").is_array()) throw SchemaError("field 'arcs' must be an array");
    std::vector<std::pair<Attachment, Attachment>> arcs;
    for (const auto& arc : j.at("arcs")) {
        if (!arc.is_array() || arc.size() != 2) throw SchemaError("arc must be a pair of attachments");
        arcs.emplace_back(attachment_from(arc[0]), attachment_from(arc[1]));
    }
    Diagram d = from_arcs(c, b, k, arcs);
    d.planarity_verified = false;
    return d;
}

}  // namespace tanglekit
