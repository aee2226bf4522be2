#ifndef HULLSEP_INSTANCE_HPP
#define HULLSEP_INSTANCE_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bodies.hpp"
#include "errors.hpp"
#include "geometry.hpp"

namespace hullsep {

// A parsed problem file: the two bodies, an optional explicit start pair, and
// the optional metadata fields carried through for golden tests.
struct Instance {
    ConvexBody k;
    ConvexBody k_prime;
    std::optional<std::pair<Vec, Vec>> start;
    std::string name;
    std::string expected;
};

namespace detail {

inline Vec parse_vec(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of numbers");
    Vec v;
    v.reserve(j.size());
    for (const auto& x : j) {
        if (!x.is_number()) throw ParseError(where + ": expected a number");
        v.push_back(x.get<double>());
    }
    return v;
}

inline std::vector<Vec> parse_rows(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of coordinate rows");
    std::vector<Vec> rows;
    rows.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        rows.push_back(parse_vec(j[i], where + "[" + std::to_string(i) + "]"));
    return rows;
}

inline ConvexBody parse_body(const nlohmann::json& j, const std::string& which) {
    if (!j.is_object()) throw ParseError(which + ": expected a body object");
    if (!j.contains("type") || !j.at("type").is_string())
        throw ParseError(which + ": missing body type");
    const std::string type = j.at("type").get<std::string>();
    if (type == "point_set") {
        if (!j.contains("points")) throw ParseError(which + ": point_set needs points");
        return ConvexBody{PointSetBody(parse_rows(j.at("points"), which + ".points"))};
    }
    if (type == "ball") {
        if (!j.contains("center") || !j.contains("radius"))
            throw ParseError(which + ": ball needs center and radius");
        if (!j.at("radius").is_number()) throw ParseError(which + ".radius: expected a number");
        return ConvexBody{
            BallBody(parse_vec(j.at("center"), which + ".center"), j.at("radius").get<double>())};
    }
    if (type == "polytope") {
        if (!j.contains("rows") || !j.contains("rhs"))
            throw ParseError(which + ": polytope needs rows and rhs");
        return ConvexBody{PolytopeBody(parse_rows(j.at("rows"), which + ".rows"),
                                       parse_vec(j.at("rhs"), which + ".rhs"))};
    }
    throw ParseError(which + ": unknown body type \"" + type + "\"");
}

inline nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

inline void write_number(std::string& out, double v) {
    if (v == 0.0 && std::signbit(v)) {
        out += "-0.0";  // bare "-0" would parse back as an unsigned integer zero
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

inline void write_vec(std::string& out, const Vec& v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        write_number(out, v[i]);
    }
    out += ']';
}

inline void write_rows(std::string& out, const std::vector<Vec>& rows,
                       const std::string& indent) {
    out += "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out += indent + "  ";
        write_vec(out, rows[i]);
        if (i + 1 < rows.size()) out += ',';
        out += '\n';
    }
    out += indent + "]";
}

inline void write_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
}

inline void write_body(std::string& out, const ConvexBody& body, const std::string& indent) {
    if (const auto* ps = body.as_point_set()) {
        out += "{\n" + indent + "  \"type\": \"point_set\",\n" + indent + "  \"points\": ";
        write_rows(out, ps->points(), indent + "  ");
        out += "\n" + indent + "}";
        return;
    }
    if (const auto* ba = body.as_ball()) {
        out += "{\n" + indent + "  \"type\": \"ball\",\n" + indent + "  \"center\": ";
        write_vec(out, ba->center());
        out += ",\n" + indent + "  \"radius\": ";
        write_number(out, ba->radius());
        out += "\n" + indent + "}";
        return;
    }
    const auto* po = body.as_polytope();
    out += "{\n" + indent + "  \"type\": \"polytope\",\n" + indent + "  \"rows\": ";
    write_rows(out, po->rows(), indent + "  ");
    out += ",\n" + indent + "  \"rhs\": ";
    write_vec(out, po->rhs());
    out += "\n" + indent + "}";
}

}  // namespace detail

inline Instance parse_instance_json(const nlohmann::json& j, const std::string& origin) {
    if (!j.is_object()) throw ParseError(origin + ": expected a top-level object");
    if (!j.contains("K") || !j.contains("K_prime"))
        throw ParseError(origin + ": instance needs bodies \"K\" and \"K_prime\"");
    ConvexBody k = detail::parse_body(j.at("K"), origin + ": K");
    ConvexBody kp = detail::parse_body(j.at("K_prime"), origin + ": K_prime");
    if (k.dim() != kp.dim())
        throw DimensionMismatch("instance: bodies have dimensions " + std::to_string(k.dim()) +
                                " and " + std::to_string(kp.dim()));

    Instance inst{std::move(k), std::move(kp), std::nullopt, "", ""};
    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw ParseError(origin + ": name must be a string");
        inst.name = j.at("name").get<std::string>();
    }
    if (j.contains("expected")) {
        if (!j.at("expected").is_string())
            throw ParseError(origin + ": expected must be a string");
        inst.expected = j.at("expected").get<std::string>();
    }
    if (j.contains("start")) {
        const auto& s = j.at("start");
        if (!s.is_object() || !s.contains("p") || !s.contains("p_prime"))
            throw ParseError(origin + ": start needs fields p and p_prime");
        Vec p = detail::parse_vec(s.at("p"), origin + ": start.p");
        Vec pp = detail::parse_vec(s.at("p_prime"), origin + ": start.p_prime");
        if (p.size() != inst.k.dim() || pp.size() != inst.k.dim())
            throw DimensionMismatch("instance: start pair dimension");
        inst.start = std::make_pair(std::move(p), std::move(pp));
    }
    return inst;
}

inline Instance parse_instance(const std::string& path) {
    return parse_instance_json(detail::load_json(path), path);
}

// Serializes with 17 significant digits so parse(emit(x)) reproduces every
// coordinate exactly.
inline std::string emit_instance(const Instance& inst) {
    std::string out = "{\n";
    if (!inst.name.empty()) {
        out += "  \"name\": ";
        detail::write_escaped(out, inst.name);
        out += ",\n";
    }
    if (!inst.expected.empty()) {
        out += "  \"expected\": ";
        detail::write_escaped(out, inst.expected);
        out += ",\n";
    }
    out += "  \"K\": ";
    detail::write_body(out, inst.k, "  ");
    out += ",\n  \"K_prime\": ";
    detail::write_body(out, inst.k_prime, "  ");
    if (inst.start) {
        out += ",\n  \"start\": {\n    \"p\": ";
        detail::write_vec(out, inst.start->first);
        out += ",\n    \"p_prime\": ";
        detail::write_vec(out, inst.start->second);
        out += "\n  }";
    }
    out += "\n}\n";
    return out;
}

}  // namespace hullsep

#endif
