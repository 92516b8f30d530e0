#include "qhm/json_io.hpp"

#include "qhm/error.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace qhm {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::invalid_input, what); }

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) bad(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

double number(const Json& j, const char* name) {
    const Json& v = field(j, name);
    if (!v.is_number()) bad(std::string("field \"") + name + "\" must be a number");
    return v.get<double>();
}

std::vector<Point> point_list(const Json& j, const char* name) {
    const Json& v = field(j, name);
    if (!v.is_array()) bad(std::string("field \"") + name + "\" must be an array of points");
    std::vector<Point> out;
    for (const auto& p : v) out.push_back(point_from_json(p));
    return out;
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json point_list_json(const std::vector<Point>& pts) {
    Json a = Json::array();
    for (const auto& p : pts) a.push_back(to_json(p));
    return a;
}

Json read_json(const std::string& text) {
    try {
        if (!text.empty() && text.front() == '{') return Json::parse(text);
        std::ifstream in(text);
        if (!in) bad("cannot open " + text);
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        bad(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

Json to_json(const Point& p) { return Json(std::vector<double>(p.coords().begin(), p.coords().end())); }

Point point_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) bad("a point must be a non-empty array of numbers");
    if (j.size() > kMaxDim) bad("point dimension exceeds " + std::to_string(kMaxDim));
    std::vector<double> c;
    for (const auto& v : j) {
        if (!v.is_number()) bad("point coordinates must be numbers");
        c.push_back(v.get<double>());
    }
    return Point(std::span<const double>(c));
}

Json to_json(const NormSpec& norm) {
    if (norm.kind() == NormSpec::Kind::euclidean) return Json{{"kind", "euclidean"}};
    return Json{{"kind", "p_norm"}, {"p", std::isinf(norm.p()) ? Json("inf") : Json(norm.p())}};
}

NormSpec norm_from_json(const Json& j) {
    const Json& kind = field(j, "kind");
    if (kind == "euclidean") return NormSpec::euclidean();
    if (kind != "p_norm") bad("unknown norm kind " + kind.dump());
    const Json& p = field(j, "p");
    if (p.is_string() && p.get<std::string>() == "inf") return NormSpec::p_norm(std::numeric_limits<double>::infinity());
    if (!p.is_number()) bad("field \"p\" must be a number or \"inf\"");
    return NormSpec::p_norm(p.get<double>());
}

Json to_json(const Domain& domain) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, HalfSpace>) {
                return {{"kind", "half_space"}, {"normal", to_json(v.normal)}, {"offset", v.offset}};
            } else if constexpr (std::is_same_v<T, PuncturedSpace>) {
                return {{"kind", "punctured"}, {"punctures", point_list_json(v.punctures)}};
            } else if constexpr (std::is_same_v<T, UnitBall>) {
                return {{"kind", "unit_ball"}, {"center", to_json(v.center)}, {"radius", v.radius}};
            } else if constexpr (std::is_same_v<T, SlitPlane>) {
                return {{"kind", "slit_plane"}, {"apex", to_json(v.apex)}, {"direction", to_json(v.direction)}};
            } else {
                return {{"kind", "convex_polygon"}, {"vertices", point_list_json(v.vertices)}};
            }
        },
        domain.variant());
}

Domain domain_from_json(const Json& j) {
    const Json& kind = field(j, "kind");
    if (!kind.is_string()) bad("field \"kind\" must be a string");
    const auto k = kind.get<std::string>();
    if (k == "half_space") return Domain::half_space(point_from_json(field(j, "normal")), number(j, "offset"));
    if (k == "punctured") return Domain::punctured(point_list(j, "punctures"));
    if (k == "unit_ball") return Domain::unit_ball(point_from_json(field(j, "center")), number(j, "radius"));
    if (k == "slit_plane") return Domain::slit_plane(point_from_json(field(j, "apex")), point_from_json(field(j, "direction")));
    if (k == "convex_polygon") return Domain::convex_polygon(point_list(j, "vertices"));
    bad("unknown domain kind \"" + k + "\"");
}

Domain load_domain(const std::string& text) { return domain_from_json(read_json(text)); }
NormSpec load_norm(const std::string& text) { return norm_from_json(read_json(text)); }

Point parse_point(const std::string& text) {
    std::vector<double> c;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            bad("cannot parse coordinate \"" + item + "\" in point \"" + text + "\"");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) bad("trailing characters in point \"" + text + "\"");
        c.push_back(v);
    }
    if (c.empty() || c.size() > kMaxDim) bad("point \"" + text + "\" needs 1 to " + std::to_string(kMaxDim) + " coordinates");
    return Point(std::span<const double>(c));
}

Json to_json(const ShapeReport& r) {
    Json j{{"property", std::string(to_string(r.property))},
           {"verdict", std::string(to_string(r.verdict))},
           {"radius", r.radius},
           {"tolerance", r.tolerance},
           {"max_excess", finite_or_null(r.max_excess)},
           {"boundary_samples", r.boundary_samples},
           {"evaluations", r.evaluations},
           {"exact_metric", r.exact_metric},
           {"note", r.note}};
    if (r.witness) {
        j["witness"] = {{"a", to_json(r.witness->a)},
                        {"b", to_json(r.witness->b)},
                        {"at", to_json(r.witness->at)},
                        {"excess", finite_or_null(r.witness->excess)},
                        {"description", r.witness->description}};
        j["witness_reverified"] = r.witness_reverified;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json to_json(const CriticalRadius& c) {
    Json j{{"name", c.name}, {"expression", c.expression}, {"sharp", c.sharp}, {"source", c.source}};
    if (!c.value) j["value"] = nullptr;
    else if (std::isinf(*c.value)) j["value"] = "inf";
    else j["value"] = *c.value;
    if (!c.defining_equation.empty()) j["defining_equation"] = c.defining_equation;
    if (c.bracket) j["bracket"] = {c.bracket->first, c.bracket->second};
    return j;
}

Json to_json(const RadiusTableRow& row) {
    return {{"domain", row.domain_class},
            {"convex", to_json(row.convex)},
            {"starlike", to_json(row.starlike)},
            {"close_to_convex", to_json(row.close_to_convex)}};
}

Json radius_table_json(MetricKind metric) {
    Json rows = Json::array();
    for (const auto& row : radius_table(metric)) rows.push_back(to_json(row));
    return {{"metric", std::string(to_string(metric))}, {"rows", rows}};
}

std::string radius_table_text(MetricKind metric) {
    auto cell = [](const CriticalRadius& c) {
        std::string s = c.expression + (c.sharp ? "" : "*");
        if (c.value && std::isfinite(*c.value) && c.expression != std::to_string(*c.value)) {
            std::ostringstream v;
            v << std::setprecision(6) << *c.value;
            if (v.str() != c.expression) s += " (" + v.str() + ")";
        }
        return s;
    };
    const auto& table = radius_table(metric);
    std::size_t w0 = 6, w1 = 6, w2 = 8;
    for (const auto& row : table) {
        w0 = std::max(w0, row.domain_class.size());
        w1 = std::max(w1, cell(row.convex).size());
        w2 = std::max(w2, cell(row.starlike).size());
    }
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(w0)) << "domain" << " | " << std::setw(static_cast<int>(w1))
        << "convex" << " | " << std::setw(static_cast<int>(w2)) << "starlike" << " | close-to-convex\n";
    for (const auto& row : table) {
        out << std::setw(static_cast<int>(w0)) << row.domain_class << " | " << std::setw(static_cast<int>(w1))
            << cell(row.convex) << " | " << std::setw(static_cast<int>(w2)) << cell(row.starlike) << " | "
            << cell(row.close_to_convex) << "\n";
    }
    out << "* not sharp\n";
    return out.str();
}

Json to_json(const ModulusEstimate& e) {
    return {{"parameter", e.parameter},
            {"value", e.value},
            {"witness", {to_json(e.witness.first), to_json(e.witness.second)}},
            {"search_resolution", e.search_resolution}};
}

Json to_json(const PowerTypeFit& f) { return {{"K", f.K}, {"p", f.p}}; }

Json to_json(const LemmaMargin& m) {
    Json j{{"lhs", m.lhs}, {"rhs", m.rhs}, {"margin", m.margin}, {"t1", m.t1}, {"t2", m.t2}};
    if (!m.warning.empty()) j["warning"] = m.warning;
    return j;
}

}  // namespace qhm
