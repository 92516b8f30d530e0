#pragma once

#include "qhm/ball.hpp"
#include "qhm/constants.hpp"
#include "qhm/domain.hpp"
#include "qhm/moduli.hpp"
#include "qhm/norm.hpp"
#include "qhm/point.hpp"

#include <json.hpp>

#include <string>

namespace qhm {

using Json = nlohmann::json;

// Canonical encodings. The parsers throw invalid_input naming the offending
// field; domain invariants are checked by the Domain factories.
Json to_json(const Point& p);
Point point_from_json(const Json& j);

Json to_json(const NormSpec& norm);
NormSpec norm_from_json(const Json& j);

Json to_json(const Domain& domain);
Domain domain_from_json(const Json& j);

/// Reads a domain from a JSON file or, when `text` starts with '{', inline JSON.
Domain load_domain(const std::string& text);
NormSpec load_norm(const std::string& text);

/// Comma-separated coordinates, e.g. "1,0" or "-0.5, 2".
Point parse_point(const std::string& text);

Json to_json(const ShapeReport& report);
Json to_json(const CriticalRadius& radius);
Json to_json(const RadiusTableRow& row);
Json radius_table_json(MetricKind metric);
/// Fixed-width text rendering of the radius table.
std::string radius_table_text(MetricKind metric);

Json to_json(const ModulusEstimate& estimate);
Json to_json(const PowerTypeFit& fit);
Json to_json(const LemmaMargin& margin);

}  // namespace qhm
