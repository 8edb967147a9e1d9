#pragma once

// JSON forms of the library types. Integers travel as decimal strings.
// Readers throw FormatError naming the offending field.

#include <string>

#include <json.hpp>

#include "thetaforge/cluster.hpp"
#include "thetaforge/scatter.hpp"
#include "thetaforge/series.hpp"
#include "thetaforge/theta.hpp"

namespace thetaforge::io {

using Json = nlohmann::ordered_json;

Json to_json(Exponent m);
Json to_json(const Integer& c);
Json to_json(const Series& f);
Json to_json(const ScatteringDiagram& d);
Json to_json(const ThetaExpansion& e);
Json to_json(const Chamber& ch);
Json to_json(const BrokenLine& line);
Json to_json(const ConsistencyReport& r);
Json to_json(const WallPositivityReport& r);
Json to_json(const PositivityVerdict& v);
Json to_json(const AtomicityVerdict& v);
Json to_json(const TransitionReport& r);
Json to_json(const ClusterAgreementReport& r);
Json to_json(const LaurentPositivityReport& r);

Exponent exponent_from_json(const Json& j, const std::string& field);
Integer integer_from_json(const Json& j, const std::string& field);
Series series_from_json(const Json& j, const std::string& field = "series");
ScatteringDiagram diagram_from_json(const Json& j, const std::string& field = "diagram");
/// "cutoff" is optional here; it defaults to `default_cutoff`.
ThetaExpansion expansion_from_json(const Json& j, std::int64_t default_cutoff,
                                   const std::string& field = "combo");

/// Parses text, reporting syntax errors against `field`.
Json parse(const std::string& text, const std::string& field);

}  // namespace thetaforge::io
