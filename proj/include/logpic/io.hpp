#pragma once

#include <string>

#include <json.hpp>

#include "logpic/component.hpp"
#include "logpic/log_curve.hpp"
#include "logpic/metrized_complex.hpp"
#include "logpic/monoid.hpp"
#include "logpic/multigraph.hpp"

namespace logpic::io {

using Json = nlohmann::json;

/// Parses text; malformed input raises InputError.
Json parse_text(const std::string& text);
Json read_file(const std::string& path);
/// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

// Readers are strict: unknown keys and type mismatches raise InputError
// naming the JSON pointer. Structural invariants are checked afterwards and
// reported the same way.

Json to_json(const Multigraph& g);
Multigraph graph_from_json(const Json& j);

Json to_json(const ComponentModel& m);
ComponentModel component_from_json(const Json& j, const std::string& at = "");

Json to_json(const MetrizedComplex& c);
MetrizedComplex complex_from_json(const Json& j);

Json to_json(const LogCurve& x);
LogCurve curve_from_json(const Json& j);

/// {"vertexId": coefficient}; omitted vertices are 0.
Json divisor_to_json(const Multigraph& g, const GraphDivisor& d);
GraphDivisor divisor_from_json(const Multigraph& g, const Json& j);

/// {vertexId: {pointId: multiplicity}}
Json complex_divisor_to_json(const ComplexDivisor& d);
ComplexDivisor complex_divisor_from_json(const MetrizedComplex& c, const Json& j);

/// {vertexId: {"degree": d, "torsion": [..]}}
Json class_to_json(const MetrizedComplex& c, const ComplexClass& a);
ComplexClass class_from_json(const MetrizedComplex& c, const Json& j, const std::string& at = "");

/// {"classes": {...}, "gluing": {nodeId: int}}; omitted gluing entries are 0.
Json bundle_to_json(const LogCurve& x, const LogLineBundle& l);
LogLineBundle bundle_from_json(const LogCurve& x, const Json& j);

Json to_json(const NodeMonoidPresentation& p);
NodeMonoidPresentation node_presentation_from_json(const Json& j);

Json to_json(const MonoidHom& h);

}  // namespace logpic::io
