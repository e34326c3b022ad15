#pragma once

#include <string>

#include "conic/apollonius.hpp"
#include "conic/cascade.hpp"
#include "conic/slicer.hpp"

#include "json.hpp"

namespace conic::io {

using json = nlohmann::json;

// parsing (throws Error with code InvalidArgument / DimensionMismatch)
Vec vec_from_json(const json& j);
Ball ball_from_json(const json& j);
std::vector<Ball> balls_from_json(const json& j, const char* key);
Hyperplane plane_from_json(const json& j);
ConicSpec conic_from_json(const json& j);

// serialization
json to_json(const Vec& v);
json to_json(const Hyperplane& p);
json to_json(const ConicSpec& spec);
json to_json(const Ball& b);
json to_json(const Bisector& b);
json to_json(const TripleHyperplane& t);
json to_json(const SliceResult& r);
json to_json(const CascadeResult& r, bool verbose);
json to_json(const TangentCircle& c);
json to_json(const ApolloniusResult& r);

/// Deterministic serialization: keys sorted, doubles printed with 17
/// significant digits so values round-trip exactly.
std::string dump(const json& j, bool pretty);

}  // namespace conic::io
