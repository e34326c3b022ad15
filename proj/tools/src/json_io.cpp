#include "conic/json_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>

namespace conic::io {

namespace {

[[noreturn]] void bad_input(const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, what);
}

double number_at(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    bad_input(std::string("expected numeric field \"") + key + "\"");
  }
  return j.at(key).get<double>();
}

}  // namespace

Vec vec_from_json(const json& j) {
  if (!j.is_array() || j.empty()) bad_input("expected a non-empty coordinate array");
  std::vector<double> coords;
  coords.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) bad_input("coordinates must be numbers");
    coords.push_back(x.get<double>());
  }
  return Vec(std::move(coords));
}

Ball ball_from_json(const json& j) {
  if (!j.is_object() || !j.contains("center")) bad_input("ball needs \"center\" and \"radius\"");
  return Ball(vec_from_json(j.at("center")), number_at(j, "radius"));
}

std::vector<Ball> balls_from_json(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_array()) {
    bad_input(std::string("expected an object with a \"") + key + "\" array");
  }
  std::vector<Ball> balls;
  for (const auto& b : j.at(key)) balls.push_back(ball_from_json(b));
  if (balls.empty()) bad_input("ball list is empty");
  const std::size_t dim = balls[0].center.dim();
  for (const Ball& b : balls) {
    if (b.center.dim() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "balls have mixed dimensions");
    }
  }
  return balls;
}

Hyperplane plane_from_json(const json& j) {
  if (!j.is_object() || !j.contains("normal")) bad_input("plane needs \"normal\" and \"offset\"");
  return Hyperplane::from_unnormalized(vec_from_json(j.at("normal")), number_at(j, "offset"));
}

ConicSpec conic_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    bad_input("conic needs a string \"kind\"");
  }
  const std::string kind = j.at("kind").get<std::string>();
  const bool has_foci = j.contains("focus1") && j.contains("focus2");
  const bool has_frame = j.contains("center") && j.contains("axis");

  auto foci = [&]() -> std::pair<Vec, Vec> {
    if (has_foci) return {vec_from_json(j.at("focus1")), vec_from_json(j.at("focus2"))};
    if (!has_frame || !j.contains("c")) {
      bad_input("conic needs either focus1/focus2 or center/axis/c");
    }
    const Vec center = vec_from_json(j.at("center"));
    const UnitVec axis = normalize(vec_from_json(j.at("axis")));
    const double c = number_at(j, "c");
    return {center + c * axis.vec(), center - c * axis.vec()};
  };

  if (kind == "HyperboloidTwoSheets") {
    const auto [p1, p2] = foci();
    return hyperboloid_from_foci(p1, p2, 2.0 * number_at(j, "a"));
  }
  if (kind == "Ellipsoid") {
    const auto [p1, p2] = foci();
    return ellipsoid_from_foci(p1, p2, 2.0 * number_at(j, "a"));
  }
  if (kind == "Paraboloid") {
    const auto [p1, p2] = foci();
    return paraboloid_from_points(p1, p2);
  }
  if (kind == "Cone") {
    if (!has_frame) bad_input("cone needs center/axis/eccentricity");
    return cone_from_axis(vec_from_json(j.at("center")),
                          normalize(vec_from_json(j.at("axis"))),
                          number_at(j, "eccentricity"));
  }
  bad_input("unknown conic kind \"" + kind + "\"");
}

json to_json(const Vec& v) {
  json a = json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(v[i]);
  return a;
}

json to_json(const Hyperplane& p) {
  return json{{"normal", to_json(p.normal.vec())}, {"offset", p.offset}};
}

json to_json(const ConicSpec& spec) {
  json j{{"kind", to_string(spec.kind)},
         {"dim", spec.dim()},
         {"center", to_json(spec.center)},
         {"axis", to_json(spec.axis.vec())},
         {"c", spec.c_param}};
  if (spec.a) j["a"] = *spec.a;
  if (spec.b) j["b"] = *spec.b;
  if (spec.eccentricity) j["eccentricity"] = *spec.eccentricity;
  j["focus1"] = to_json(spec.focus1());
  if (spec.kind != ConicKind::Cone) j["focus2"] = to_json(spec.focus2());
  return j;
}

json to_json(const Ball& b) {
  return json{{"center", to_json(b.center)}, {"radius", b.radius}};
}

json to_json(const Bisector& b) {
  json j{{"pair", json::array({b.index_j, b.index_k})}};
  if (b.type == Bisector::Type::Plane) {
    j["type"] = "plane";
    j["plane"] = to_json(*b.plane);
  } else {
    j["type"] = "sheet";
    j["conic"] = to_json(*b.conic);
    j["sheet"] = to_string(b.sheet);
  }
  return j;
}

json to_json(const TripleHyperplane& t) {
  json j{{"plane", to_json(t.plane)},
         {"order", json::array({t.order[0], t.order[1], t.order[2]})}};
  switch (t.source_case) {
    case TripleHyperplane::SourceCase::DistinctRadii: j["source_case"] = "distinct"; break;
    case TripleHyperplane::SourceCase::EqualKL: j["source_case"] = "equal_kl"; break;
    case TripleHyperplane::SourceCase::EqualJK: j["source_case"] = "equal_jk"; break;
  }
  if (t.d_point) j["d_point"] = to_json(*t.d_point);
  if (t.u_t) j["u_t"] = to_json(t.u_t->vec());
  return j;
}

json to_json(const SliceResult& r) {
  json j{{"class", to_string(r.cls)}, {"tilde_c", r.tilde_c}, {"h_hat", r.h_hat}};
  j["conic"] = r.conic ? to_json(*r.conic) : json(nullptr);
  json hull = json::array();
  for (const UnitVec& h : r.hull_basis) hull.push_back(to_json(h.vec()));
  j["hull_basis"] = hull;
  j["radius"] = r.radius ? json(*r.radius) : json(nullptr);
  if (r.point) j["point"] = to_json(*r.point);
  if (r.ray_direction) j["ray_direction"] = to_json(r.ray_direction->vec());
  return j;
}

json to_json(const CascadeResult& r, bool verbose) {
  json j;
  switch (r.kind) {
    case CascadeResult::Kind::Conic: j["kind"] = "Conic"; break;
    case CascadeResult::Kind::Flat: j["kind"] = "Flat"; break;
    case CascadeResult::Kind::PointPair: j["kind"] = "PointPair"; break;
    case CascadeResult::Kind::Empty: j["kind"] = "Empty"; break;
  }
  j["sheet_vertex"] = to_json(r.sheet_vertex);
  j["tangent_z"] = r.tangent_z;
  j["result_dim"] = r.result_dim;
  if (r.conic) {
    j["conic"] = to_json(*r.conic);
    j["sheet"] = to_string(r.sheet);
  }
  if (r.flat_point) {
    json basis = json::array();
    for (const UnitVec& q : r.flat_basis) basis.push_back(to_json(q.vec()));
    j["flat"] = json{{"point", to_json(*r.flat_point)}, {"basis", basis}};
  }
  if (!r.points.empty()) {
    json pts = json::array();
    for (const Vec& p : r.points) pts.push_back(to_json(p));
    j["points"] = pts;
  }
  if (!r.hull_basis.empty()) {
    json hull = json::array();
    for (const UnitVec& h : r.hull_basis) hull.push_back(to_json(h.vec()));
    j["hull_basis"] = hull;
  }
  if (verbose) {
    json steps = json::array();
    for (const CascadeStepDiag& d : r.step_diags) {
      steps.push_back(json{{"k", d.k},
                           {"branch", d.branch},
                           {"rho", d.rho},
                           {"sigma", d.sigma},
                           {"eps", d.eps},
                           {"h_hat", d.h_hat},
                           {"tilde_c", d.tilde_c},
                           {"u_dot_v1", d.u_dot_v1},
                           {"v_dot_v1", d.v_dot_v1},
                           {"max_hp_cross", d.max_hp_cross},
                           {"max_v_hp", d.max_v_hp}});
    }
    j["diagnostics"] = steps;
  }
  return j;
}

json to_json(const TangentCircle& c) {
  json pattern = json::array();
  for (int s : c.pattern) pattern.push_back(s);
  json tangency = json::array();
  for (TangencyType t : c.tangency) {
    tangency.push_back(t == TangencyType::Internal ? "internal" : "external");
  }
  return json{{"center", to_json(c.center)},
              {"radius", c.radius},
              {"pattern", pattern},
              {"tangency", tangency},
              {"residual", c.residual}};
}

json to_json(const ApolloniusResult& r) {
  json circles = json::array();
  for (const TangentCircle& c : r.circles) circles.push_back(to_json(c));
  json reports = json::array();
  for (const PatternReport& p : r.reports) {
    json pattern = json::array();
    for (int s : p.pattern) pattern.push_back(s);
    const char* status = "infeasible";
    switch (p.status) {
      case PatternReport::Status::Solved: status = "solved"; break;
      case PatternReport::Status::Degenerate: status = "degenerate"; break;
      case PatternReport::Status::Empty: status = "empty"; break;
      case PatternReport::Status::Contained: status = "contained"; break;
      case PatternReport::Status::Infeasible: status = "infeasible"; break;
    }
    reports.push_back(json{{"pattern", pattern}, {"status", status}, {"detail", p.detail}});
  }
  return json{{"circles", circles}, {"patterns", reports}};
}

namespace {

void dump_rec(const json& j, std::string& out, bool pretty, int indent) {
  const std::string pad(pretty ? 2 * (indent + 1) : 0, ' ');
  const std::string close_pad(pretty ? 2 * indent : 0, ' ');
  const char* nl = pretty ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // nlohmann objects iterate sorted
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += json(it.key()).dump();
        out += pretty ? ": " : ":";
        dump_rec(it.value(), out, pretty, indent + 1);
      }
      out += nl;
      out += close_pad;
      out += "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) {
          out += ",";
          out += nl;
        }
        out += pad;
        dump_rec(j[i], out, pretty, indent + 1);
      }
      out += nl;
      out += close_pad;
      out += "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        throw Error(ErrorCode::NonFinite, "refusing to serialize a non-finite number");
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      return;
    }
    case json::value_t::number_integer: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%" PRId64, j.get<std::int64_t>());
      out += buf;
      return;
    }
    case json::value_t::number_unsigned: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%" PRIu64, j.get<std::uint64_t>());
      out += buf;
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump(const json& j, bool pretty) {
  std::string out;
  dump_rec(j, out, pretty, 0);
  out += "\n";
  return out;
}

}  // namespace conic::io
