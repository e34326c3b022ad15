// conic: batch front end over the conic/slice/bisector/cascade library.
// Reads JSON inputs, writes one JSON document to stdout. Exit codes:
//   0 success, 2 input validation error, 3 geometric infeasibility.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "conic/json_io.hpp"

namespace {

using namespace conic;
using conic::io::json;

struct Args {
  std::string conic_path;
  std::string plane_path;
  std::string balls_path;
  std::string circles_path;
  std::vector<std::size_t> pair;
  double tol = 1.0;
  std::uint64_t seed = 0;
  std::size_t count = 100;
  bool pretty = false;
  bool verbose = false;
  std::string sheet = "auto";
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw Error(ErrorCode::InvalidArgument, "malformed JSON in '" + path + "'");
  return j;
}

void emit(const json& j, bool pretty) { std::cout << io::dump(j, pretty); }

SheetTag sheet_for(const ConicSpec& spec, const std::string& requested) {
  if (requested == "1") return SheetTag::Sheet1;
  if (requested == "2") return SheetTag::Sheet2;
  if (requested == "whole") return SheetTag::Whole;
  if (requested != "auto") {
    throw Error(ErrorCode::InvalidArgument, "--sheet must be one of 1, 2, whole, auto");
  }
  const bool two_sheets =
      spec.kind == ConicKind::HyperboloidTwoSheets || spec.kind == ConicKind::Cone;
  return two_sheets ? SheetTag::Sheet1 : SheetTag::Whole;
}

int run_slice(const Args& a) {
  const ConicSpec spec = io::conic_from_json(load_json(a.conic_path));
  const Hyperplane plane = io::plane_from_json(load_json(a.plane_path));
  const SliceResult res = slice(spec, plane);  // throws EmptyIntersection when empty
  emit(io::to_json(res), a.pretty);
  return 0;
}

int run_bisector(const Args& a) {
  const auto balls = io::balls_from_json(load_json(a.balls_path), "balls");
  std::size_t j = 0, k = 1;
  if (!a.pair.empty()) {
    if (a.pair.size() != 2) throw Error(ErrorCode::InvalidArgument, "--pair needs two indices");
    j = a.pair[0];
    k = a.pair[1];
  } else if (balls.size() != 2) {
    throw Error(ErrorCode::InvalidArgument, "give --pair J K when more than two balls are supplied");
  }
  if (j >= balls.size() || k >= balls.size() || j == k) {
    throw Error(ErrorCode::InvalidArgument, "--pair indices out of range or equal");
  }
  Bisector b = bisector(balls[j], balls[k]);
  // report the caller's indices, ordered so the first has the larger radius
  const bool swap = balls[k].radius > balls[j].radius;
  b.index_j = swap ? k : j;
  b.index_k = swap ? j : k;
  emit(io::to_json(b), a.pretty);
  return 0;
}

int run_intersect(const Args& a) {
  const auto balls = io::balls_from_json(load_json(a.balls_path), "balls");
  const CascadeResult res = intersect_bisectors(balls);
  emit(io::to_json(res, a.verbose), a.pretty);
  return 0;
}

int run_apollonius(const Args& a) {
  const auto circles = io::balls_from_json(load_json(a.circles_path), "circles");
  const ApolloniusResult res = solve_apollonius(circles);
  emit(io::to_json(res), a.pretty);
  return 0;
}

int run_sample(const Args& a) {
  json out;
  std::vector<Vec> pts;
  if (!a.conic_path.empty() && !a.plane_path.empty()) {
    const ConicSpec spec = io::conic_from_json(load_json(a.conic_path));
    const Hyperplane plane = io::plane_from_json(load_json(a.plane_path));
    const SliceResult res = slice(spec, plane);
    pts = sample_slice_points(res, a.count, a.seed);
    for (const Vec& x : pts) {
      const double r = spec.kind == ConicKind::Paraboloid ? paraboloid_residual(spec, x)
                                                          : quadric_residual(spec, x);
      const double scale = std::max({1.0, norm_inf(spec.center), spec.c_param, norm_inf(x)});
      if (std::abs(r) > 1e-7 * scale * scale || std::abs(plane.signed_distance(x)) > 1e-9 * scale) {
        throw Error(ErrorCode::InfeasibleConfiguration, "sample failed re-verification");
      }
    }
    out["class"] = to_string(res.cls);
  } else if (!a.conic_path.empty()) {
    const ConicSpec spec = io::conic_from_json(load_json(a.conic_path));
    const SheetTag tag = sheet_for(spec, a.sheet);
    pts = sample_points(spec, tag, a.count, a.seed);
    for (const Vec& x : pts) {
      const double scale = std::max({1.0, norm_inf(spec.center), spec.c_param, norm_inf(x)});
      // quadratic forms scale with length^2, distance defects with length
      const bool quadratic = spec.kind == ConicKind::Paraboloid || spec.kind == ConicKind::Cone;
      const double r = spec.kind == ConicKind::Paraboloid ? paraboloid_residual(spec, x)
                       : spec.kind == ConicKind::Cone     ? quadric_residual(spec, x)
                                                          : metric_residual(spec, x).value;
      if (std::abs(r) > 1e-7 * scale * (quadratic ? scale : 1.0)) {
        throw Error(ErrorCode::InfeasibleConfiguration, "sample failed re-verification");
      }
    }
    out["sheet"] = to_string(tag);
  } else if (!a.balls_path.empty()) {
    const auto balls = io::balls_from_json(load_json(a.balls_path), "balls");
    const CascadeResult res = intersect_bisectors(balls);
    pts = sample_result(res, a.count, a.seed);  // verified internally
    out["kind"] = io::to_json(res, false)["kind"];
  } else {
    throw Error(ErrorCode::InvalidArgument, "sample needs --conic [--plane] or --balls");
  }
  json arr = json::array();
  for (const Vec& x : pts) arr.push_back(io::to_json(x));
  out["points"] = arr;
  out["count"] = pts.size();
  emit(out, a.pretty);
  return 0;
}

int run_verify(const Args& a) {
  json out;
  bool ok = true;
  if (!a.conic_path.empty()) {
    const ConicSpec spec = io::conic_from_json(load_json(a.conic_path));
    const double scale = std::max({1.0, norm_inf(spec.center), spec.c_param});
    double worst = 0.0;
    const bool two_sheets =
        spec.kind == ConicKind::HyperboloidTwoSheets || spec.kind == ConicKind::Cone;
    const std::vector<SheetTag> tags =
        two_sheets ? std::vector<SheetTag>{SheetTag::Sheet1, SheetTag::Sheet2}
                   : std::vector<SheetTag>{SheetTag::Whole};
    const bool quadratic =
        spec.kind == ConicKind::Paraboloid || spec.kind == ConicKind::Cone;
    for (SheetTag tag : tags) {
      for (const Vec& x : sample_points(spec, tag, a.count, a.seed)) {
        const double r = spec.kind == ConicKind::Paraboloid
                             ? paraboloid_residual(spec, x)
                             : (spec.kind == ConicKind::Cone ? quadric_residual(spec, x)
                                                             : metric_residual(spec, x).value);
        worst = std::max(worst, std::abs(r));
      }
    }
    ok = worst <= 1e-8 * scale * (quadratic ? scale : 1.0);
    out["conic"] = io::to_json(spec);
    out["max_residual"] = worst;
  } else if (!a.balls_path.empty()) {
    const auto balls = io::balls_from_json(load_json(a.balls_path), "balls");
    const CascadeResult res = intersect_bisectors(balls);
    double worst = 0.0;
    double scale = 1.0;
    for (const Ball& b : balls) scale = std::max({scale, norm_inf(b.center), b.radius});
    for (const Vec& x : sample_result(res, a.count, a.seed)) {
      worst = std::max(worst, tangency_spread(x, balls));
    }
    out["kind"] = io::to_json(res, false)["kind"];
    out["max_tangency_spread"] = worst;
    if (res.final_state) {
      const StateDiagnostics d = verify_state(*res.final_state);
      out["diagnostics"] = json{{"max_abs_u_dot_v1", d.max_abs_u_dot_v1},
                                {"min_v_dot_v1", d.min_v_dot_v1},
                                {"max_hp_pair_dot", d.max_hp_pair_dot},
                                {"max_v_dot_hp", d.max_v_dot_hp}};
      ok = ok && d.max_abs_u_dot_v1 <= 1e-9 && d.min_v_dot_v1 > 0.0;
    }
    ok = ok && worst <= 1e-7 * scale;
  } else if (!a.circles_path.empty()) {
    const auto circles = io::balls_from_json(load_json(a.circles_path), "circles");
    const ApolloniusResult res = solve_apollonius(circles);
    double scale = 1.0;
    for (const Ball& b : circles) scale = std::max({scale, norm_inf(b.center), b.radius});
    double worst = 0.0;
    for (const TangentCircle& c : res.circles) {
      worst = std::max(worst, verify_tangency(c, circles));
    }
    ok = worst <= 1e-8 * scale;
    out["circles"] = res.circles.size();
    out["max_tangency_residual"] = worst;
  } else {
    throw Error(ErrorCode::InvalidArgument, "verify needs --conic, --balls or --circles");
  }
  out["ok"] = ok;
  emit(out, a.pretty);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"n-dimensional conic sections, hyperplane slices, ball bisectors"};
  app.require_subcommand(1);

  Args a;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", a.tol, "scale all internal tolerances");
    cmd->add_option("--seed", a.seed, "random seed for samplers");
    cmd->add_option("--count", a.count, "number of sampled points");
    cmd->add_flag("--pretty", a.pretty, "indent the JSON output");
    cmd->add_flag("--verbose", a.verbose, "include per-step diagnostics");
  };

  CLI::App* slice_cmd = app.add_subcommand("slice", "intersect a conic with a hyperplane");
  slice_cmd->add_option("--conic", a.conic_path, "conic JSON file")->required();
  slice_cmd->add_option("--plane", a.plane_path, "plane JSON file")->required();
  add_common(slice_cmd);

  CLI::App* bis_cmd = app.add_subcommand("bisector", "bisector of two balls");
  bis_cmd->add_option("--balls", a.balls_path, "balls JSON file")->required();
  bis_cmd->add_option("--pair", a.pair, "indices of the two balls")->expected(2);
  add_common(bis_cmd);

  CLI::App* int_cmd = app.add_subcommand("intersect", "intersect all pairwise bisectors");
  int_cmd->add_option("--balls", a.balls_path, "balls JSON file")->required();
  add_common(int_cmd);

  CLI::App* apo_cmd = app.add_subcommand("apollonius", "tangent circles of three circles");
  apo_cmd->add_option("--circles", a.circles_path, "circles JSON file")->required();
  add_common(apo_cmd);

  CLI::App* sample_cmd = app.add_subcommand("sample", "sample points on a conic/slice/result");
  sample_cmd->add_option("--conic", a.conic_path, "conic JSON file");
  sample_cmd->add_option("--plane", a.plane_path, "plane JSON file");
  sample_cmd->add_option("--balls", a.balls_path, "balls JSON file");
  sample_cmd->add_option("--sheet", a.sheet, "sheet to sample: 1, 2, whole, auto");
  add_common(sample_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "re-check invariants of an input");
  verify_cmd->add_option("--conic", a.conic_path, "conic JSON file");
  verify_cmd->add_option("--balls", a.balls_path, "balls JSON file");
  verify_cmd->add_option("--circles", a.circles_path, "circles JSON file");
  add_common(verify_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    set_tolerance_scale(a.tol);
    if (slice_cmd->parsed()) return run_slice(a);
    if (bis_cmd->parsed()) return run_bisector(a);
    if (int_cmd->parsed()) return run_intersect(a);
    if (apo_cmd->parsed()) return run_apollonius(a);
    if (sample_cmd->parsed()) return run_sample(a);
    if (verify_cmd->parsed()) return run_verify(a);
  } catch (const Error& e) {
    const conic::io::json err{{"error", to_string(e.code())}, {"message", e.what()}};
    std::cout << io::dump(err, a.pretty);
    return e.infeasible() ? 3 : 2;
  } catch (const std::exception& e) {
    const conic::io::json err{{"error", "InternalError"}, {"message", e.what()}};
    std::cout << io::dump(err, a.pretty);
    return 2;
  }
  return 2;
}
