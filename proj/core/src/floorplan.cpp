#include "hallway/floorplan.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "hallway/error.hpp"

namespace hallway {

namespace {

using nlohmann::json;

LandmarkKind parse_kind(const std::string& s) {
  if (s == "door_floor") return LandmarkKind::door_floor;
  if (s == "wall_floor") return LandmarkKind::wall_floor;
  throw Error(Errc::parse_error, "unknown landmark kind '" + s + "'");
}

PlanSide parse_side(const std::string& s) {
  if (s == "left") return PlanSide::left;
  if (s == "right") return PlanSide::right;
  throw Error(Errc::parse_error, "unknown side '" + s + "'");
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= 0.0) return distance(p, a);
  double t = dot(p - a, ab) / len2;
  t = std::fmin(1.0, std::fmax(0.0, t));
  return distance(p, a + t * ab);
}

}  // namespace

const char* to_string(LandmarkKind kind) {
  return kind == LandmarkKind::door_floor ? "door_floor" : "wall_floor";
}

const char* to_string(PlanSide side) { return side == PlanSide::left ? "left" : "right"; }

bool point_in_polygon(Vec2 p, const std::vector<Vec2>& polygon, double tol) {
  const size_t n = polygon.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i)
    if (point_segment_distance(p, polygon[i], polygon[(i + 1) % n]) <= tol) return true;
  bool inside = false;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

void validate_floor_plan(const FloorPlan& plan) {
  std::set<std::string> ids;
  for (const Landmark& lm : plan.landmarks) {
    if (!ids.insert(lm.id).second)
      throw Error(Errc::invalid_argument, "duplicate landmark id '" + lm.id + "'");
  }
  for (const PlanEdgeLine& line : plan.edge_lines) {
    if (distance(line.a, line.b) <= 0.0)
      throw Error(Errc::invalid_argument, "edge line with zero length");
  }
  for (const Landmark& lm : plan.landmarks) {
    bool housed = false;
    for (const auto& poly : plan.hallways)
      if (point_in_polygon(lm.position, poly)) {
        housed = true;
        break;
      }
    if (!housed)
      throw Error(Errc::invalid_argument,
                  "landmark '" + lm.id + "' lies outside every hallway polygon");
  }
}

FloorPlan load_floor_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_failure, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("bad plan JSON: ") + e.what());
  }

  FloorPlan plan;
  try {
    for (const auto& item : j.at("landmarks")) {
      Landmark lm;
      lm.id = item.at("id").get<std::string>();
      lm.position = {item.at("x").get<double>(), item.at("y").get<double>()};
      lm.kind = parse_kind(item.at("kind").get<std::string>());
      plan.landmarks.push_back(lm);
    }
    for (const auto& item : j.at("edge_lines")) {
      PlanEdgeLine line;
      line.side = parse_side(item.at("side").get<std::string>());
      line.a = {item.at("x1").get<double>(), item.at("y1").get<double>()};
      line.b = {item.at("x2").get<double>(), item.at("y2").get<double>()};
      plan.edge_lines.push_back(line);
    }
    for (const auto& poly : j.at("hallways")) {
      std::vector<Vec2> points;
      for (const auto& pt : poly)
        points.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
      plan.hallways.push_back(std::move(points));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("bad plan JSON: ") + e.what());
  }
  validate_floor_plan(plan);
  return plan;
}

void save_floor_plan(const FloorPlan& plan, const std::string& path) {
  json j;
  j["landmarks"] = json::array();
  for (const Landmark& lm : plan.landmarks)
    j["landmarks"].push_back(
        {{"id", lm.id}, {"x", lm.position.x}, {"y", lm.position.y}, {"kind", to_string(lm.kind)}});
  j["edge_lines"] = json::array();
  for (const PlanEdgeLine& line : plan.edge_lines)
    j["edge_lines"].push_back({{"side", to_string(line.side)},
                               {"x1", line.a.x},
                               {"y1", line.a.y},
                               {"x2", line.b.x},
                               {"y2", line.b.y}});
  j["hallways"] = json::array();
  for (const auto& poly : plan.hallways) {
    json jpoly = json::array();
    for (const Vec2& pt : poly) jpoly.push_back({pt.x, pt.y});
    j["hallways"].push_back(jpoly);
  }

  std::ofstream out(path);
  if (!out) throw Error(Errc::io_failure, "cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
  if (!out) throw Error(Errc::io_failure, "write failed for " + path);
}

}  // namespace hallway
