#pragma once

#include <string>
#include <vector>

#include "hallway/geom.hpp"

namespace hallway {

enum class LandmarkKind { door_floor, wall_floor };
enum class PlanSide { left, right };

/// Micro-landmark: a point where a door jamb or wall meets the floor edge.
struct Landmark {
  std::string id;
  Vec2 position;  // meters, plan frame
  LandmarkKind kind = LandmarkKind::wall_floor;
};

struct PlanEdgeLine {
  PlanSide side = PlanSide::left;
  Vec2 a;
  Vec2 b;
};

struct FloorPlan {
  std::vector<Landmark> landmarks;
  std::vector<PlanEdgeLine> edge_lines;
  std::vector<std::vector<Vec2>> hallways;  // polygons, meters
};

/// Validates invariants: unique landmark ids, positive edge-line lengths,
/// every landmark inside (or on the border of) some hallway polygon.
void validate_floor_plan(const FloorPlan& plan);

FloorPlan load_floor_plan(const std::string& path);
void save_floor_plan(const FloorPlan& plan, const std::string& path);

/// Point-in-polygon with a small boundary tolerance (points on edges count
/// as inside).
bool point_in_polygon(Vec2 p, const std::vector<Vec2>& polygon, double tol = 1e-9);

const char* to_string(LandmarkKind kind);
const char* to_string(PlanSide side);

}  // namespace hallway
