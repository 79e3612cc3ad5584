#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hallway/camera.hpp"
#include "hallway/floorplan.hpp"
#include "hallway/illuminant.hpp"
#include "hallway/image.hpp"

namespace hallway {

enum class ShadingMode { flat, falloff };

struct Shading {
  ShadingMode mode = ShadingMode::flat;
  double rate = 0.0;  // per meter, used by falloff
};

struct DoorPlacement {
  PlanSide side = PlanSide::left;
  double offset = 0.0;  // meters along the hallway to the near jamb
  double width = 0.9;   // meters
};

/// Parametric hallway scene. The corridor runs along +y in the plan frame,
/// walls at x = 0 (left) and x = hallway_width (right). Doors are flush
/// panels with a color-contrasting threshold mat on the floor whose wall-side
/// corners sit exactly on the jamb landmarks; the mats' corridor-side corners
/// are rounded so the only sharp floor-boundary turns are at the jambs.
struct SceneSpec {
  double hallway_width = 3.0;
  double visible_depth = 12.0;
  double ceiling_height = 3.0;
  Vec3 floor_albedo{0.45, 0.45, 0.62};
  Vec3 wall_albedo{0.45, 0.45, 0.30};
  Vec3 door_albedo{0.62, 0.33, 0.22};
  std::vector<DoorPlacement> doors;
  double mat_depth = 0.5;          // meters into the corridor
  double mat_corner_radius = 0.25; // corridor-side rounding
  double door_height = 2.1;
  double white_tile_albedo = 0.0;  // > 0 places a white calibration tile
  Illuminant illuminant = Illuminant::white();
  double specular_strength = 0.0;  // glossy floor patch, 0 disables
  Shading shading;
  CameraModel camera;
  Pose2D true_pose;
};

struct TruthCorner {
  std::string id;  // landmark id in the plan
  double u = 0.0;
  double v = 0.0;
};

struct GroundTruth {
  Illuminant illuminant = Illuminant::white();
  std::vector<TruthCorner> corner_pixels;  // visible landmarks only
  std::vector<std::uint8_t> floor_mask;    // row-major, 1 where the floor plane is seen
  FloorPlan plan;
  Pose2D pose;
};

struct RenderResult {
  Image image;
  GroundTruth truth;
};

/// Ray-casts the hallway box. Deterministic; throws clipping_risk when the
/// configured albedos, specular strength and illuminant could exceed 1.0, and
/// degenerate_camera when no floor is visible.
RenderResult render(const SceneSpec& spec);

/// Landmarks at every wall-floor hallway corner and door jamb, the two edge
/// lines, and the corridor polygon.
FloorPlan make_plan(const SceneSpec& spec);

SceneSpec load_scene_spec(const std::string& path);
void save_scene_spec(const SceneSpec& spec, const std::string& path);

void save_ground_truth(const GroundTruth& truth, const std::string& path);
GroundTruth load_ground_truth(const std::string& path);

}  // namespace hallway
