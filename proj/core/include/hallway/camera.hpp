#pragma once

#include <optional>

#include "hallway/geom.hpp"

namespace hallway {

/// Calibrated pinhole looking down a hallway: mounted `height` meters above
/// the floor, pitched `pitch` radians downward from horizontal.
struct CameraModel {
  double focal = 200.0;  // pixels
  double cx = 0.0;       // principal point
  double cy = 0.0;
  int image_width = 0;
  int image_height = 0;
  double height = 1.4;   // meters above the floor
  double pitch = 0.17;   // radians, downward, in (0, pi/2)
};

/// Point on the floor in the camera's ground frame: x right, y forward,
/// origin directly below the camera. Valid points have y > 0.
struct GroundPoint {
  Vec2 position;
};

/// Camera pose in the floor-plan frame. heading is the direction the camera
/// faces, measured from the plan +x axis, in (-pi, pi].
struct Pose2D {
  Vec2 position;
  double heading = 0.0;
};

/// Back-projects pixel (u, v) through the pinhole onto the floor plane.
/// Throws above_horizon when the ray misses the floor in front of the camera.
GroundPoint inverse_perspective(const CameraModel& cam, double u, double v);

struct PixelPoint {
  double u = 0.0;
  double v = 0.0;
};

/// Forward projection of a camera-ground-frame floor point to the image.
/// Empty when the point is behind the camera or outside the image.
std::optional<PixelPoint> project_ground_point(const CameraModel& cam, Vec2 ground);

/// 2-D rigid motion q = R p + t mapping camera ground coordinates into the
/// plan frame.
struct RigidTransform2 {
  double c = 1.0;  // cos(theta)
  double s = 0.0;  // sin(theta)
  Vec2 t;

  Vec2 apply(Vec2 p) const { return {c * p.x - s * p.y + t.x, s * p.x + c * p.y + t.y}; }
};

/// The camera pose implied by a camera-to-plan transform: position is the
/// image of the camera origin, heading the image of the forward (+y) axis.
Pose2D transform_to_pose(const RigidTransform2& tf);
RigidTransform2 pose_to_transform(const Pose2D& pose);

}  // namespace hallway
