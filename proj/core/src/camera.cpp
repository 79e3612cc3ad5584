#include "hallway/camera.hpp"

#include <cmath>

#include "hallway/error.hpp"

namespace hallway {

GroundPoint inverse_perspective(const CameraModel& cam, double u, double v) {
  const double a = (u - cam.cx) / cam.focal;
  const double b = (v - cam.cy) / cam.focal;
  const double ct = std::cos(cam.pitch);
  const double st = std::sin(cam.pitch);

  // Ray direction in the ground frame: (a, ct - b*st, -(b*ct + st)).
  const double descent = b * ct + st;
  if (descent <= 1e-12) throw Error(Errc::above_horizon, "ray does not descend to the floor");
  const double range = cam.height / descent;
  const double x = range * a;
  const double y = range * (ct - b * st);
  if (y <= 0.0) throw Error(Errc::above_horizon, "floor intersection behind the camera");
  return GroundPoint{{x, y}};
}

std::optional<PixelPoint> project_ground_point(const CameraModel& cam, Vec2 ground) {
  const double ct = std::cos(cam.pitch);
  const double st = std::sin(cam.pitch);
  const double xc = ground.x;
  const double yc = -ground.y * st + cam.height * ct;  // image-down axis
  const double zc = ground.y * ct + cam.height * st;   // optical axis
  if (zc <= 1e-12) return std::nullopt;
  PixelPoint px{cam.cx + cam.focal * xc / zc, cam.cy + cam.focal * yc / zc};
  if (px.u < 0.0 || px.v < 0.0 || px.u > cam.image_width - 1 || px.v > cam.image_height - 1)
    return std::nullopt;
  return px;
}

Pose2D transform_to_pose(const RigidTransform2& tf) {
  Pose2D pose;
  pose.position = tf.t;
  // Forward axis (0, 1) maps to (-s, c).
  pose.heading = wrap_angle(std::atan2(tf.c, -tf.s));
  return pose;
}

RigidTransform2 pose_to_transform(const Pose2D& pose) {
  const double theta = pose.heading - 1.57079632679489661923;  // heading of +y axis is pi/2
  RigidTransform2 tf;
  tf.c = std::cos(theta);
  tf.s = std::sin(theta);
  tf.t = pose.position;
  return tf;
}

}  // namespace hallway
