#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hallway/camera.hpp"
#include "hallway/floorplan.hpp"
#include "hallway/radio.hpp"

namespace hallway {

/// Total-least-squares line with its supporting points ordered by forward
/// distance.
struct EdgeLineFit {
  Vec2 point;  // centroid of the supporting points
  Vec2 dir;    // unit direction, dir.y >= 0
  std::vector<GroundPoint> support;
};

struct EdgeLinePair {
  EdgeLineFit left;
  EdgeLineFit right;
};

/// Splits detections by the camera axis (x < 0 vs x >= 0) and fits one line
/// per side. Throws insufficient_points when a side has fewer than 2 points.
EdgeLinePair fit_edge_lines(const std::vector<GroundPoint>& points);

struct Correspondence {
  GroundPoint ground;
  std::string landmark_id;
};

/// One sampled 4-point correspondence hypothesis (2 per side).
struct CandidateSet {
  std::vector<Correspondence> pairs;
};

/// Samples 2 points per fitted line (probability proportional to their
/// separation, order preserved) `count` times and enumerates landmark
/// assignments that stay inside the WLAN radius, respect side and
/// along-hallway ordering, and pass pairwise-distance compatibility within
/// pair_distance_tol. Duplicate assignments are emitted once.
std::vector<CandidateSet> generate_hypotheses(const EdgeLinePair& lines, const FloorPlan& plan,
                                              const PositionFix& wlan, std::mt19937_64& rng,
                                              int count, double pair_distance_tol = 0.5);

/// Least-squares rigid motion (rotation + translation, no scale) mapping the
/// ground points onto their plan points; at least 2 non-coincident pairs.
RigidTransform2 fit_rigid_2d(const std::vector<std::pair<GroundPoint, Vec2>>& pairs);
Pose2D estimate_rigid_2d(const std::vector<std::pair<GroundPoint, Vec2>>& pairs);

struct MatchHypothesis {
  std::vector<Correspondence> correspondences;  // the winning sampled pairs
  Pose2D pose;
  std::vector<std::string> inliers;  // matched landmark ids
  double residual_rms = 0.0;         // meters, over the inliers
};

/// Scores every candidate by the number of detections that land within
/// inlier_tol of an in-radius plan landmark (greedy one-to-one matching),
/// keeps the best (ties: smaller residual, then first generated) and refines
/// its pose over all inliers.
MatchHypothesis ransac_match(const std::vector<CandidateSet>& candidates,
                             const std::vector<GroundPoint>& detections, const FloorPlan& plan,
                             const PositionFix& wlan, double inlier_tol);

/// Final integration: the match replaces the WLAN fix only when it has at
/// least min_inliers inliers and lies inside the WLAN search radius;
/// otherwise the WLAN fix passes through unchanged.
PositionFix fuse(const PositionFix& wlan, const std::optional<MatchHypothesis>& match,
                 int min_inliers = 4);

}  // namespace hallway
