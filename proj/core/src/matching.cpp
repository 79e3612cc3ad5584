#include "hallway/matching.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hallway/error.hpp"

namespace hallway {

namespace {

EdgeLineFit fit_line(std::vector<GroundPoint> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const GroundPoint& a, const GroundPoint& b) { return a.position.y < b.position.y; });
  Vec2 centroid;
  for (const GroundPoint& p : pts) centroid = centroid + p.position;
  centroid = (1.0 / static_cast<double>(pts.size())) * centroid;

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const GroundPoint& p : pts) {
    const Vec2 d = p.position - centroid;
    sxx += d.x * d.x;
    sxy += d.x * d.y;
    syy += d.y * d.y;
  }
  // Principal direction of the scatter matrix.
  const double angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  Vec2 dir{std::cos(angle), std::sin(angle)};
  if (dir.y < 0.0) dir = -1.0 * dir;

  EdgeLineFit fit;
  fit.point = centroid;
  fit.dir = dir;
  fit.support = std::move(pts);
  return fit;
}

struct SideLandmark {
  size_t plan_index;
  double along;  // coordinate along the shared hallway axis
};

// Weighted pair sampler: pairs of support points, probability proportional
// to their separation, always returned in forward (y) order.
class PairSampler {
 public:
  explicit PairSampler(const std::vector<GroundPoint>& pts) : pts_(pts) {
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j) {
        pairs_.emplace_back(i, j);
        weights_.push_back(distance(pts[i].position, pts[j].position));
      }
  }

  bool valid() const {
    for (double w : weights_)
      if (w > 0.0) return true;
    return false;
  }

  std::pair<GroundPoint, GroundPoint> sample(std::mt19937_64& rng) {
    std::discrete_distribution<size_t> dist(weights_.begin(), weights_.end());
    const auto [i, j] = pairs_[dist(rng)];
    return {pts_[i], pts_[j]};
  }

 private:
  const std::vector<GroundPoint>& pts_;
  std::vector<std::pair<size_t, size_t>> pairs_;
  std::vector<double> weights_;
};

struct ScoredMatch {
  std::vector<std::pair<size_t, size_t>> matched;  // detection index, landmark index
  double rms = 0.0;
};

// Greedy one-to-one nearest matching of transformed detections against the
// gated landmarks.
ScoredMatch score_pose(const RigidTransform2& tf, const std::vector<GroundPoint>& detections,
                       const std::vector<const Landmark*>& gated, double inlier_tol) {
  struct Entry {
    double d;
    size_t det;
    size_t lm;
  };
  std::vector<Entry> entries;
  for (size_t i = 0; i < detections.size(); ++i) {
    const Vec2 mapped = tf.apply(detections[i].position);
    for (size_t j = 0; j < gated.size(); ++j) {
      const double d = distance(mapped, gated[j]->position);
      if (d <= inlier_tol) entries.push_back({d, i, j});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.d != b.d) return a.d < b.d;
    if (a.det != b.det) return a.det < b.det;
    return a.lm < b.lm;
  });

  ScoredMatch out;
  std::vector<char> det_used(detections.size(), 0), lm_used(gated.size(), 0);
  double sq = 0.0;
  for (const Entry& e : entries) {
    if (det_used[e.det] || lm_used[e.lm]) continue;
    det_used[e.det] = 1;
    lm_used[e.lm] = 1;
    out.matched.emplace_back(e.det, e.lm);
    sq += e.d * e.d;
  }
  if (!out.matched.empty()) out.rms = std::sqrt(sq / static_cast<double>(out.matched.size()));
  return out;
}

std::vector<const Landmark*> gate_landmarks(const FloorPlan& plan, const PositionFix& wlan) {
  std::vector<const Landmark*> gated;
  for (const Landmark& lm : plan.landmarks)
    if (distance(lm.position, wlan.position) <= wlan.radius) gated.push_back(&lm);
  return gated;
}

}  // namespace

EdgeLinePair fit_edge_lines(const std::vector<GroundPoint>& points) {
  std::vector<GroundPoint> left, right;
  for (const GroundPoint& p : points)
    (p.position.x < 0.0 ? left : right).push_back(p);
  if (left.size() < 2 || right.size() < 2)
    throw Error(Errc::insufficient_points, "need at least 2 points on each side");
  return {fit_line(std::move(left)), fit_line(std::move(right))};
}

std::vector<CandidateSet> generate_hypotheses(const EdgeLinePair& lines, const FloorPlan& plan,
                                              const PositionFix& wlan, std::mt19937_64& rng,
                                              int count, double pair_distance_tol) {
  if (count < 1) throw Error(Errc::invalid_argument, "hypothesis count must be >= 1");
  if (lines.left.support.size() < 2 || lines.right.support.size() < 2)
    throw Error(Errc::insufficient_points, "each line needs 2 supporting points");

  const std::vector<const Landmark*> gated = gate_landmarks(plan, wlan);
  if (gated.size() < 2)
    throw Error(Errc::no_candidates, "no plan landmark inside the WLAN radius");

  // Shared hallway axis taken from the plan's left edge line; landmarks are
  // assigned to the nearer edge line's side.
  const PlanEdgeLine* plan_left = nullptr;
  const PlanEdgeLine* plan_right = nullptr;
  for (const PlanEdgeLine& line : plan.edge_lines) {
    if (line.side == PlanSide::left && plan_left == nullptr) plan_left = &line;
    if (line.side == PlanSide::right && plan_right == nullptr) plan_right = &line;
  }
  if (plan_left == nullptr || plan_right == nullptr)
    throw Error(Errc::invalid_argument, "plan needs a left and a right edge line");
  Vec2 axis = plan_left->b - plan_left->a;
  axis = (1.0 / norm(axis)) * axis;

  auto line_distance = [](Vec2 p, const PlanEdgeLine& line) {
    const Vec2 ab = line.b - line.a;
    const double len2 = dot(ab, ab);
    double t = dot(p - line.a, ab) / len2;
    t = std::fmin(1.0, std::fmax(0.0, t));
    return distance(p, line.a + t * ab);
  };

  std::vector<SideLandmark> side_lm[2];  // [0] = plan left, [1] = plan right
  for (size_t i = 0; i < gated.size(); ++i) {
    const Vec2 p = gated[i]->position;
    const int side = line_distance(p, *plan_left) <= line_distance(p, *plan_right) ? 0 : 1;
    side_lm[side].push_back({i, dot(p - plan_left->a, axis)});
  }

  PairSampler left_sampler(lines.left.support);
  PairSampler right_sampler(lines.right.support);
  if (!left_sampler.valid() || !right_sampler.valid())
    throw Error(Errc::insufficient_points, "supporting points are coincident");

  std::vector<CandidateSet> out;
  std::set<std::string> seen;
  auto emit = [&](const GroundPoint& p1, const GroundPoint& p2, const GroundPoint& p3,
                  const GroundPoint& p4, const Landmark* a, const Landmark* b, const Landmark* c,
                  const Landmark* d) {
    char key[256];
    std::snprintf(key, sizeof(key), "%.4f/%.4f/%.4f/%.4f|%s|%s|%s|%s", p1.position.y,
                  p2.position.y, p3.position.y, p4.position.y, a->id.c_str(), b->id.c_str(),
                  c->id.c_str(), d->id.c_str());
    if (!seen.insert(key).second) return;
    CandidateSet cand;
    cand.pairs = {{p1, a->id}, {p2, b->id}, {p3, c->id}, {p4, d->id}};
    out.push_back(std::move(cand));
  };

  for (int draw = 0; draw < count; ++draw) {
    const auto [l1, l2] = left_sampler.sample(rng);   // l1 nearer (smaller y)
    const auto [r1, r2] = right_sampler.sample(rng);
    const double dl = distance(l1.position, l2.position);
    const double dr = distance(r1.position, r2.position);

    // polarity +1: camera faces along +axis, so camera-left is the plan-left
    // side and forward order means increasing along-coordinate.
    for (int polarity : {+1, -1}) {
      const auto& cam_left_side = polarity > 0 ? side_lm[0] : side_lm[1];
      const auto& cam_right_side = polarity > 0 ? side_lm[1] : side_lm[0];
      for (const SideLandmark& la : cam_left_side) {
        for (const SideLandmark& lb : cam_left_side) {
          if (la.plan_index == lb.plan_index) continue;
          if (polarity * (lb.along - la.along) <= 0.0) continue;
          const Landmark* A = gated[la.plan_index];
          const Landmark* B = gated[lb.plan_index];
          if (std::fabs(distance(A->position, B->position) - dl) > pair_distance_tol) continue;
          for (const SideLandmark& rc : cam_right_side) {
            for (const SideLandmark& rd : cam_right_side) {
              if (rc.plan_index == rd.plan_index) continue;
              if (polarity * (rd.along - rc.along) <= 0.0) continue;
              const Landmark* C = gated[rc.plan_index];
              const Landmark* D = gated[rd.plan_index];
              if (std::fabs(distance(C->position, D->position) - dr) > pair_distance_tol)
                continue;
              // Cross-side compatibility closes the gate.
              if (std::fabs(distance(l1.position, r1.position) -
                            distance(A->position, C->position)) > pair_distance_tol)
                continue;
              if (std::fabs(distance(l1.position, r2.position) -
                            distance(A->position, D->position)) > pair_distance_tol)
                continue;
              if (std::fabs(distance(l2.position, r1.position) -
                            distance(B->position, C->position)) > pair_distance_tol)
                continue;
              if (std::fabs(distance(l2.position, r2.position) -
                            distance(B->position, D->position)) > pair_distance_tol)
                continue;
              emit(l1, l2, r1, r2, A, B, C, D);
            }
          }
        }
      }
    }
  }
  return out;
}

RigidTransform2 fit_rigid_2d(const std::vector<std::pair<GroundPoint, Vec2>>& pairs) {
  if (pairs.size() < 2) throw Error(Errc::invalid_argument, "need at least 2 pairs");
  Vec2 pc, qc;
  for (const auto& [p, q] : pairs) {
    pc = pc + p.position;
    qc = qc + q;
  }
  const double inv = 1.0 / static_cast<double>(pairs.size());
  pc = inv * pc;
  qc = inv * qc;

  double a = 0.0, b = 0.0, spread = 0.0;
  for (const auto& [p, q] : pairs) {
    const Vec2 dp = p.position - pc;
    const Vec2 dq = q - qc;
    a += cross(dp, dq);
    b += dot(dp, dq);
    spread += dot(dp, dp);
  }
  if (spread < 1e-12)
    throw Error(Errc::degenerate_configuration, "ground points are coincident");

  const double theta = std::atan2(a, b);
  RigidTransform2 tf;
  tf.c = std::cos(theta);
  tf.s = std::sin(theta);
  tf.t = qc - Vec2{tf.c * pc.x - tf.s * pc.y, tf.s * pc.x + tf.c * pc.y};
  return tf;
}

Pose2D estimate_rigid_2d(const std::vector<std::pair<GroundPoint, Vec2>>& pairs) {
  return transform_to_pose(fit_rigid_2d(pairs));
}

MatchHypothesis ransac_match(const std::vector<CandidateSet>& candidates,
                             const std::vector<GroundPoint>& detections, const FloorPlan& plan,
                             const PositionFix& wlan, double inlier_tol) {
  if (candidates.empty()) throw Error(Errc::no_hypothesis, "no candidates to score");
  if (inlier_tol < 0.0) throw Error(Errc::invalid_argument, "inlier_tol must be >= 0");

  const std::vector<const Landmark*> gated = gate_landmarks(plan, wlan);
  std::vector<const Landmark*> id_lookup;  // parallel to gated

  auto landmark_by_id = [&](const std::string& id) -> const Landmark* {
    for (const Landmark& lm : plan.landmarks)
      if (lm.id == id) return &lm;
    throw Error(Errc::invalid_argument, "candidate references unknown landmark '" + id + "'");
  };

  struct Best {
    size_t index = 0;
    size_t inliers = 0;
    double rms = 0.0;
    RigidTransform2 tf;
    ScoredMatch match;
    bool valid = false;
  } best;

  for (size_t i = 0; i < candidates.size(); ++i) {
    std::vector<std::pair<GroundPoint, Vec2>> pairs;
    for (const Correspondence& c : candidates[i].pairs)
      pairs.emplace_back(c.ground, landmark_by_id(c.landmark_id)->position);
    RigidTransform2 tf;
    try {
      tf = fit_rigid_2d(pairs);
    } catch (const Error&) {
      continue;  // degenerate sample
    }
    ScoredMatch match = score_pose(tf, detections, gated, inlier_tol);
    const bool better =
        !best.valid || match.matched.size() > best.inliers ||
        (match.matched.size() == best.inliers && match.rms < best.rms);
    if (better) {
      best.valid = true;
      best.index = i;
      best.inliers = match.matched.size();
      best.rms = match.rms;
      best.tf = tf;
      best.match = std::move(match);
    }
  }
  if (!best.valid) throw Error(Errc::no_hypothesis, "every candidate was degenerate");

  // Refine over all inliers, then rescore under the refined pose so the
  // reported inliers satisfy the tolerance under the reported pose.
  RigidTransform2 refined = best.tf;
  if (best.match.matched.size() >= 2) {
    std::vector<std::pair<GroundPoint, Vec2>> pairs;
    for (const auto& [det, lm] : best.match.matched)
      pairs.emplace_back(detections[det], gated[lm]->position);
    try {
      refined = fit_rigid_2d(pairs);
    } catch (const Error&) {
      refined = best.tf;
    }
  }
  const ScoredMatch final_match = score_pose(refined, detections, gated, inlier_tol);

  MatchHypothesis hyp;
  hyp.correspondences = candidates[best.index].pairs;
  hyp.pose = transform_to_pose(refined);
  for (const auto& [det, lm] : final_match.matched) hyp.inliers.push_back(gated[lm]->id);
  hyp.residual_rms = final_match.rms;
  return hyp;
}

PositionFix fuse(const PositionFix& wlan, const std::optional<MatchHypothesis>& match,
                 int min_inliers) {
  if (!match.has_value()) return wlan;
  if (match->inliers.size() < static_cast<size_t>(min_inliers)) return wlan;
  if (distance(match->pose.position, wlan.position) > wlan.radius) return wlan;

  PositionFix fix;
  fix.position = match->pose.position;
  fix.heading = match->pose.heading;
  fix.radius = std::fmax(0.25, match->residual_rms);
  fix.source = PositionFix::Source::fused;
  return fix;
}

}  // namespace hallway
