#pragma once

#include <vector>

#include "hallway/image.hpp"

namespace hallway {

/// Dense per-pixel region labels, 0 .. region_count-1.
struct SegmentLabels {
  int width = 0;
  int height = 0;
  std::vector<int> labels;
  int region_count = 0;

  int at(int x, int y) const { return labels[static_cast<size_t>(y) * width + x]; }
};

/// Joint spatial-range mean-shift segmentation with a flat kernel.
///
/// Every pixel seeks its mode in (x, y, R, G, B) space using spatial radius
/// hs and color radius hr, iterating until the normalized shift drops below
/// 0.01 or 100 iterations. Adjacent pixels whose modes agree within
/// (hs/2, hr/2) are fused into one region; regions smaller than min_region
/// are merged into their most color-similar neighbor. Labels are renumbered
/// densely in scan order, so the result is deterministic.
SegmentLabels mean_shift_segment(const Image& img, double hs, double hr, int min_region);

}  // namespace hallway
