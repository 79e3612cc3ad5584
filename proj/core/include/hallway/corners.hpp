#pragma once

#include <vector>

#include "hallway/segmentation.hpp"

namespace hallway {

struct PixelCoord {
  int x = 0;
  int y = 0;
};

inline bool operator==(PixelCoord a, PixelCoord b) { return a.x == b.x && a.y == b.y; }

/// Closed outer boundary of one region, 8-connected, counterclockwise
/// (in the x-right / y-up sense).
struct Boundary {
  int region_id = 0;
  std::vector<PixelCoord> points;
};

struct CornerPoint {
  PixelCoord position;
  double cornerity = 0.0;
  int region_id = 0;
};

/// Moore-neighbor tracing of each region's outer boundary. Regions touching
/// the image border are traced along the border. Regions whose trace yields
/// fewer than 4 points (1-2 pixel specks) are skipped; they cannot carry
/// corners.
std::vector<Boundary> extract_boundaries(const SegmentLabels& labels);

/// Chord-deviation cornerity: for boundary point i the perpendicular distance
/// to the chord between points i-k and i+k (cyclic), divided by k. Straight
/// runs score ~0; a right angle with axis-aligned arms scores sqrt(2)/2.
std::vector<double> cornerity(const Boundary& boundary, int k);

/// Boundary points whose cornerity reaches tau and is the maximum within
/// +-nms_window along the boundary (ties to the smaller index). Points lying
/// exactly on the image border are not corner candidates.
std::vector<CornerPoint> detect_corners(const SegmentLabels& labels, int k, double tau,
                                        int nms_window);

/// The region holding the most bottom-row pixels; ties go to the larger
/// region, then the smaller label.
int floor_region(const SegmentLabels& labels);

}  // namespace hallway
