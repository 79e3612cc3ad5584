#include "hallway/corners.hpp"

#include <algorithm>
#include <cmath>

#include "hallway/error.hpp"

namespace hallway {

namespace {

// 8-neighborhood in clockwise order (y grows downward).
constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};

int direction_index(PixelCoord from, PixelCoord to) {
  for (int d = 0; d < 8; ++d)
    if (from.x + kDx[d] == to.x && from.y + kDy[d] == to.y) return d;
  return 6;  // unreachable for adjacent pixels
}

// Moore-neighbor tracing from the topmost-leftmost region pixel. Terminates
// when the first transition (start -> second pixel, with the same outside
// backtrack) repeats, so spikes that revisit the start are handled.
std::vector<PixelCoord> trace_boundary(const SegmentLabels& labels, int region, PixelCoord start) {
  const int w = labels.width;
  const int h = labels.height;
  auto in_region = [&](int x, int y) {
    return x >= 0 && x < w && y >= 0 && y < h && labels.at(x, y) == region;
  };

  std::vector<PixelCoord> contour{start};
  PixelCoord cur = start;
  PixelCoord back{start.x, start.y - 1};  // outside: start is topmost-leftmost
  PixelCoord first_move{-1, -1}, first_back{-1, -1};
  bool have_first = false;
  const size_t limit = static_cast<size_t>(w) * h * 4 + 8;

  while (contour.size() < limit) {
    const int d0 = direction_index(cur, back);
    PixelCoord prev_candidate = back;
    int found = -1;
    for (int step = 1; step <= 8; ++step) {
      const int dir = (d0 + step) % 8;
      const PixelCoord cand{cur.x + kDx[dir], cur.y + kDy[dir]};
      if (in_region(cand.x, cand.y)) {
        found = dir;
        break;
      }
      prev_candidate = cand;
    }
    if (found < 0) break;  // isolated pixel
    const PixelCoord next{cur.x + kDx[found], cur.y + kDy[found]};
    if (have_first && cur == start && next == first_move && prev_candidate == first_back) break;
    contour.push_back(next);
    if (!have_first) {
      have_first = true;
      first_move = next;
      first_back = prev_candidate;
    }
    cur = next;
    back = prev_candidate;
  }
  if (contour.size() > 1 && contour.back() == start) contour.pop_back();
  return contour;
}

double signed_area_y_up(const std::vector<PixelCoord>& pts) {
  double acc = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const PixelCoord a = pts[i];
    const PixelCoord b = pts[(i + 1) % pts.size()];
    acc += static_cast<double>(a.x) * (-b.y) - static_cast<double>(b.x) * (-a.y);
  }
  return 0.5 * acc;
}

}  // namespace

std::vector<Boundary> extract_boundaries(const SegmentLabels& labels) {
  std::vector<Boundary> out;
  std::vector<char> seen(static_cast<size_t>(labels.region_count), 0);
  for (int y = 0; y < labels.height; ++y) {
    for (int x = 0; x < labels.width; ++x) {
      const int r = labels.at(x, y);
      if (seen[static_cast<size_t>(r)]) continue;
      seen[static_cast<size_t>(r)] = 1;
      Boundary b;
      b.region_id = r;
      b.points = trace_boundary(labels, r, {x, y});
      if (b.points.size() < 4) continue;
      // Normalize orientation to counterclockwise (y-up sense), keeping the
      // same start point.
      if (signed_area_y_up(b.points) < 0.0)
        std::reverse(b.points.begin() + 1, b.points.end());
      out.push_back(std::move(b));
    }
  }
  return out;
}

std::vector<double> cornerity(const Boundary& boundary, int k) {
  const int n = static_cast<int>(boundary.points.size());
  if (k < 1) throw Error(Errc::invalid_argument, "cornerity: k must be >= 1");
  if (n <= 2 * k) throw Error(Errc::too_short, "boundary shorter than 2k+1 points");

  std::vector<double> score(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const PixelCoord p = boundary.points[static_cast<size_t>(i)];
    const PixelCoord a = boundary.points[static_cast<size_t>(((i - k) % n + n) % n)];
    const PixelCoord b = boundary.points[static_cast<size_t>((i + k) % n)];
    const double vx = b.x - a.x;
    const double vy = b.y - a.y;
    const double len = std::sqrt(vx * vx + vy * vy);
    double dist;
    if (len < 1e-12) {
      // Chord collapsed (out-and-back spike); fall back to point distance.
      dist = std::hypot(static_cast<double>(p.x - a.x), static_cast<double>(p.y - a.y));
    } else {
      dist = std::fabs(vx * (p.y - a.y) - vy * (p.x - a.x)) / len;
    }
    score[static_cast<size_t>(i)] = dist / k;
  }
  return score;
}

std::vector<CornerPoint> detect_corners(const SegmentLabels& labels, int k, double tau,
                                        int nms_window) {
  if (k < 2) throw Error(Errc::invalid_argument, "detect_corners: k must be >= 2");
  if (tau <= 0.0) throw Error(Errc::invalid_argument, "detect_corners: tau must be positive");
  if (nms_window < 0) throw Error(Errc::invalid_argument, "detect_corners: bad nms window");

  std::vector<CornerPoint> corners;
  for (const Boundary& b : extract_boundaries(labels)) {
    const int n = static_cast<int>(b.points.size());
    if (n <= 2 * k) continue;
    const std::vector<double> score = cornerity(b, k);
    const int window = std::min(nms_window, n - 1);
    for (int i = 0; i < n; ++i) {
      const double si = score[static_cast<size_t>(i)];
      if (si < tau) continue;
      const PixelCoord p = b.points[static_cast<size_t>(i)];
      if (p.x == 0 || p.y == 0 || p.x == labels.width - 1 || p.y == labels.height - 1)
        continue;  // the raster frame is not scene structure
      bool is_max = true;
      for (int off = -window; off <= window && is_max; ++off) {
        if (off == 0) continue;
        const int j = ((i + off) % n + n) % n;
        const double sj = score[static_cast<size_t>(j)];
        if (sj > si || (sj == si && j < i)) is_max = false;
      }
      if (is_max) corners.push_back({p, si, b.region_id});
    }
  }
  return corners;
}

int floor_region(const SegmentLabels& labels) {
  std::vector<long> bottom(static_cast<size_t>(labels.region_count), 0);
  std::vector<long> area(static_cast<size_t>(labels.region_count), 0);
  for (int y = 0; y < labels.height; ++y)
    for (int x = 0; x < labels.width; ++x) ++area[static_cast<size_t>(labels.at(x, y))];
  for (int x = 0; x < labels.width; ++x)
    ++bottom[static_cast<size_t>(labels.at(x, labels.height - 1))];

  int best = 0;
  for (int r = 1; r < labels.region_count; ++r) {
    const size_t rr = static_cast<size_t>(r), bb = static_cast<size_t>(best);
    if (bottom[rr] > bottom[bb] || (bottom[rr] == bottom[bb] && area[rr] > area[bb]))
      best = r;
  }
  return best;
}

}  // namespace hallway
