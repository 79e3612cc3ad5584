#include "hallway/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hallway/error.hpp"

namespace hallway {

namespace {

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

SegmentLabels mean_shift_segment(const Image& img, double hs, double hr, int min_region) {
  if (hs < 1.0 || hr <= 0.0 || min_region < 1)
    throw Error(Errc::invalid_argument, "mean_shift_segment: bad bandwidths");
  const int w = img.width;
  const int h = img.height;
  const size_t n = static_cast<size_t>(w) * h;

  // Original samples, kept in flat arrays for the window scans.
  std::vector<float> cr(n), cg(n), cb(n);
  for (size_t i = 0; i < n; ++i) {
    cr[i] = static_cast<float>(img.data[3 * i + 0]);
    cg[i] = static_cast<float>(img.data[3 * i + 1]);
    cb[i] = static_cast<float>(img.data[3 * i + 2]);
  }

  std::vector<float> mx(n), my(n), mr(n), mg(n), mb(n);  // converged modes
  const double hs2 = hs * hs;
  const double hr2 = hr * hr;
  const int box = static_cast<int>(std::floor(hs));
  const double color_scale = hs / hr;  // puts the color shift on the spatial scale
  const double stop2 = 0.01 * 0.01;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double sx = x, sy = y;
      size_t i0 = static_cast<size_t>(y) * w + x;
      double r = cr[i0], g = cg[i0], b = cb[i0];
      for (int iter = 0; iter < 100; ++iter) {
        const int x_lo = std::max(0, static_cast<int>(std::ceil(sx - hs)));
        const int x_hi = std::min(w - 1, static_cast<int>(std::floor(sx + hs)));
        const int y_lo = std::max(0, static_cast<int>(std::ceil(sy - hs)));
        const int y_hi = std::min(h - 1, static_cast<int>(std::floor(sy + hs)));
        double ax = 0, ay = 0, ar = 0, ag = 0, ab = 0;
        int count = 0;
        for (int yy = y_lo; yy <= y_hi; ++yy) {
          const double dy = yy - sy;
          const double row_spatial = dy * dy;
          if (row_spatial > hs2) continue;
          const size_t row = static_cast<size_t>(yy) * w;
          for (int xx = x_lo; xx <= x_hi; ++xx) {
            const double dx = xx - sx;
            if (row_spatial + dx * dx > hs2) continue;
            const size_t j = row + xx;
            const double dr = cr[j] - r;
            const double dg = cg[j] - g;
            const double db = cb[j] - b;
            if (dr * dr + dg * dg + db * db > hr2) continue;
            ax += xx;
            ay += yy;
            ar += cr[j];
            ag += cg[j];
            ab += cb[j];
            ++count;
          }
        }
        if (count == 0) break;  // cannot happen: the pixel itself qualifies
        ax /= count;
        ay /= count;
        ar /= count;
        ag /= count;
        ab /= count;
        const double ds = (ax - sx) * (ax - sx) + (ay - sy) * (ay - sy);
        const double dc =
            (ar - r) * (ar - r) + (ag - g) * (ag - g) + (ab - b) * (ab - b);
        sx = ax;
        sy = ay;
        r = ar;
        g = ag;
        b = ab;
        if (ds + color_scale * color_scale * dc < stop2) break;
      }
      mx[i0] = static_cast<float>(sx);
      my[i0] = static_cast<float>(sy);
      mr[i0] = static_cast<float>(r);
      mg[i0] = static_cast<float>(g);
      mb[i0] = static_cast<float>(b);
    }
  }

  // Fuse neighboring pixels whose modes agree; transitive closure over the
  // 4-neighborhood keeps regions spatially connected.
  DisjointSet ds(n);
  const double fuse_s2 = (hs / 2) * (hs / 2);
  const double fuse_r2 = (hr / 2) * (hr / 2);
  auto modes_close = [&](size_t a, size_t b) {
    const double dsx = mx[a] - mx[b];
    const double dsy = my[a] - my[b];
    if (dsx * dsx + dsy * dsy > fuse_s2) return false;
    const double dr = mr[a] - mr[b];
    const double dg = mg[a] - mg[b];
    const double db = mb[a] - mb[b];
    return dr * dr + dg * dg + db * db <= fuse_r2;
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const size_t i = static_cast<size_t>(y) * w + x;
      if (x + 1 < w && modes_close(i, i + 1)) ds.unite(static_cast<int>(i), static_cast<int>(i + 1));
      if (y + 1 < h && modes_close(i, i + w)) ds.unite(static_cast<int>(i), static_cast<int>(i + w));
    }
  }

  // Dense provisional labels in scan order.
  std::vector<int> label(n, -1);
  int regions = 0;
  for (size_t i = 0; i < n; ++i) {
    const int root = ds.find(static_cast<int>(i));
    if (label[static_cast<size_t>(root)] < 0) label[static_cast<size_t>(root)] = regions++;
    label[i] = label[static_cast<size_t>(root)];
  }

  // Merge undersized regions into their most color-similar 4-neighbor,
  // smallest region first; repeats until everything reaches min_region.
  std::vector<long> size(static_cast<size_t>(regions), 0);
  std::vector<double> sum_r(static_cast<size_t>(regions), 0.0);
  std::vector<double> sum_g(static_cast<size_t>(regions), 0.0);
  std::vector<double> sum_b(static_cast<size_t>(regions), 0.0);
  for (size_t i = 0; i < n; ++i) {
    const size_t l = static_cast<size_t>(label[i]);
    ++size[l];
    sum_r[l] += cr[i];
    sum_g[l] += cg[i];
    sum_b[l] += cb[i];
  }

  DisjointSet groups(static_cast<size_t>(regions));
  auto group_of = [&](size_t i) { return groups.find(label[i]); };

  while (regions > 1) {
    // Current group stats.
    std::vector<long> gsize(static_cast<size_t>(regions), 0);
    for (int l = 0; l < regions; ++l) gsize[static_cast<size_t>(groups.find(l))] += size[static_cast<size_t>(l)];

    int smallest = -1;
    for (int l = 0; l < regions; ++l) {
      if (groups.find(l) != l) continue;
      if (gsize[static_cast<size_t>(l)] >= min_region) continue;
      if (smallest < 0 || gsize[static_cast<size_t>(l)] < gsize[static_cast<size_t>(smallest)])
        smallest = l;
    }
    if (smallest < 0) break;

    // Mean color per group, then the most similar adjacent group.
    std::vector<double> gr(static_cast<size_t>(regions), 0.0), gg(static_cast<size_t>(regions), 0.0),
        gb(static_cast<size_t>(regions), 0.0);
    for (int l = 0; l < regions; ++l) {
      const size_t r0 = static_cast<size_t>(groups.find(l));
      gr[r0] += sum_r[static_cast<size_t>(l)];
      gg[r0] += sum_g[static_cast<size_t>(l)];
      gb[r0] += sum_b[static_cast<size_t>(l)];
    }
    int best = -1;
    double best_d = std::numeric_limits<double>::max();
    auto consider = [&](size_t a, size_t b) {
      const int ga = groups.find(label[a]);
      const int gbb = groups.find(label[b]);
      if (ga == gbb) return;
      int other;
      if (ga == smallest)
        other = gbb;
      else if (gbb == smallest)
        other = ga;
      else
        return;
      const size_t s = static_cast<size_t>(smallest), o = static_cast<size_t>(other);
      const double mr0 = gr[s] / gsize[s], mg0 = gg[s] / gsize[s], mb0 = gb[s] / gsize[s];
      const double mr1 = gr[o] / gsize[o], mg1 = gg[o] / gsize[o], mb1 = gb[o] / gsize[o];
      const double d = (mr0 - mr1) * (mr0 - mr1) + (mg0 - mg1) * (mg0 - mg1) +
                       (mb0 - mb1) * (mb0 - mb1);
      if (d < best_d || (d == best_d && other < best)) {
        best_d = d;
        best = other;
      }
    };
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const size_t i = static_cast<size_t>(y) * w + x;
        if (x + 1 < w) consider(i, i + 1);
        if (y + 1 < h) consider(i, i + w);
      }
    }
    if (best < 0) break;  // isolated small region; keep it
    groups.unite(smallest, best);
  }

  // Final dense renumbering in scan order.
  SegmentLabels out;
  out.width = w;
  out.height = h;
  out.labels.assign(n, -1);
  std::vector<int> remap(static_cast<size_t>(regions), -1);
  int next = 0;
  for (size_t i = 0; i < n; ++i) {
    const int g0 = group_of(i);
    if (remap[static_cast<size_t>(g0)] < 0) remap[static_cast<size_t>(g0)] = next++;
    out.labels[i] = remap[static_cast<size_t>(g0)];
  }
  out.region_count = next;
  return out;
}

}  // namespace hallway
