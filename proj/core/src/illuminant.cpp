#include "hallway/illuminant.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "hallway/error.hpp"
#include "hallway/gaussian.hpp"

namespace hallway {

namespace {

constexpr double kPi = 3.14159265358979323846;

Illuminant normalized_or_throw(Vec3 v, const char* who) {
  if (!(v.r >= 0.0 && v.g >= 0.0 && v.b >= 0.0) || norm(v) <= 0.0)
    throw Error(Errc::degenerate_input, std::string(who) + ": direction undefined");
  return Illuminant::from_rgb(v);
}

void require_non_empty(const Image& img, const char* who) {
  if (img.width <= 0 || img.height <= 0)
    throw Error(Errc::degenerate_input, std::string(who) + ": empty image");
}

// (mean of |v|^p)^(1/p) per channel over three parallel fields, or the
// per-channel maximum for p = infinity.
Vec3 minkowski_aggregate(const ChannelField& r, const ChannelField& g, const ChannelField& b,
                         double p) {
  const size_t n = r.data.size();
  Vec3 out;
  if (std::isinf(p)) {
    for (size_t i = 0; i < n; ++i) {
      out.r = std::fmax(out.r, std::fabs(r.data[i]));
      out.g = std::fmax(out.g, std::fabs(g.data[i]));
      out.b = std::fmax(out.b, std::fabs(b.data[i]));
    }
    return out;
  }
  double sr = 0.0, sg = 0.0, sb = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sr += std::pow(std::fabs(r.data[i]), p);
    sg += std::pow(std::fabs(g.data[i]), p);
    sb += std::pow(std::fabs(b.data[i]), p);
  }
  out.r = std::pow(sr / n, 1.0 / p);
  out.g = std::pow(sg / n, 1.0 / p);
  out.b = std::pow(sb / n, 1.0 / p);
  return out;
}

ChannelField extract_channel(const Image& img, int c) {
  ChannelField f(img.width, img.height);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) f.at(x, y) = img.at(x, y, c);
  return f;
}

}  // namespace

Illuminant Illuminant::from_rgb(double r, double g, double b) {
  if (r < 0.0 || g < 0.0 || b < 0.0 || !std::isfinite(r) || !std::isfinite(g) || !std::isfinite(b))
    throw Error(Errc::invalid_argument, "illuminant components must be finite and non-negative");
  const double len = std::sqrt(r * r + g * g + b * b);
  if (len <= 0.0) throw Error(Errc::degenerate_input, "zero illuminant direction");
  return Illuminant({r / len, g / len, b / len});
}

double angular_error(const Illuminant& est, const Illuminant& truth) {
  double d = dot(est.rgb(), truth.rgb());
  d = std::fmin(1.0, std::fmax(-1.0, d));
  return std::acos(d) * 180.0 / kPi;
}

Illuminant estimate_grey_world(const Image& img) {
  require_non_empty(img, "grey_world");
  Vec3 acc;
  for (size_t i = 0; i < img.pixel_count(); ++i) {
    acc.r += img.data[3 * i + 0];
    acc.g += img.data[3 * i + 1];
    acc.b += img.data[3 * i + 2];
  }
  return normalized_or_throw(acc, "grey_world");
}

Illuminant estimate_white_patch(const Image& img, double clip_threshold) {
  require_non_empty(img, "white_patch");
  if (clip_threshold <= 0.0 || clip_threshold > 1.0)
    throw Error(Errc::invalid_argument, "clip_threshold must be in (0, 1]");
  Vec3 acc;
  bool any = false;
  for (size_t i = 0; i < img.pixel_count(); ++i) {
    const double r = img.data[3 * i + 0];
    const double g = img.data[3 * i + 1];
    const double b = img.data[3 * i + 2];
    if (r < clip_threshold && g < clip_threshold && b < clip_threshold) {
      any = true;
      acc.r = std::fmax(acc.r, r);
      acc.g = std::fmax(acc.g, g);
      acc.b = std::fmax(acc.b, b);
    }
  }
  if (!any || norm(acc) <= 0.0)
    throw Error(Errc::degenerate_input, "white_patch: no unsaturated nonzero pixel");
  return Illuminant::from_rgb(acc);
}

Illuminant estimate_shades_of_grey(const Image& img, double p) {
  require_non_empty(img, "shades_of_grey");
  if (!(p >= 1.0)) throw Error(Errc::invalid_argument, "Minkowski norm requires p >= 1");
  ChannelField r = extract_channel(img, 0);
  ChannelField g = extract_channel(img, 1);
  ChannelField b = extract_channel(img, 2);
  return normalized_or_throw(minkowski_aggregate(r, g, b, p), "shades_of_grey");
}

Illuminant estimate_grey_edge(const Image& img, const GreyEdgeParams& params) {
  require_non_empty(img, "grey_edge");
  if (params.n < 0 || params.n > 2) throw Error(Errc::bad_order, "derivative order must be 0..2");
  if (!(params.p >= 1.0)) throw Error(Errc::invalid_argument, "Minkowski norm requires p >= 1");
  if (params.n >= 1 && params.sigma <= 0.0)
    throw Error(Errc::invalid_argument, "derivative orders need sigma > 0");

  if (params.sigma > 0.0) {
    const int radius = static_cast<int>(std::ceil(3.0 * params.sigma));
    if (std::min(img.width, img.height) <= 2 * radius)
      throw Error(Errc::image_too_small, "kernel radius exceeds image size");
  }

  ChannelField d[3];
  for (int c = 0; c < 3; ++c) {
    if (params.n == 0) {
      d[c] = params.sigma > 0.0 ? gaussian_derivative(img, c, 0, 0, params.sigma)
                                : extract_channel(img, c);
    } else if (params.n == 1) {
      ChannelField fx = gaussian_derivative(img, c, 1, 0, params.sigma);
      ChannelField fy = gaussian_derivative(img, c, 0, 1, params.sigma);
      d[c] = ChannelField(img.width, img.height);
      for (size_t i = 0; i < d[c].data.size(); ++i)
        d[c].data[i] = std::sqrt(fx.data[i] * fx.data[i] + fy.data[i] * fy.data[i]);
    } else {
      // Frobenius norm of the per-channel second-derivative tensor.
      ChannelField fxx = gaussian_derivative(img, c, 2, 0, params.sigma);
      ChannelField fyy = gaussian_derivative(img, c, 0, 2, params.sigma);
      ChannelField fxy = gaussian_derivative(img, c, 1, 1, params.sigma);
      d[c] = ChannelField(img.width, img.height);
      for (size_t i = 0; i < d[c].data.size(); ++i)
        d[c].data[i] = std::sqrt(fxx.data[i] * fxx.data[i] + fyy.data[i] * fyy.data[i] +
                                 2.0 * fxy.data[i] * fxy.data[i]);
    }
  }

  const Vec3 agg = minkowski_aggregate(d[0], d[1], d[2], params.p);
  if (norm(agg) <= 1e-300)
    throw Error(Errc::degenerate_input, "grey_edge: zero derivative energy");
  return Illuminant::from_rgb(agg);
}

Illuminant estimate_iic(const Image& img, const IicOptions& opts) {
  require_non_empty(img, "iic");
  if (opts.highlight_quantile <= 0.0 || opts.highlight_quantile >= 1.0)
    throw Error(Errc::invalid_argument, "highlight_quantile must be in (0, 1)");
  if (opts.min_candidates < 2 || opts.intercept_bins < 2)
    throw Error(Errc::invalid_argument, "need at least 2 candidates and 2 bins");

  const size_t n = img.pixel_count();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::vector<double> intensity(n);
  for (size_t i = 0; i < n; ++i)
    intensity[i] = img.data[3 * i] + img.data[3 * i + 1] + img.data[3 * i + 2];

  size_t take = static_cast<size_t>(std::ceil(opts.highlight_quantile * static_cast<double>(n)));
  take = std::min(take, n);
  if (take < static_cast<size_t>(opts.min_candidates))
    throw Error(Errc::insufficient_highlights, "too few highlight candidates");
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return intensity[a] > intensity[b]; });
  order.resize(take);

  // Drop zero-intensity pixels (no chromaticity) and cap the candidate count
  // so the pair loop stays bounded; the stride keeps selection deterministic.
  std::vector<size_t> cand;
  cand.reserve(take);
  for (size_t idx : order)
    if (intensity[idx] > 1e-12) cand.push_back(idx);
  if (cand.size() < static_cast<size_t>(opts.min_candidates))
    throw Error(Errc::insufficient_highlights, "too few highlight candidates");
  constexpr size_t kMaxCandidates = 1200;
  if (cand.size() > kMaxCandidates) {
    std::vector<size_t> thinned;
    const size_t stride = (cand.size() + kMaxCandidates - 1) / kMaxCandidates;
    for (size_t i = 0; i < cand.size(); i += stride) thinned.push_back(cand[i]);
    cand.swap(thinned);
  }

  std::vector<double> u(cand.size());  // inverse intensity
  for (size_t i = 0; i < cand.size(); ++i) u[i] = 1.0 / intensity[cand[i]];
  const auto [umin, umax] = std::minmax_element(u.begin(), u.end());
  if (*umax - *umin < 1e-6)
    throw Error(Errc::degenerate_geometry, "inverse-intensity spread too small");

  Vec3 gamma;
  double* gamma_c[3] = {&gamma.r, &gamma.g, &gamma.b};
  for (int c = 0; c < 3; ++c) {
    std::vector<int> votes(static_cast<size_t>(opts.intercept_bins), 0);
    std::vector<double> sums(static_cast<size_t>(opts.intercept_bins), 0.0);
    for (size_t i = 0; i < cand.size(); ++i) {
      const double yi = img.data[3 * cand[i] + c] * u[i];
      for (size_t j = i + 1; j < cand.size(); ++j) {
        const double du = u[j] - u[i];
        if (std::fabs(du) < 1e-12) continue;
        const double yj = img.data[3 * cand[j] + c] * u[j];
        const double intercept = yi - u[i] * (yj - yi) / du;
        if (intercept < 0.0 || intercept > 1.0) continue;
        int bin = static_cast<int>(intercept * opts.intercept_bins);
        bin = std::min(bin, opts.intercept_bins - 1);
        ++votes[static_cast<size_t>(bin)];
        sums[static_cast<size_t>(bin)] += intercept;
      }
    }
    const auto best = std::max_element(votes.begin(), votes.end());
    if (*best == 0) throw Error(Errc::degenerate_geometry, "no valid intercept votes");
    const size_t bin = static_cast<size_t>(best - votes.begin());
    *gamma_c[c] = sums[bin] / *best;
  }

  const double total = sum(gamma);
  if (total <= 1e-12) throw Error(Errc::degenerate_geometry, "zero chromaticity estimate");
  return Illuminant::from_rgb((1.0 / total) * gamma);
}

DiagonalMap diagonal_map(const Illuminant& from, const Illuminant& to) {
  const Vec3 f = from.rgb();
  if (f.r <= 1e-6 || f.g <= 1e-6 || f.b <= 1e-6)
    throw Error(Errc::singular_illuminant, "source illuminant has a near-zero component");
  return DiagonalMap{{to.r() / f.r, to.g() / f.g, to.b() / f.b}};
}

CorrectionResult apply_correction(const Image& img, const DiagonalMap& map) {
  CorrectionResult res;
  res.image = Image(img.width, img.height);
  const double d[3] = {map.d.r, map.d.g, map.d.b};
  for (size_t i = 0; i < img.data.size(); ++i) {
    double v = img.data[i] * d[i % 3];
    if (v < 0.0 || v > 1.0) {
      v = std::fmin(1.0, std::fmax(0.0, v));
      ++res.clamped;
    }
    res.image.data[i] = v;
  }
  return res;
}

}  // namespace hallway
