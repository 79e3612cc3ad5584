#pragma once

#include <limits>

#include "hallway/geom.hpp"
#include "hallway/image.hpp"

namespace hallway {

/// Light-source color as a unit-length RGB direction. Every estimator only
/// determines the direction of the illuminant; the overall scale cancels in
/// the normalization.
class Illuminant {
 public:
  /// Normalizes (r, g, b) to unit length. Components must be non-negative
  /// with at least one positive.
  static Illuminant from_rgb(double r, double g, double b);
  static Illuminant from_rgb(Vec3 v) { return from_rgb(v.r, v.g, v.b); }
  static Illuminant white() { return from_rgb(1.0, 1.0, 1.0); }

  double r() const { return e_.r; }
  double g() const { return e_.g; }
  double b() const { return e_.b; }
  Vec3 rgb() const { return e_; }

 private:
  explicit Illuminant(Vec3 e) : e_(e) {}
  Vec3 e_;
};

/// Angle between two unit illuminant directions, in degrees.
double angular_error(const Illuminant& est, const Illuminant& truth);

struct GreyEdgeParams {
  int n = 0;        // derivative order, in {0, 1, 2}
  double p = 1.0;   // Minkowski norm; infinity() means per-channel maximum
  double sigma = 0; // Gaussian scale in pixels; n >= 1 requires sigma > 0

  static constexpr double infinite_norm() { return std::numeric_limits<double>::infinity(); }
};

/// Per-channel gains of the diagonal (von Kries) correction.
struct DiagonalMap {
  Vec3 d{1.0, 1.0, 1.0};
};

struct IicOptions {
  double highlight_quantile = 0.05;  // fraction of brightest pixels used
  int min_candidates = 50;
  int intercept_bins = 256;
};

Illuminant estimate_grey_world(const Image& img);
Illuminant estimate_white_patch(const Image& img, double clip_threshold = 0.98);
Illuminant estimate_shades_of_grey(const Image& img, double p);
Illuminant estimate_grey_edge(const Image& img, const GreyEdgeParams& params);

/// Physics-based estimate: image chromaticity of specular pixels is linear in
/// inverse intensity with the illuminant chromaticity as intercept. The
/// intercept is found per channel by histogram voting over pairwise-intercept
/// candidates, which tolerates body-reflection outliers.
Illuminant estimate_iic(const Image& img, const IicOptions& opts = {});

/// Gains mapping colors under `from` to colors under `to`, d_i = to_i / from_i.
DiagonalMap diagonal_map(const Illuminant& from, const Illuminant& to);

struct CorrectionResult {
  Image image;
  size_t clamped = 0;  // channel values that hit the [0,1] clamp
};

/// Applies the diagonal gains per pixel, clamping into [0, 1].
CorrectionResult apply_correction(const Image& img, const DiagonalMap& map);

}  // namespace hallway
