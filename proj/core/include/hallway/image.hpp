#pragma once

#include <string>
#include <vector>

#include "hallway/geom.hpp"

namespace hallway {

/// Linear-RGB raster. Values live in [0, 1]; all processing assumes a linear
/// transfer, gamma handling happens only at file I/O boundaries.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> data;  // row-major, 3 interleaved channels

  Image() = default;
  Image(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h * 3, 0.0) {}

  double& at(int x, int y, int c) { return data[(static_cast<size_t>(y) * width + x) * 3 + c]; }
  double at(int x, int y, int c) const {
    return data[(static_cast<size_t>(y) * width + x) * 3 + c];
  }

  Vec3 pixel(int x, int y) const { return {at(x, y, 0), at(x, y, 1), at(x, y, 2)}; }
  void set_pixel(int x, int y, Vec3 v) {
    at(x, y, 0) = v.r;
    at(x, y, 1) = v.g;
    at(x, y, 2) = v.b;
  }

  size_t pixel_count() const { return static_cast<size_t>(width) * height; }

  static Image filled(int w, int h, Vec3 color) {
    Image img(w, h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) img.set_pixel(x, y, color);
    return img;
  }
};

/// Single-channel field; holds derivative responses, so values may be negative.
struct ChannelField {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  ChannelField() = default;
  ChannelField(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h, 0.0) {}

  double& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
  double at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
};

enum class Transfer { srgb, linear };

/// Reads a binary PPM (P6, maxval 255). With Transfer::srgb the 8-bit codes
/// are gamma-decoded (exponent 2.2) to linear; with Transfer::linear they are
/// scaled by 1/255 as-is.
Image load_image(const std::string& path, Transfer transfer);

/// Writes a binary PPM (P6, maxval 255), encoding with the inverse transfer.
void save_image(const Image& img, const std::string& path, Transfer transfer);

double srgb_decode(int code);   // [0,255] -> linear [0,1]
int srgb_encode(double value);  // linear [0,1] -> [0,255]

}  // namespace hallway
