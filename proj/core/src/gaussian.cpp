#include "hallway/gaussian.hpp"

#include <cmath>

#include "hallway/error.hpp"

namespace hallway {

namespace {

// Mirror with edge duplication: -1 -> 0, -2 -> 1, n -> n-1, ...
inline int reflect(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

// Correlation along x with kernel w (response(x) = sum_i w[i] f(x+i)).
void filter_rows(const ChannelField& in, const std::vector<double>& w, ChannelField& out) {
  const int radius = static_cast<int>(w.size() / 2);
  for (int y = 0; y < in.height; ++y) {
    for (int x = 0; x < in.width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i)
        acc += w[i + radius] * in.at(reflect(x + i, in.width), y);
      out.at(x, y) = acc;
    }
  }
}

void filter_cols(const ChannelField& in, const std::vector<double>& w, ChannelField& out) {
  const int radius = static_cast<int>(w.size() / 2);
  for (int y = 0; y < in.height; ++y) {
    for (int x = 0; x < in.width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i)
        acc += w[i + radius] * in.at(x, reflect(y + i, in.height));
      out.at(x, y) = acc;
    }
  }
}

}  // namespace

std::vector<double> gaussian_kernel(int order, double sigma) {
  if (order < 0 || order > 2) throw Error(Errc::bad_order, "kernel order must be 0, 1 or 2");
  if (sigma <= 0.0) throw Error(Errc::invalid_argument, "sigma must be positive");

  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  const int n = 2 * radius + 1;
  std::vector<double> w(n);
  const double s2 = sigma * sigma;
  for (int i = -radius; i <= radius; ++i) {
    const double g = std::exp(-0.5 * i * i / s2);
    double v = g;
    if (order == 1) v = (i / s2) * g;                       // correlation form of f * G'
    if (order == 2) v = ((i * i - s2) / (s2 * s2)) * g;     // correlation form of f * G''
    w[i + radius] = v;
  }

  if (order == 0) {
    double total = 0.0;
    for (double v : w) total += v;
    for (double& v : w) v /= total;
  } else if (order == 1) {
    // Zero-sum holds by odd symmetry; normalize the first moment so a ramp
    // a*x responds with exactly a.
    double m1 = 0.0;
    for (int i = -radius; i <= radius; ++i) m1 += i * w[i + radius];
    for (double& v : w) v /= m1;
  } else {
    // Remove the sampled DC leak, then normalize the second moment so a
    // parabola (a/2)*x^2 responds with exactly a.
    double m0 = 0.0;
    for (double v : w) m0 += v;
    for (double& v : w) v -= m0 / n;
    double m2 = 0.0;
    for (int i = -radius; i <= radius; ++i) m2 += 0.5 * i * i * w[i + radius];
    for (double& v : w) v /= m2;
  }
  return w;
}

ChannelField gaussian_derivative(const ChannelField& field, int s, int t, double sigma) {
  if (s < 0 || t < 0 || s + t > 2) throw Error(Errc::bad_order, "requires s + t in {0, 1, 2}");
  if (sigma <= 0.0) throw Error(Errc::invalid_argument, "sigma must be positive");

  const std::vector<double> wx = gaussian_kernel(s, sigma);
  const std::vector<double> wy = gaussian_kernel(t, sigma);
  ChannelField tmp(field.width, field.height);
  ChannelField out(field.width, field.height);
  filter_rows(field, wx, tmp);
  filter_cols(tmp, wy, out);
  return out;
}

ChannelField gaussian_derivative(const Image& img, int channel, int s, int t, double sigma) {
  if (channel < 0 || channel > 2) throw Error(Errc::invalid_argument, "channel must be 0, 1 or 2");
  ChannelField field(img.width, img.height);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) field.at(x, y) = img.at(x, y, channel);
  return gaussian_derivative(field, s, t, sigma);
}

}  // namespace hallway
