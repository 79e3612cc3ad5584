#pragma once

#include <vector>

#include "hallway/image.hpp"

namespace hallway {

/// Sampled 1-D Gaussian derivative kernel of the given order (0, 1 or 2) at
/// scale sigma, radius ceil(3*sigma). Samples are moment-corrected so that
/// order 0 sums to one, order 1 kills constants and reproduces the slope of a
/// ramp exactly, and order 2 kills constants and ramps and reproduces the
/// second derivative of a parabola exactly.
std::vector<double> gaussian_kernel(int order, double sigma);

/// d^(s+t) f_sigma / dx^s dy^t of one channel via separable convolution with
/// sampled Gaussian-derivative kernels. Borders are handled by reflection
/// (index -1 maps back to 0). Requires s + t <= 2 and sigma > 0.
ChannelField gaussian_derivative(const Image& img, int channel, int s, int t, double sigma);

/// Same separable filter applied to a standalone channel.
ChannelField gaussian_derivative(const ChannelField& field, int s, int t, double sigma);

}  // namespace hallway
