#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hallway/geom.hpp"

namespace hallway {

/// Transmitter with a log-distance path-loss model plus Gaussian shadowing.
struct AccessPoint {
  std::string id;
  Vec2 position;            // meters
  double p0 = -40.0;        // dBm at the reference distance
  double d0 = 1.0;          // reference distance, meters
  double path_loss_exp = 2.5;
  double shadow_sigma = 0.0;  // dB
};

/// One signal-space observation; APs that were not heard are simply absent.
struct RssiVector {
  std::map<std::string, double> readings;  // AP id -> dBm
};

struct Fingerprint {
  Vec2 position;
  RssiVector rssi;
};

struct RadioMap {
  std::vector<Fingerprint> fingerprints;
  double grid_spacing = 0.0;  // meters
};

/// Localization result with an uncertainty radius.
struct PositionFix {
  Vec2 position;
  std::optional<double> heading;  // radians, (-pi, pi]
  double radius = 0.0;            // meters
  enum class Source { wlan, fused } source = Source::wlan;
};

struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

/// Received power at `pos`: p0 - 10 n log10(max(d, d0)/d0), plus
/// N(0, shadow_sigma^2) when an RNG is supplied.
double simulate_rssi(const AccessPoint& ap, Vec2 pos, std::mt19937_64* rng);

/// Offline fingerprinting phase: a grid over `area` at `spacing` (both edges
/// inclusive), each fingerprint the mean of samples_per_point noisy draws.
RadioMap build_radio_map(const std::vector<AccessPoint>& aps, const Rect& area, double spacing,
                         int samples_per_point, std::mt19937_64& rng);

/// k-nearest-neighbor position in signal space over the AP ids shared by the
/// observation and the map. The radius is max(10 m, spread of the selected
/// neighbors around their centroid); ties in signal distance break by
/// fingerprint index.
PositionFix wlan_locate(const RadioMap& map, const RssiVector& observed, int k);

// File formats: radio map rows are `x,y,ap_id,rssi_dbm`; AP sets are
// `ap_id,x,y,p0,d0,path_loss_exp,shadow_sigma`; observations are
// `ap_id,rssi_dbm`. All with a header line.
void save_radio_map(const RadioMap& map, const std::string& path);
RadioMap load_radio_map(const std::string& path);
void save_access_points(const std::vector<AccessPoint>& aps, const std::string& path);
std::vector<AccessPoint> load_access_points(const std::string& path);
void save_observation(const RssiVector& obs, const std::string& path);
RssiVector load_observation(const std::string& path);

}  // namespace hallway
