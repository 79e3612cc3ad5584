#include "hallway/radio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hallway/error.hpp"

namespace hallway {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s, const std::string& path) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::parse_error, "bad numeric field '" + s + "' in " + path);
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

double simulate_rssi(const AccessPoint& ap, Vec2 pos, std::mt19937_64* rng) {
  const double d = std::fmax(distance(ap.position, pos), ap.d0);
  double rssi = ap.p0 - 10.0 * ap.path_loss_exp * std::log10(d / ap.d0);
  if (rng != nullptr && ap.shadow_sigma > 0.0) {
    std::normal_distribution<double> shadow(0.0, ap.shadow_sigma);
    rssi += shadow(*rng);
  }
  return rssi;
}

RadioMap build_radio_map(const std::vector<AccessPoint>& aps, const Rect& area, double spacing,
                         int samples_per_point, std::mt19937_64& rng) {
  if (spacing <= 0.0) throw Error(Errc::invalid_argument, "spacing must be positive");
  if (samples_per_point < 1) throw Error(Errc::invalid_argument, "need at least one sample");
  if (area.x1 < area.x0 || area.y1 < area.y0)
    throw Error(Errc::empty_area, "area rectangle is empty");

  RadioMap map;
  map.grid_spacing = spacing;
  const double eps = 1e-9;
  for (double y = area.y0; y <= area.y1 + eps; y += spacing) {
    for (double x = area.x0; x <= area.x1 + eps; x += spacing) {
      Fingerprint fp;
      fp.position = {x, y};
      for (const AccessPoint& ap : aps) {
        double acc = 0.0;
        for (int s = 0; s < samples_per_point; ++s) acc += simulate_rssi(ap, fp.position, &rng);
        fp.rssi.readings[ap.id] = acc / samples_per_point;
      }
      map.fingerprints.push_back(std::move(fp));
    }
  }
  if (map.fingerprints.empty()) throw Error(Errc::empty_area, "grid produced no fingerprints");
  return map;
}

PositionFix wlan_locate(const RadioMap& map, const RssiVector& observed, int k) {
  if (k < 1) throw Error(Errc::invalid_argument, "k must be >= 1");
  if (map.fingerprints.empty()) throw Error(Errc::invalid_argument, "empty radio map");

  // Signal distance over the shared AP id set.
  std::vector<std::string> shared;
  for (const auto& [id, _] : observed.readings)
    if (map.fingerprints.front().rssi.readings.count(id)) shared.push_back(id);
  if (shared.empty()) throw Error(Errc::no_common_aps, "observation shares no AP with the map");

  std::vector<std::pair<double, size_t>> by_distance;
  by_distance.reserve(map.fingerprints.size());
  for (size_t i = 0; i < map.fingerprints.size(); ++i) {
    double d2 = 0.0;
    for (const std::string& id : shared) {
      const double delta =
          map.fingerprints[i].rssi.readings.at(id) - observed.readings.at(id);
      d2 += delta * delta;
    }
    by_distance.emplace_back(std::sqrt(d2), i);
  }
  const size_t kk = std::min(static_cast<size_t>(k), by_distance.size());
  std::stable_sort(by_distance.begin(), by_distance.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  Vec2 centroid;
  for (size_t i = 0; i < kk; ++i) {
    centroid = centroid + map.fingerprints[by_distance[i].second].position;
  }
  centroid = (1.0 / static_cast<double>(kk)) * centroid;

  double spread = 0.0;
  for (size_t i = 0; i < kk; ++i)
    spread = std::fmax(spread,
                       distance(centroid, map.fingerprints[by_distance[i].second].position));

  PositionFix fix;
  fix.position = centroid;
  fix.radius = std::fmax(10.0, spread);  // the technology's accuracy class is the floor
  fix.source = PositionFix::Source::wlan;
  return fix;
}

void save_radio_map(const RadioMap& map, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io_failure, "cannot open " + path + " for writing");
  out << "x,y,ap_id,rssi_dbm\n";
  for (const Fingerprint& fp : map.fingerprints)
    for (const auto& [id, rssi] : fp.rssi.readings)
      out << format_double(fp.position.x) << "," << format_double(fp.position.y) << "," << id
          << "," << format_double(rssi) << "\n";
  if (!out) throw Error(Errc::io_failure, "write failed for " + path);
}

RadioMap load_radio_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_failure, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::parse_error, "empty radio map " + path);

  RadioMap map;
  std::map<std::pair<double, double>, size_t> index;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 4) throw Error(Errc::parse_error, "bad radio map row in " + path);
    const double x = parse_double(fields[0], path);
    const double y = parse_double(fields[1], path);
    const auto key = std::make_pair(x, y);
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, map.fingerprints.size());
      map.fingerprints.push_back({{x, y}, {}});
      it = index.find(key);
    }
    map.fingerprints[it->second].rssi.readings[fields[2]] = parse_double(fields[3], path);
  }
  if (map.fingerprints.empty()) throw Error(Errc::parse_error, "radio map has no rows: " + path);
  return map;
}

void save_access_points(const std::vector<AccessPoint>& aps, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io_failure, "cannot open " + path + " for writing");
  out << "ap_id,x,y,p0,d0,path_loss_exp,shadow_sigma\n";
  for (const AccessPoint& ap : aps)
    out << ap.id << "," << format_double(ap.position.x) << "," << format_double(ap.position.y)
        << "," << format_double(ap.p0) << "," << format_double(ap.d0) << ","
        << format_double(ap.path_loss_exp) << "," << format_double(ap.shadow_sigma) << "\n";
  if (!out) throw Error(Errc::io_failure, "write failed for " + path);
}

std::vector<AccessPoint> load_access_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_failure, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::parse_error, "empty AP file " + path);
  std::vector<AccessPoint> aps;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 7) throw Error(Errc::parse_error, "bad AP row in " + path);
    AccessPoint ap;
    ap.id = fields[0];
    ap.position = {parse_double(fields[1], path), parse_double(fields[2], path)};
    ap.p0 = parse_double(fields[3], path);
    ap.d0 = parse_double(fields[4], path);
    ap.path_loss_exp = parse_double(fields[5], path);
    ap.shadow_sigma = parse_double(fields[6], path);
    if (ap.d0 <= 0.0 || ap.path_loss_exp <= 0.0 || ap.shadow_sigma < 0.0)
      throw Error(Errc::invalid_argument, "AP '" + ap.id + "' violates model constraints");
    aps.push_back(std::move(ap));
  }
  return aps;
}

void save_observation(const RssiVector& obs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io_failure, "cannot open " + path + " for writing");
  out << "ap_id,rssi_dbm\n";
  for (const auto& [id, rssi] : obs.readings) out << id << "," << format_double(rssi) << "\n";
  if (!out) throw Error(Errc::io_failure, "write failed for " + path);
}

RssiVector load_observation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_failure, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::parse_error, "empty observation " + path);
  RssiVector obs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 2) throw Error(Errc::parse_error, "bad observation row in " + path);
    obs.readings[fields[0]] = parse_double(fields[1], path);
  }
  return obs;
}

}  // namespace hallway
