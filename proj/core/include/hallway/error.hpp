#pragma once

#include <stdexcept>
#include <string>

namespace hallway {

// One code per failure mode the library contracts name. Callers that care
// about the reason switch on code(); everyone else just sees what().
enum class Errc {
  malformed_file,
  unsupported_depth,
  io_failure,
  degenerate_input,
  bad_order,
  image_too_small,
  insufficient_highlights,
  degenerate_geometry,
  singular_illuminant,
  too_short,
  empty_area,
  no_common_aps,
  above_horizon,
  insufficient_points,
  no_candidates,
  degenerate_configuration,
  no_hypothesis,
  degenerate_camera,
  clipping_risk,
  invalid_argument,
  parse_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::malformed_file: return "malformed_file";
    case Errc::unsupported_depth: return "unsupported_depth";
    case Errc::io_failure: return "io_failure";
    case Errc::degenerate_input: return "degenerate_input";
    case Errc::bad_order: return "bad_order";
    case Errc::image_too_small: return "image_too_small";
    case Errc::insufficient_highlights: return "insufficient_highlights";
    case Errc::degenerate_geometry: return "degenerate_geometry";
    case Errc::singular_illuminant: return "singular_illuminant";
    case Errc::too_short: return "too_short";
    case Errc::empty_area: return "empty_area";
    case Errc::no_common_aps: return "no_common_aps";
    case Errc::above_horizon: return "above_horizon";
    case Errc::insufficient_points: return "insufficient_points";
    case Errc::no_candidates: return "no_candidates";
    case Errc::degenerate_configuration: return "degenerate_configuration";
    case Errc::no_hypothesis: return "no_hypothesis";
    case Errc::degenerate_camera: return "degenerate_camera";
    case Errc::clipping_risk: return "clipping_risk";
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::parse_error: return "parse_error";
  }
  return "unknown";
}

}  // namespace hallway
