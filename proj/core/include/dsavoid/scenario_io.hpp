#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dsavoid/integrator.hpp"

namespace dsavoid {

/// One `section.key=value` override, applied on top of the parsed text.
struct Override {
  std::string key;
  std::string value;
};

/// Splits "section.key=value". Throws ValidationError on malformed input.
Override parse_override(std::string_view text);

/**
 * @brief Parse and validate a scenario file.
 *
 * Sections: [workspace] [obstacle] [ds] [flow] [modulation] [integrator]
 * [grid] [starts]. Key/value lines are `key = value`; vectors are written
 * `(x, y, z)`; `#` starts a comment. [starts] holds one vector per line.
 * Unknown sections or keys and duplicates raise ParseError; out-of-range
 * values raise ValidationError.
 */
Scenario parse_scenario(std::string_view text, const std::vector<Override>& overrides = {});

/// Canonical text for a scenario, with every default written out.
std::string write_scenario(const Scenario& scenario);

/// Non-fatal findings, e.g. a target outside the workspace or inside the obstacle.
std::vector<std::string> scenario_warnings(const Scenario& scenario);

/// 9 significant digits, then the shortest text that round-trips that value.
std::string format_real(double value);

/// CSV `t,x,y,z,vx,vy,vz,mode,gamma_o,gamma_w`.
void write_trajectory(const Trajectory& traj, std::ostream& sink);

/// CSV `x,y,z,vx,vy,vz,mode`; out-of-domain rows use the mode token `invalid`.
void write_field(const std::vector<FieldSample>& samples, std::ostream& sink);

std::vector<TrajectorySample> read_trajectory(std::istream& source);
std::vector<FieldSample> read_field(std::istream& source);

Mode parse_mode_token(std::string_view token);

}  // namespace dsavoid
