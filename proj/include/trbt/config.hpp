#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "trbt/sim.hpp"

namespace trbt {

enum class Quantity { Frequency, Length, Angle, Power, Density, Level, Speed, Time, Plain };

/// A number with an optional unit suffix, converted to the quantity's base
/// unit (Hz, m, rad, dBm, dBm/Hz, dB, m/s, s). Throws Error{ParseError}.
double parse_quantity(std::string_view text, Quantity q);

/// Parses `key = value [unit]` lines. '#' starts a comment. Keys left out
/// keep their ScenarioConfig defaults.
///
/// Accepted units per quantity (a bare number means the first one listed):
///   frequency  Hz kHz MHz GHz      angle      rad deg
///   length     m km                power      dBm
///   density    dBm/Hz              level      dB
///   speed      m/s km/h            time       s ms
///
/// Throws Error{ParseError} with the line number and key, or
/// Error{ValidationError} when the assembled config breaks an invariant.
ScenarioConfig parse_config(std::string_view text);

ScenarioConfig load_config(const std::filesystem::path& path);

/// Every field in base units at full precision; parse_config(emit_config(c)) == c.
std::string emit_config(const ScenarioConfig& cfg);

}  // namespace trbt
