#include "trbt/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "trbt/error.hpp"

namespace trbt {

namespace {

struct UnitScale {
  std::string_view suffix;
  double scale;
};

std::span<const UnitScale> units_for(Quantity q) {
  static constexpr UnitScale frequency[] = {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}};
  static constexpr UnitScale length[] = {{"m", 1.0}, {"km", 1e3}};
  static constexpr UnitScale angle[] = {{"rad", 1.0}, {"deg", kPi / 180.0}};
  static constexpr UnitScale power[] = {{"dBm", 1.0}};
  static constexpr UnitScale density[] = {{"dBm/Hz", 1.0}};
  static constexpr UnitScale level[] = {{"dB", 1.0}};
  static constexpr UnitScale speed[] = {{"m/s", 1.0}, {"km/h", 1.0 / 3.6}};
  static constexpr UnitScale time[] = {{"s", 1.0}, {"ms", 1e-3}};
  switch (q) {
    case Quantity::Frequency: return frequency;
    case Quantity::Length: return length;
    case Quantity::Angle: return angle;
    case Quantity::Power: return power;
    case Quantity::Density: return density;
    case Quantity::Level: return level;
    case Quantity::Speed: return speed;
    case Quantity::Time: return time;
    case Quantity::Plain: return {};
  }
  return {};
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct LineContext {
  std::size_t line;
  std::string_view key;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::ParseError, fmt::format("line {}, key '{}': {}", line, key, what));
  }
};

double parse_quantity_at(std::string_view value, Quantity q, const LineContext& ctx) {
  double number = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), number);
  if (ec != std::errc{} || ptr == value.data()) ctx.fail(fmt::format("'{}' is not a number", value));
  const std::string_view suffix = trim(std::string_view(ptr, static_cast<std::size_t>(value.data() + value.size() - ptr)));
  if (suffix.empty()) return number;
  for (const auto& u : units_for(q)) {
    if (u.suffix == suffix) return number * u.scale;
  }
  ctx.fail(fmt::format("unit '{}' not accepted here", suffix));
}

std::uint64_t parse_count(std::string_view value, const LineContext& ctx) {
  std::uint64_t number = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), number);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    ctx.fail(fmt::format("'{}' is not a non-negative integer", value));
  }
  return number;
}

using Setter = std::function<void(ScenarioConfig&, std::string_view, const LineContext&)>;

Setter real(double ScenarioConfig::*field, Quantity q) {
  return [field, q](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
    c.*field = parse_quantity_at(v, q, ctx);
  };
}

Setter mobility_real(double MobilityParams::*field, Quantity q) {
  return [field, q](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
    c.mobility.*field = parse_quantity_at(v, q, ctx);
  };
}

Setter count(std::size_t ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
    c.*field = static_cast<std::size_t>(parse_count(v, ctx));
  };
}

const std::map<std::string_view, Setter>& setters() {
  static const std::map<std::string_view, Setter> table = {
      {"carrier_freq", real(&ScenarioConfig::carrier_freq, Quantity::Frequency)},
      {"bandwidth", real(&ScenarioConfig::bandwidth, Quantity::Frequency)},
      {"cell_radius", real(&ScenarioConfig::cell_radius, Quantity::Length)},
      {"ues_per_beam", count(&ScenarioConfig::ues_per_beam)},
      {"beamwidth_bs", real(&ScenarioConfig::beamwidth_bs, Quantity::Angle)},
      {"beamwidth_ue",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         c.beamwidth_ue = parse_quantity_at(v, Quantity::Angle, ctx);
       }},
      {"tx_power", real(&ScenarioConfig::tx_power_dbm, Quantity::Power)},
      {"side_lobe", real(&ScenarioConfig::side_lobe, Quantity::Plain)},
      {"noise_density", real(&ScenarioConfig::noise_density_dbm_hz, Quantity::Density)},
      {"shadowing_sigma", real(&ScenarioConfig::shadowing_sigma_db, Quantity::Level)},
      {"pathloss_exp", real(&ScenarioConfig::pathloss_exp, Quantity::Plain)},
      {"n_beams", count(&ScenarioConfig::n_beams)},
      {"tracking_area_width",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         c.tracking_area_width = parse_quantity_at(v, Quantity::Angle, ctx);
       }},
      {"speed_min", mobility_real(&MobilityParams::speed_min, Quantity::Speed)},
      {"speed_max", mobility_real(&MobilityParams::speed_max, Quantity::Speed)},
      {"step_duration", mobility_real(&MobilityParams::step_duration, Quantity::Time)},
      {"mobility_model",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         if (v != "random_direction") ctx.fail(fmt::format("unknown mobility model '{}'", v));
         c.mobility.model = MobilityModel::RandomDirection;
       }},
      {"trials", count(&ScenarioConfig::n_trials)},
      {"seed", [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) { c.seed = parse_count(v, ctx); }},
      {"tr_normalization",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         if (v == to_string(ThroughputNormalization::Bandwidth)) {
           c.normalization = ThroughputNormalization::Bandwidth;
         } else if (v == to_string(ThroughputNormalization::TrackingArea)) {
           c.normalization = ThroughputNormalization::TrackingArea;
         } else {
           ctx.fail(fmt::format("expected 'bandwidth' or 'tracking_area', got '{}'", v));
         }
       }},
  };
  return table;
}

}  // namespace

double parse_quantity(std::string_view text, Quantity q) {
  return parse_quantity_at(trim(text), q, LineContext{1, "value"});
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::ParseError, fmt::format("line {}: expected 'key = value', got '{}'", line_no, line));
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const LineContext ctx{line_no, key};
    const auto it = setters().find(key);
    if (it == setters().end()) ctx.fail("unknown key");
    if (value.empty()) ctx.fail("missing value");
    it->second(cfg, value, ctx);
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string emit_config(const ScenarioConfig& cfg) {
  std::string out;
  auto line = [&out](std::string_view key, auto value, std::string_view unit = {}) {
    out += fmt::format("{} = {}{}{}\n", key, value, unit.empty() ? "" : " ", unit);
  };
  line("carrier_freq", cfg.carrier_freq, "Hz");
  line("bandwidth", cfg.bandwidth, "Hz");
  line("cell_radius", cfg.cell_radius, "m");
  line("ues_per_beam", cfg.ues_per_beam);
  line("beamwidth_bs", cfg.beamwidth_bs, "rad");
  if (cfg.beamwidth_ue) line("beamwidth_ue", *cfg.beamwidth_ue, "rad");
  line("tx_power", cfg.tx_power_dbm, "dBm");
  line("side_lobe", cfg.side_lobe);
  line("noise_density", cfg.noise_density_dbm_hz, "dBm/Hz");
  line("shadowing_sigma", cfg.shadowing_sigma_db, "dB");
  line("pathloss_exp", cfg.pathloss_exp);
  line("n_beams", cfg.n_beams);
  if (cfg.tracking_area_width) line("tracking_area_width", *cfg.tracking_area_width, "rad");
  line("speed_min", cfg.mobility.speed_min, "m/s");
  line("speed_max", cfg.mobility.speed_max, "m/s");
  line("step_duration", cfg.mobility.step_duration, "s");
  line("mobility_model", "random_direction");
  line("trials", cfg.n_trials);
  line("seed", cfg.seed);
  line("tr_normalization", to_string(cfg.normalization));
  return out;
}

}  // namespace trbt
