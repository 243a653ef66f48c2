#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "trbt/geometry.hpp"

namespace trbt {

inline constexpr double kSpeedOfLight = 3.0e8;  // m/s

double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watts(double dbm);

// Ideal sectored pattern: constant main-lobe gain over the beamwidth, constant
// side-lobe gain elsewhere, normalized so the total radiated power over the
// circle equals that of an isotropic antenna.
class AntennaPattern {
 public:
  /// beamwidth in (0, 2π], side_lobe in [0, 1). Throws std::invalid_argument.
  AntennaPattern(double beamwidth, double side_lobe);

  double beamwidth() const noexcept { return beamwidth_; }
  double side_lobe() const noexcept { return side_lobe_; }
  double main_lobe_gain() const noexcept { return main_lobe_; }

  bool operator==(const AntennaPattern&) const = default;

 private:
  double beamwidth_;
  double side_lobe_;
  double main_lobe_;
};

/// Linear directivity gain at `offset` radians from boresight.
double directivity_gain(const AntennaPattern& pattern, double offset);

struct ChannelParams {
  double carrier_freq = 28e9;           // Hz
  double bandwidth = 500e6;             // Hz
  double pathloss_exp = 2.5;
  double shadowing_sigma_db = 12.0;
  double noise_density_dbm_hz = -174.0;

  double wavelength() const { return kSpeedOfLight / carrier_freq; }
  double noise_power_watts() const;

  /// Throws std::invalid_argument naming the violated bound.
  void validate() const;

  bool operator==(const ChannelParams&) const = default;
};

/// 10·η·log10(λ / 4πd). Throws Error{NonPositiveDistance}.
double path_gain_db(const ChannelParams& params, double distance);

/// Linear gain of path gain plus a log-normal shadowing sample given in dB.
double channel_gain(const ChannelParams& params, double distance, double shadow_db);

/// Zero-mean normal shadowing samples in dB; all zero when sigma is 0.
std::vector<double> sample_shadowing(Rng& rng, double sigma_db, std::size_t count);

using BeamId = std::uint32_t;

struct BeamConfig {
  BeamId id;
  double direction;  // boresight, radians
  AntennaPattern pattern;
  double tx_power_dbm;
};

struct LinkBudget {
  double tx_gain;
  double rx_gain;
  double channel_gain;
  double interference_watts;
  double noise_watts;
  double sinr;
  double capacity;  // bit/s
};

// Shadowing draws for one UE: the serving link plus one entry per interferer,
// aligned with the interferer list.
struct LinkShadowing {
  double serving_db = 0.0;
  std::span<const double> interferers_db;
};

/// Full downlink budget for a UE whose receive beam points at the BS.
/// The serving beam gain uses the UE's actual offset from the serving beam's
/// boresight; callers wanting "capacity if covered" pass a beam aimed at the UE.
LinkBudget evaluate_link(const BeamConfig& serving, const PolarPoint& ue,
                         std::span<const BeamConfig> interferers, const AntennaPattern& ue_pattern,
                         const ChannelParams& params, const LinkShadowing& shadows);

double sinr(const BeamConfig& serving, const PolarPoint& ue, std::span<const BeamConfig> interferers,
            const AntennaPattern& ue_pattern, const ChannelParams& params, const LinkShadowing& shadows);

/// Shannon capacity B·log2(1 + sinr). Throws Error{NegativeSinr}.
double capacity(const ChannelParams& params, double sinr);

}  // namespace trbt
