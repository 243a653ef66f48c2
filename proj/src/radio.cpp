#include "trbt/radio.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "trbt/error.hpp"

namespace trbt {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

AntennaPattern::AntennaPattern(double beamwidth, double side_lobe) : beamwidth_(beamwidth), side_lobe_(side_lobe) {
  if (!(beamwidth > 0.0) || beamwidth > kTwoPi) {
    throw std::invalid_argument("AntennaPattern beamwidth must be in (0, 2pi]");
  }
  if (!(side_lobe >= 0.0) || !(side_lobe < 1.0)) {
    throw std::invalid_argument("AntennaPattern side-lobe gain must be in [0, 1)");
  }
  main_lobe_ = (kTwoPi - (kTwoPi - beamwidth_) * side_lobe_) / beamwidth_;
}

double directivity_gain(const AntennaPattern& pattern, double offset) {
  return angular_distance(offset, 0.0) <= pattern.beamwidth() / 2.0 ? pattern.main_lobe_gain()
                                                                     : pattern.side_lobe();
}

double ChannelParams::noise_power_watts() const { return dbm_to_watts(noise_density_dbm_hz) * bandwidth; }

void ChannelParams::validate() const {
  if (!(carrier_freq > 0.0)) throw std::invalid_argument("carrier frequency must be > 0");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be > 0");
  if (!(pathloss_exp > 0.0)) throw std::invalid_argument("path-loss exponent must be > 0");
  if (!(shadowing_sigma_db >= 0.0)) throw std::invalid_argument("shadowing sigma must be >= 0");
  if (!std::isfinite(noise_density_dbm_hz)) throw std::invalid_argument("noise density must be finite");
}

double path_gain_db(const ChannelParams& params, double distance) {
  if (!(distance > 0.0)) {
    throw Error(Errc::NonPositiveDistance, "path gain needs distance > 0, got " + std::to_string(distance));
  }
  return 10.0 * params.pathloss_exp * std::log10(params.wavelength() / (4.0 * kPi * distance));
}

double channel_gain(const ChannelParams& params, double distance, double shadow_db) {
  return db_to_linear(path_gain_db(params, distance) + shadow_db);
}

std::vector<double> sample_shadowing(Rng& rng, double sigma_db, std::size_t count) {
  std::vector<double> samples(count, 0.0);
  if (sigma_db > 0.0) {
    std::normal_distribution<double> dist(0.0, sigma_db);
    for (double& s : samples) s = dist(rng);
  }
  return samples;
}

LinkBudget evaluate_link(const BeamConfig& serving, const PolarPoint& ue,
                         std::span<const BeamConfig> interferers, const AntennaPattern& ue_pattern,
                         const ChannelParams& params, const LinkShadowing& shadows) {
  if (shadows.interferers_db.size() != interferers.size()) {
    throw std::invalid_argument("evaluate_link: one shadowing sample per interferer required");
  }

  // Every transmission originates at the BS and the UE beam is steered at the
  // BS, so each arrival sits at zero offset in the UE pattern.
  const double rx_gain = directivity_gain(ue_pattern, 0.0);

  LinkBudget link{};
  link.tx_gain = directivity_gain(serving.pattern, ue.angle() - serving.direction);
  link.rx_gain = rx_gain;
  link.channel_gain = channel_gain(params, ue.radius(), shadows.serving_db);
  const double signal = dbm_to_watts(serving.tx_power_dbm) * link.tx_gain * link.channel_gain * rx_gain;

  double interference = 0.0;
  for (std::size_t k = 0; k < interferers.size(); ++k) {
    const BeamConfig& beam = interferers[k];
    if (beam.id == serving.id) throw std::invalid_argument("evaluate_link: serving beam listed as interferer");
    const double g_tx = directivity_gain(beam.pattern, ue.angle() - beam.direction);
    const double g_ch = channel_gain(params, ue.radius(), shadows.interferers_db[k]);
    interference += dbm_to_watts(beam.tx_power_dbm) * g_tx * g_ch * rx_gain;
  }

  link.interference_watts = interference;
  link.noise_watts = params.noise_power_watts();
  link.sinr = signal / (interference + link.noise_watts);
  link.capacity = capacity(params, link.sinr);
  return link;
}

double sinr(const BeamConfig& serving, const PolarPoint& ue, std::span<const BeamConfig> interferers,
            const AntennaPattern& ue_pattern, const ChannelParams& params, const LinkShadowing& shadows) {
  return evaluate_link(serving, ue, interferers, ue_pattern, params, shadows).sinr;
}

double capacity(const ChannelParams& params, double sinr) {
  if (sinr < 0.0 || std::isnan(sinr)) throw Error(Errc::NegativeSinr, "capacity needs sinr >= 0");
  return params.bandwidth * std::log2(1.0 + sinr);
}

}  // namespace trbt
