#include "trbt/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trbt {

void MobilityParams::validate() const {
  if (!(speed_min >= 0.0) || !(speed_max >= speed_min)) {
    throw std::invalid_argument("mobility needs 0 <= speed_min <= speed_max");
  }
  if (!(step_duration > 0.0)) throw std::invalid_argument("mobility step duration must be > 0");
}

namespace {

PolarPoint random_direction_step(const PolarPoint& ue, const MobilityParams& params, double cell_radius,
                                 Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double heading = kTwoPi * unit(rng);
  const double speed = params.speed_min + (params.speed_max - params.speed_min) * unit(rng);
  const double distance = speed * params.step_duration;
  if (distance == 0.0) return ue;

  const double x = ue.x() + distance * std::cos(heading);
  const double y = ue.y() + distance * std::sin(heading);
  double radius = std::hypot(x, y);
  // A UE landing on the BS itself keeps its previous bearing.
  const double angle = radius > 0.0 ? std::atan2(y, x) : ue.angle();

  if (radius > cell_radius) radius = 2.0 * cell_radius - radius;
  radius = std::clamp(radius, kMinUeRadius, cell_radius);
  return PolarPoint(angle, radius);
}

}  // namespace

PolarPoint step(const PolarPoint& ue, const MobilityParams& params, double cell_radius, Rng& rng) {
  switch (params.model) {
    case MobilityModel::RandomDirection: return random_direction_step(ue, params, cell_radius, rng);
  }
  return ue;
}

}  // namespace trbt
