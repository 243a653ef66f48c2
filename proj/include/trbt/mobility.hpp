#pragma once

#include "trbt/geometry.hpp"

namespace trbt {

// UEs never get closer than this to the BS; keeps path loss finite.
inline constexpr double kMinUeRadius = 1.0;  // m

enum class MobilityModel {
  RandomDirection,
};

struct MobilityParams {
  double speed_min = 1.0;      // m/s
  double speed_max = 3.0;      // m/s
  double step_duration = 1.0;  // s, one tracking epoch
  MobilityModel model = MobilityModel::RandomDirection;

  /// Throws std::invalid_argument.
  void validate() const;

  bool operator==(const MobilityParams&) const = default;
};

/// Moves a UE for one epoch: uniform heading, speed uniform in
/// [speed_min, speed_max]. Positions beyond the cell edge are mirrored back
/// across it; the result is clamped to [kMinUeRadius, cell_radius].
PolarPoint step(const PolarPoint& ue, const MobilityParams& params, double cell_radius, Rng& rng);

}  // namespace trbt
