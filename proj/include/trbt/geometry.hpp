#pragma once

#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace trbt {

using Rng = std::mt19937_64;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Maps any finite angle onto [0, 2π).
double normalize_angle(double angle);

/// Minimal absolute separation between two directions, in [0, π].
double angular_distance(double a, double b);

/// Position relative to the base station at the origin.
class PolarPoint {
 public:
  /// Throws std::invalid_argument unless radius is finite and > 0.
  PolarPoint(double angle, double radius);

  static PolarPoint from_cartesian(double x, double y);

  double angle() const noexcept { return angle_; }
  double radius() const noexcept { return radius_; }
  double x() const;
  double y() const;

  bool operator==(const PolarPoint&) const = default;

 private:
  double angle_;
  double radius_;
};

/// Angular sector [center - width/2, center + width/2], boundary inclusive.
class Sector {
 public:
  /// Throws std::invalid_argument unless width is in (0, 2π].
  Sector(double center, double width);

  double center() const noexcept { return center_; }
  double width() const noexcept { return width_; }
  double clockwise_edge() const { return normalize_angle(center_ - width_ / 2.0); }

  bool contains(double angle) const;
  bool contains(const PolarPoint& p) const { return contains(p.angle()); }

  // Strict interior: a point exactly on either edge is excluded. Used for
  // tracking-area membership, where the edge is shared with a neighbor beam.
  bool interior_contains(double angle) const;
  bool interior_contains(const PolarPoint& p) const { return interior_contains(p.angle()); }

  /// Counter-clockwise angle from the clockwise edge to `angle`, in [0, 2π).
  double offset_of(double angle) const;

 private:
  double center_;
  double width_;
};

bool sector_contains(const Sector& s, const PolarPoint& p);

using UeId = std::uint32_t;

struct PositionedUe {
  UeId id;
  PolarPoint position;
};

struct RingEntry {
  UeId id;
  PolarPoint position;
  double offset;  // counter-clockwise from the area's clockwise edge
};

/// UEs of one tracking area numbered counter-clockwise, plus the angular gap
/// between each consecutive pair.
class OrderedUeRing {
 public:
  OrderedUeRing(Sector area, std::vector<RingEntry> entries);

  const Sector& area() const noexcept { return area_; }
  std::span<const RingEntry> entries() const noexcept { return entries_; }
  std::span<const double> gaps() const noexcept { return gaps_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// Sum of gaps first..last-1, accumulated left to right.
  double span(std::size_t first, std::size_t last) const;

  /// Direction halfway between the two entries, as an absolute angle.
  double bisector(std::size_t first, std::size_t last) const;

 private:
  Sector area_;
  std::vector<RingEntry> entries_;
  std::vector<double> gaps_;
};

/// Sorts UEs counter-clockwise from the area's clockwise edge; coincident
/// angles are ordered by id. Throws Error{EmptyInput} or Error{OutOfArea}.
OrderedUeRing order_ues(std::span<const PositionedUe> ues, const Sector& area);

/// Uniform over the disk of radius r_cell.
PolarPoint uniform_cell_point(Rng& rng, double r_cell);

/// Uniform over the annular sector {θ ∈ sector, r_min ≤ r ≤ r_max}.
PolarPoint uniform_sector_point(Rng& rng, const Sector& sector, double r_min, double r_max);

}  // namespace trbt
