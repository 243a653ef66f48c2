#include "trbt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "trbt/error.hpp"

namespace trbt {

double normalize_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value lands exactly on 2π after the shift.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double angular_distance(double a, double b) {
  const double d = normalize_angle(a - b);
  return std::min(d, kTwoPi - d);
}

PolarPoint::PolarPoint(double angle, double radius) : angle_(normalize_angle(angle)), radius_(radius) {
  if (!std::isfinite(angle) || !std::isfinite(radius) || radius <= 0.0) {
    throw std::invalid_argument("PolarPoint requires a finite angle and radius > 0, got radius " +
                                std::to_string(radius));
  }
}

PolarPoint PolarPoint::from_cartesian(double x, double y) {
  return PolarPoint(std::atan2(y, x), std::hypot(x, y));
}

double PolarPoint::x() const { return radius_ * std::cos(angle_); }
double PolarPoint::y() const { return radius_ * std::sin(angle_); }

Sector::Sector(double center, double width) : center_(normalize_angle(center)), width_(width) {
  if (!(width > 0.0) || width > kTwoPi) {
    throw std::invalid_argument("Sector width must be in (0, 2pi], got " + std::to_string(width));
  }
}

bool Sector::contains(double angle) const { return angular_distance(angle, center_) <= width_ / 2.0; }

bool Sector::interior_contains(double angle) const {
  return angular_distance(angle, center_) < width_ / 2.0;
}

double Sector::offset_of(double angle) const { return normalize_angle(angle - clockwise_edge()); }

bool sector_contains(const Sector& s, const PolarPoint& p) { return s.contains(p); }

OrderedUeRing::OrderedUeRing(Sector area, std::vector<RingEntry> entries)
    : area_(area), entries_(std::move(entries)) {
  if (!entries_.empty()) gaps_.reserve(entries_.size() - 1);
  for (std::size_t j = 1; j < entries_.size(); ++j) {
    const double gap = entries_[j].offset - entries_[j - 1].offset;
    if (gap < 0.0) throw std::invalid_argument("OrderedUeRing entries must be sorted by offset");
    gaps_.push_back(gap);
  }
}

double OrderedUeRing::span(std::size_t first, std::size_t last) const {
  double sum = 0.0;
  for (std::size_t j = first; j < last; ++j) sum += gaps_[j];
  return sum;
}

double OrderedUeRing::bisector(std::size_t first, std::size_t last) const {
  const double mid = 0.5 * (entries_[first].offset + entries_[last].offset);
  return normalize_angle(area_.clockwise_edge() + mid);
}

OrderedUeRing order_ues(std::span<const PositionedUe> ues, const Sector& area) {
  if (ues.empty()) throw Error(Errc::EmptyInput, "order_ues: no UEs to order");

  std::vector<RingEntry> entries;
  entries.reserve(ues.size());
  for (const auto& ue : ues) {
    if (!area.contains(ue.position)) {
      throw Error(Errc::OutOfArea, "order_ues: UE " + std::to_string(ue.id) + " lies outside the tracking area");
    }
    double offset = area.offset_of(ue.position.angle());
    // A point accepted by contains() can still round to just past an edge.
    if (offset > area.width()) offset = offset > kPi + area.width() / 2.0 ? 0.0 : area.width();
    entries.push_back({ue.id, ue.position, offset});
  }
  std::sort(entries.begin(), entries.end(), [](const RingEntry& a, const RingEntry& b) {
    return a.offset != b.offset ? a.offset < b.offset : a.id < b.id;
  });
  return OrderedUeRing(area, std::move(entries));
}

PolarPoint uniform_cell_point(Rng& rng, double r_cell) {
  if (!(r_cell > 0.0)) throw std::invalid_argument("uniform_cell_point: r_cell must be > 0");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double angle = kTwoPi * unit(rng);
  // 1 - U lies in (0, 1], keeping the radius strictly positive.
  const double radius = r_cell * std::sqrt(1.0 - unit(rng));
  return PolarPoint(angle, radius);
}

PolarPoint uniform_sector_point(Rng& rng, const Sector& sector, double r_min, double r_max) {
  if (!(r_min >= 0.0) || !(r_max > r_min)) {
    throw std::invalid_argument("uniform_sector_point: need 0 <= r_min < r_max");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double angle = sector.center() - sector.width() / 2.0 + sector.width() * unit(rng);
  const double u = 1.0 - unit(rng);
  const double radius = std::sqrt(r_min * r_min + (r_max * r_max - r_min * r_min) * u);
  return PolarPoint(angle, radius);
}

}  // namespace trbt
