#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "trbt/geometry.hpp"

namespace trbt {

enum class Mechanism {
  TRBT,  // throughput-and-robustness guaranteed tracking
  WoBT,  // no tracking, beam stays put
  MNBT,  // track the window covering the most UEs
  MTBT,  // track the window with the highest throughput
};

inline constexpr std::array<Mechanism, 4> kAllMechanisms = {Mechanism::TRBT, Mechanism::WoBT, Mechanism::MNBT,
                                                            Mechanism::MTBT};

std::string_view to_string(Mechanism m) noexcept;
std::optional<Mechanism> mechanism_from_string(std::string_view name) noexcept;

// TR value of a window that keeps every previously served UE (zero handoff
// probability). It ranks above every finite TR.
inline constexpr double kAllCovered = std::numeric_limits<double>::infinity();

/// A contiguous run [start, end] of ring entries that fits inside the beam.
struct CandidateSet {
  std::size_t start = 0;
  std::size_t end = 0;  // inclusive
  std::size_t covered_count = 0;
  double span = 0.0;        // sum of gaps start..end-1, radians
  double direction = 0.0;   // bisector of the window's extreme UEs
  double throughput = 0.0;  // bit/s
  double handoff_prob = 1.0;
  double tr = 0.0;

  bool all_covered() const noexcept { return tr == kAllCovered; }
};

/// (T, P, TR) actually realized by a decision.
struct TrackingMetrics {
  double throughput = 0.0;
  double handoff_prob = 1.0;
  double tr = 0.0;

  bool all_covered() const noexcept { return tr == kAllCovered; }
};

/// Strict weak order on realized TR: ALL_COVERED above finite values, ties
/// among ALL_COVERED resolved by throughput.
bool tr_rank_less(const TrackingMetrics& lhs, const TrackingMetrics& rhs) noexcept;

struct TrackingDecision {
  Mechanism mechanism;
  std::optional<CandidateSet> chosen;
  double new_direction;
  TrackingMetrics metrics;
};

/// For every start index, grows the window to the right while its span still
/// fits in `beamwidth`. The result holds every right-maximal window (and so
/// every maximal one), ordered by start. Throws Error{EmptyRing}.
std::vector<CandidateSet> enumerate_maximal_sets(const OrderedUeRing& ring, double beamwidth);

/// Fills throughput, handoff probability and TR.
///
/// `capacities` are indexed by ring position. `population` is the number of
/// UEs the beam served before the move; `total_throughput` normalizes the
/// window throughput. Handoff probability is max(0, population - covered) /
/// population, so UEs that wandered into the area never push it negative.
/// Throws Error{ZeroPopulation} or Error{ZeroTotalThroughput}.
CandidateSet score_set(CandidateSet set, std::span<const double> capacities, std::size_t population,
                       double total_throughput);

std::vector<CandidateSet> score_sets(std::span<const CandidateSet> sets, std::span<const double> capacities,
                                     std::size_t population, double total_throughput);

/// argmax TR; ALL_COVERED windows first (by throughput), then smaller start,
/// then larger end. Throws Error{NoCandidates}.
TrackingDecision select_trbt(std::span<const CandidateSet> candidates);

/// argmax covered count; ties by larger throughput, then smaller start.
TrackingDecision select_mnbt(std::span<const CandidateSet> candidates);

/// argmax throughput; ties by smaller handoff probability, then smaller start.
TrackingDecision select_mtbt(std::span<const CandidateSet> candidates);

struct TrackedUe {
  UeId id;
  PolarPoint position;
  double capacity;  // bit/s if served by the tracked beam
};

/// Leaves the beam where it was and scores whichever UEs are still inside it.
/// A beam that covers nobody has TR 0.
TrackingDecision evaluate_wobt(double prev_direction, double beamwidth, std::span<const TrackedUe> ues,
                               std::size_t population, double total_throughput);

}  // namespace trbt
