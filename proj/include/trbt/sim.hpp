#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trbt/mobility.hpp"
#include "trbt/radio.hpp"
#include "trbt/tracking.hpp"

namespace trbt {

// What T_total in the TR metric is. Decisions never depend on it (TR is
// compared within one drop), only the reported TR magnitudes do.
enum class ThroughputNormalization {
  Bandwidth,     // T_total = B, so T_e/T_total is a spectral efficiency
  TrackingArea,  // T_total = summed capacity of every UE in the tracking area
};

std::string_view to_string(ThroughputNormalization n) noexcept;

struct ScenarioConfig {
  double carrier_freq = 28e9;  // Hz
  double bandwidth = 500e6;    // Hz
  double cell_radius = 200.0;  // m
  std::size_t ues_per_beam = 10;
  double beamwidth_bs = deg_to_rad(10.0);
  std::optional<double> beamwidth_ue;  // unset: same as beamwidth_bs
  double tx_power_dbm = 40.0;
  double side_lobe = 0.01;
  double noise_density_dbm_hz = -174.0;
  double shadowing_sigma_db = 12.0;
  double pathloss_exp = 2.5;
  std::size_t n_beams = 6;
  std::optional<double> tracking_area_width;  // unset: 3 x beamwidth_bs
  MobilityParams mobility;
  std::size_t n_trials = 500;
  std::uint64_t seed = 1;
  ThroughputNormalization normalization = ThroughputNormalization::Bandwidth;

  double ue_beamwidth() const { return beamwidth_ue.value_or(beamwidth_bs); }
  double tracking_area() const { return tracking_area_width.value_or(3.0 * beamwidth_bs); }
  ChannelParams channel() const;

  /// Throws Error{ValidationError} naming the violated invariant.
  void validate() const;

  bool operator==(const ScenarioConfig&) const = default;
};

struct SweepPoint {
  std::size_t m;
  double carrier_freq;
  double beamwidth;  // BS beam; the UE beam follows unless set explicitly

  bool operator==(const SweepPoint&) const = default;
};

/// The config with one sweep point's coordinates substituted in.
ScenarioConfig at_point(const ScenarioConfig& cfg, const SweepPoint& point);

struct MechanismOutcome {
  double throughput = 0.0;
  double handoff_prob = 1.0;
  double tr = 0.0;  // kAllCovered when nothing was handed off
  std::size_t covered = 0;
  double direction = 0.0;

  TrackingMetrics metrics() const { return {throughput, handoff_prob, tr}; }
  bool operator==(const MechanismOutcome&) const = default;
};

struct TrialResult {
  std::uint64_t seed = 0;
  std::size_t m = 0;  // UEs served before the move
  std::size_t n = 0;  // UEs inside the tracking area after it
  double total_throughput = 0.0;
  std::array<MechanismOutcome, 4> outcomes{};

  const MechanismOutcome& operator[](Mechanism mech) const { return outcomes[static_cast<std::size_t>(mech)]; }
  MechanismOutcome& operator[](Mechanism mech) { return outcomes[static_cast<std::size_t>(mech)]; }
  bool operator==(const TrialResult&) const = default;
};

/// TR as it enters averages. An ALL_COVERED outcome is scored with its handoff
/// probability floored at 1/(2m), half the smallest nonzero value.
double reported_tr(const TrialResult& trial, Mechanism mech);

/// One drop: place m UEs in the tracked beam, move them once, draw fresh
/// shadowing, then let all four mechanisms decide on identical inputs.
TrialResult run_drop(const ScenarioConfig& cfg, std::uint64_t seed);

/// Reproducible per-trial seed from the master seed, the m and beamwidth
/// coordinates and the trial index. Carrier frequency is deliberately left
/// out so frequency comparisons run on common random numbers.
std::uint64_t trial_seed(std::uint64_t master_seed, const SweepPoint& point, std::size_t trial);

struct MetricStats {
  double mean = 0.0;
  double ci95 = 0.0;  // normal-approximation half-width

  bool operator==(const MetricStats&) const = default;
};

struct MechanismStats {
  MetricStats tr;
  MetricStats throughput;
  MetricStats handoff_prob;
  std::size_t all_covered_drops = 0;

  bool operator==(const MechanismStats&) const = default;
};

struct AggregateStats {
  SweepPoint point;
  std::size_t n_trials = 0;
  std::array<MechanismStats, 4> mechanisms{};

  const MechanismStats& operator[](Mechanism mech) const { return mechanisms[static_cast<std::size_t>(mech)]; }
  bool operator==(const AggregateStats&) const = default;
};

MetricStats summarize(std::span<const double> values);

/// Throws Error{EmptyTrials}.
AggregateStats aggregate(std::span<const TrialResult> trials, const SweepPoint& point);

/// n_trials drops at one sweep point, spread over `workers` threads. Results
/// are stored by trial index, so the output does not depend on `workers`.
std::vector<TrialResult> run_point(const ScenarioConfig& cfg, const SweepPoint& point, unsigned workers = 1);

struct SweepSpec {
  std::vector<std::size_t> m_values;
  std::vector<double> carrier_freqs;
  std::vector<double> beamwidths;

  std::vector<SweepPoint> points() const;  // frequency-major, then width, then m
};

std::vector<AggregateStats> run_sweep(const ScenarioConfig& cfg, const SweepSpec& sweep, unsigned workers = 1);

}  // namespace trbt
