#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "trbt/sim.hpp"

namespace trbt {

inline constexpr std::string_view kToolVersion = "0.1.0";

inline constexpr std::string_view kResultsHeader =
    "m,freq_hz,beamwidth_rad,mechanism,mean_tr,ci_tr,mean_throughput_bps,ci_throughput,mean_handoff_prob,ci_handoff";

struct RunManifest {
  std::filesystem::path config_path;  // empty when running on defaults
  std::filesystem::path output_dir;
  ScenarioConfig config;
  std::string tool_version{kToolVersion};
  std::uint64_t seed = 0;
  SweepSpec sweep;
  std::vector<Mechanism> mechanisms{kAllMechanisms.begin(), kAllMechanisms.end()};
};

/// One row per (sweep point, mechanism) in the given mechanism order.
/// Throws Error{EmptyResults}.
std::string format_results_csv(std::span<const AggregateStats> stats, std::span<const Mechanism> mechanisms);

std::string format_manifest(const RunManifest& manifest);

/// Writes results.csv and manifest.txt into manifest.output_dir, creating it
/// if needed. Throws Error{EmptyResults} or Error{IoError}.
void emit_results(std::span<const AggregateStats> stats, const RunManifest& manifest);

}  // namespace trbt
