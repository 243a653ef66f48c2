#include "trbt/report.hpp"

#include <fstream>

#include <fmt/format.h>

#include "trbt/config.hpp"
#include "trbt/error.hpp"

namespace trbt {

std::string format_results_csv(std::span<const AggregateStats> stats, std::span<const Mechanism> mechanisms) {
  if (stats.empty()) throw Error(Errc::EmptyResults, "no aggregate statistics to write");
  if (mechanisms.empty()) throw Error(Errc::EmptyResults, "no mechanisms selected for output");

  std::string out{kResultsHeader};
  out += '\n';
  for (const auto& s : stats) {
    for (Mechanism mech : mechanisms) {
      const MechanismStats& ms = s[mech];
      // fmt's default float format is the shortest round-trip form and ignores the locale.
      out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", s.point.m, s.point.carrier_freq, s.point.beamwidth,
                         to_string(mech), ms.tr.mean, ms.tr.ci95, ms.throughput.mean, ms.throughput.ci95,
                         ms.handoff_prob.mean, ms.handoff_prob.ci95);
    }
  }
  return out;
}

std::string format_manifest(const RunManifest& manifest) {
  std::string out;
  out += fmt::format("tool_version: {}\n", manifest.tool_version);
  out += fmt::format("config_path: {}\n", manifest.config_path.empty() ? "(defaults)" : manifest.config_path.string());
  out += fmt::format("output_dir: {}\n", manifest.output_dir.string());
  out += fmt::format("master_seed: {}\n", manifest.seed);
  out += fmt::format("sweep_m: {}\n", fmt::join(manifest.sweep.m_values, ","));
  out += fmt::format("sweep_freqs_hz: {}\n", fmt::join(manifest.sweep.carrier_freqs, ","));
  out += fmt::format("sweep_beamwidths_rad: {}\n", fmt::join(manifest.sweep.beamwidths, ","));
  std::vector<std::string_view> names;
  for (Mechanism m : manifest.mechanisms) names.push_back(to_string(m));
  out += fmt::format("mechanisms: {}\n", fmt::join(names, ","));
  out += fmt::format("tr_normalization: {}\n", to_string(manifest.config.normalization));
  out += "all_covered_tr: handoff probability floored at 1/(2m) when averaging\n";
  out += fmt::format("ue_beamwidth: {}\n", manifest.config.beamwidth_ue ? "fixed by config" : "follows bs beamwidth");
  out += "\n[config]\n";
  out += emit_config(manifest.config);
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw Error(Errc::IoError, "failed writing " + path.string());
}

}  // namespace

void emit_results(std::span<const AggregateStats> stats, const RunManifest& manifest) {
  const std::string csv = format_results_csv(stats, manifest.mechanisms);
  std::error_code ec;
  std::filesystem::create_directories(manifest.output_dir, ec);
  if (ec) throw Error(Errc::IoError, "cannot create " + manifest.output_dir.string() + ": " + ec.message());
  write_file(manifest.output_dir / "results.csv", csv);
  write_file(manifest.output_dir / "manifest.txt", format_manifest(manifest));
}

}  // namespace trbt
