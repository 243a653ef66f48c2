// trbt_sim: Monte Carlo comparison of beam tracking mechanisms.
//
//   trbt_sim --out results --sweep-m 1..30:5 --freqs 28GHz,60GHz --widths 10deg,30deg
//
// Writes results.csv and manifest.txt into the output directory.

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "trbt/config.hpp"
#include "trbt/error.hpp"
#include "trbt/report.hpp"
#include "trbt/sim.hpp"

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::size_t to_count(const std::string& s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw trbt::Error(trbt::Errc::ParseError, "'" + s + "' is not a non-negative integer");
  }
  return v;
}

// "lo..hi", "lo..hi:step" or a comma list.
std::vector<std::size_t> parse_m_values(const std::string& text) {
  std::vector<std::size_t> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    std::string hi_part = text.substr(dots + 2);
    std::size_t stride = 1;
    if (const auto colon = hi_part.find(':'); colon != std::string::npos) {
      stride = to_count(hi_part.substr(colon + 1));
      hi_part = hi_part.substr(0, colon);
    }
    const std::size_t lo = to_count(text.substr(0, dots));
    const std::size_t hi = to_count(hi_part);
    if (stride == 0 || lo > hi) throw trbt::Error(trbt::Errc::ParseError, "bad m range '" + text + "'");
    for (std::size_t m = lo; m <= hi; m += stride) out.push_back(m);
    // 1..30:5 -> 1,6,...,26 would miss the end point; always include hi.
    if (out.back() != hi) out.push_back(hi);
    return out;
  }
  for (const auto& part : split(text, ',')) out.push_back(to_count(part));
  return out;
}

std::vector<double> parse_list(const std::string& text, trbt::Quantity q) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(trbt::parse_quantity(part, q));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beam tracking Monte Carlo simulator (TRBT, WoBT, MNBT, MTBT)"};

  std::string config_path;
  std::string out_dir = "results";
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::string sweep_m, freqs, widths, mechanisms;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());

  app.add_option("--config", config_path, "Scenario file (key = value lines)")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed, "Master seed (overrides config)");
  auto* trials_opt = app.add_option("--trials", trials, "Drops per sweep point (overrides config)");
  app.add_option("--sweep-m", sweep_m, "UEs per beam: lo..hi, lo..hi:step or a comma list");
  app.add_option("--freqs", freqs, "Carrier frequencies, e.g. 28GHz,60GHz");
  app.add_option("--widths", widths, "BS beamwidths, e.g. 10deg,30deg");
  app.add_option("--mechanisms", mechanisms, "Subset of TRBT,WoBT,MNBT,MTBT to report");
  app.add_option("--workers", workers, "Worker threads; output does not depend on it")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    trbt::ScenarioConfig cfg = config_path.empty() ? trbt::ScenarioConfig{} : trbt::load_config(config_path);
    if (*seed_opt) cfg.seed = seed;
    if (*trials_opt) cfg.n_trials = trials;
    cfg.validate();

    trbt::SweepSpec sweep;
    sweep.m_values = sweep_m.empty() ? std::vector<std::size_t>{cfg.ues_per_beam} : parse_m_values(sweep_m);
    sweep.carrier_freqs = freqs.empty() ? std::vector<double>{cfg.carrier_freq}
                                        : parse_list(freqs, trbt::Quantity::Frequency);
    sweep.beamwidths = widths.empty() ? std::vector<double>{cfg.beamwidth_bs}
                                      : parse_list(widths, trbt::Quantity::Angle);

    trbt::RunManifest manifest;
    manifest.config_path = config_path;
    manifest.output_dir = out_dir;
    manifest.config = cfg;
    manifest.seed = cfg.seed;
    manifest.sweep = sweep;
    if (!mechanisms.empty()) {
      manifest.mechanisms.clear();
      for (const auto& name : split(mechanisms, ',')) {
        const auto mech = trbt::mechanism_from_string(name);
        if (!mech) throw trbt::Error(trbt::Errc::ParseError, "unknown mechanism '" + name + "'");
        manifest.mechanisms.push_back(*mech);
      }
    }

    const auto stats = trbt::run_sweep(cfg, sweep, workers);
    trbt::emit_results(stats, manifest);
    std::cout << "wrote " << stats.size() * manifest.mechanisms.size() << " rows to "
              << (manifest.output_dir / "results.csv").string() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "trbt_sim: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
