#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "trbt/config.hpp"
#include "trbt/error.hpp"
#include "trbt/report.hpp"

using namespace trbt;

namespace {

Errc error_code_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected parse_config to throw");
  return Errc::IoError;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<AggregateStats> one_point_stats() {
  ScenarioConfig cfg;
  cfg.n_trials = 20;
  return run_sweep(cfg, SweepSpec{{5}, {28e9}, {deg_to_rad(10.0)}});
}

}  // namespace

TEST_CASE("empty config yields the reference scenario") {
  const ScenarioConfig cfg = parse_config("");
  CHECK(cfg.carrier_freq == 28e9);
  CHECK(cfg.bandwidth == 500e6);
  CHECK(cfg.cell_radius == 200.0);
  CHECK(cfg.beamwidth_bs == doctest::Approx(deg_to_rad(10.0)));
  CHECK(cfg.ue_beamwidth() == doctest::Approx(deg_to_rad(10.0)));
  CHECK(cfg.tx_power_dbm == 40.0);
  CHECK(cfg.side_lobe == 0.01);
  CHECK(cfg.noise_density_dbm_hz == -174.0);
  CHECK(cfg.shadowing_sigma_db == 12.0);
  CHECK(cfg.pathloss_exp == 2.5);
  CHECK(cfg == ScenarioConfig{});
}

TEST_CASE("units and comments") {
  const ScenarioConfig cfg = parse_config(
      "# scenario\n"
      "beamwidth_bs = 30 deg\n"
      "carrier_freq = 60GHz   # band\n"
      "bandwidth = 400 MHz\n"
      "cell_radius = 0.15 km\n"
      "noise_density = -170 dBm/Hz\n"
      "speed_max = 18 km/h\n"
      "step_duration = 500 ms\n"
      "tracking_area_width = 1.2\n"
      "\n"
      "tr_normalization = tracking_area\n");
  CHECK(cfg.beamwidth_bs == doctest::Approx(kPi / 6));
  CHECK(cfg.carrier_freq == 60e9);
  CHECK(cfg.bandwidth == 400e6);
  CHECK(cfg.cell_radius == doctest::Approx(150.0));
  CHECK(cfg.noise_density_dbm_hz == -170.0);
  CHECK(cfg.mobility.speed_max == doctest::Approx(5.0));
  CHECK(cfg.mobility.step_duration == doctest::Approx(0.5));
  CHECK(cfg.tracking_area() == 1.2);
  CHECK(cfg.normalization == ThroughputNormalization::TrackingArea);
}

TEST_CASE("parse errors carry line and key") {
  try {
    parse_config("seed = 3\nbandwidth = 5 parsecs\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(std::string(e.what()).find("bandwidth") != std::string::npos);
  }
  CHECK(error_code_of("no_such_key = 1\n") == Errc::ParseError);
  CHECK(error_code_of("just words\n") == Errc::ParseError);
  CHECK(error_code_of("trials = many\n") == Errc::ParseError);
  CHECK(error_code_of("trials = -4\n") == Errc::ParseError);
  CHECK(error_code_of("tx_power = 40 GHz\n") == Errc::ParseError);
  CHECK(error_code_of("seed =\n") == Errc::ParseError);
}

TEST_CASE("validation errors name the invariant") {
  try {
    parse_config("n_beams = 40\nbeamwidth_bs = 30 deg\n");
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ValidationError);
    CHECK(std::string(e.what()).find("overlap") != std::string::npos);
  }
  CHECK(error_code_of("side_lobe = 1.5\n") == Errc::ValidationError);
  CHECK(error_code_of("speed_min = 4\nspeed_max = 2\n") == Errc::ValidationError);
}

TEST_CASE("emit_config round-trips") {
  CHECK(parse_config(emit_config(ScenarioConfig{})) == ScenarioConfig{});

  Rng rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    ScenarioConfig cfg;
    cfg.carrier_freq = 1e9 + 1e11 * unit(rng);
    cfg.bandwidth = 1e6 + 1e9 * unit(rng);
    cfg.cell_radius = 10.0 + 500.0 * unit(rng);
    cfg.ues_per_beam = 1 + rng() % 40;
    cfg.beamwidth_bs = 0.01 + 0.5 * unit(rng);
    if (unit(rng) < 0.5) cfg.beamwidth_ue = 0.01 + unit(rng);
    if (unit(rng) < 0.5) cfg.tracking_area_width = cfg.beamwidth_bs * (1.0 + unit(rng));
    cfg.tx_power_dbm = 60.0 * unit(rng) - 10.0;
    cfg.side_lobe = 0.5 * unit(rng);
    cfg.shadowing_sigma_db = 15.0 * unit(rng);
    cfg.pathloss_exp = 1.5 + 2.0 * unit(rng);
    cfg.mobility.speed_max = 10.0 * unit(rng);
    cfg.mobility.speed_min = cfg.mobility.speed_max * unit(rng);
    cfg.mobility.step_duration = 0.1 + unit(rng);
    cfg.n_trials = 1 + rng() % 1000;
    cfg.seed = rng();
    cfg.normalization = unit(rng) < 0.5 ? ThroughputNormalization::Bandwidth : ThroughputNormalization::TrackingArea;
    CHECK(parse_config(emit_config(cfg)) == cfg);
  }
}

TEST_CASE("load_config") {
  const auto path = std::filesystem::temp_directory_path() / "trbt_test_config.txt";
  {
    std::ofstream out(path);
    out << "ues_per_beam = 12\nseed = 77\n";
  }
  const ScenarioConfig cfg = load_config(path);
  CHECK(cfg.ues_per_beam == 12);
  CHECK(cfg.seed == 77);
  std::filesystem::remove(path);
  try {
    load_config(path);
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IoError);
  }
}

TEST_CASE("results CSV layout") {
  const auto stats = one_point_stats();
  const std::string csv = format_results_csv(stats, kAllMechanisms);
  std::istringstream lines(csv);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == kResultsHeader);
  CHECK(rows[1].rfind("5,28000000000,", 0) == 0);
  CHECK(rows[1].find(",TRBT,") != std::string::npos);
  CHECK(rows[4].find(",MTBT,") != std::string::npos);
  for (const auto& r : rows) CHECK(std::count(r.begin(), r.end(), ',') == 9);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.back() == '\n');

  const std::vector<Mechanism> subset{Mechanism::MTBT};
  const std::string partial = format_results_csv(stats, subset);
  CHECK(std::count(partial.begin(), partial.end(), '\n') == 2);

  try {
    format_results_csv({}, kAllMechanisms);
    FAIL("expected EmptyResults");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptyResults);
  }
}

TEST_CASE("emit_results writes byte-identical files on rerun") {
  const auto dir = std::filesystem::temp_directory_path() / "trbt_emit_test";
  std::filesystem::remove_all(dir);

  RunManifest manifest;
  manifest.output_dir = dir;
  manifest.sweep = SweepSpec{{5}, {28e9}, {deg_to_rad(10.0)}};
  manifest.config.n_trials = 20;
  manifest.seed = manifest.config.seed;

  emit_results(one_point_stats(), manifest);
  const std::string csv = read_file(dir / "results.csv");
  const std::string text = read_file(dir / "manifest.txt");
  CHECK(text.find("master_seed: 1") != std::string::npos);
  CHECK(text.find("[config]") != std::string::npos);

  emit_results(one_point_stats(), manifest);
  CHECK(read_file(dir / "results.csv") == csv);
  CHECK(read_file(dir / "manifest.txt") == text);

  // The manifest's config section parses back to the run's config.
  CHECK(parse_config(text.substr(text.find("[config]") + 9)) == manifest.config);
  std::filesystem::remove_all(dir);
}
