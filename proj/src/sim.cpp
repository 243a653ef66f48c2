#include "trbt/sim.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "trbt/error.hpp"

namespace trbt {

std::string_view to_string(ThroughputNormalization n) noexcept {
  switch (n) {
    case ThroughputNormalization::Bandwidth: return "bandwidth";
    case ThroughputNormalization::TrackingArea: return "tracking_area";
  }
  return "?";
}

ChannelParams ScenarioConfig::channel() const {
  return {carrier_freq, bandwidth, pathloss_exp, shadowing_sigma_db, noise_density_dbm_hz};
}

void ScenarioConfig::validate() const {
  const auto fail = [](const std::string& what) { throw Error(Errc::ValidationError, what); };

  if (!(carrier_freq > 0.0)) fail("carrier_freq must be > 0");
  if (!(bandwidth > 0.0)) fail("bandwidth must be > 0");
  if (!(cell_radius > kMinUeRadius)) fail("cell_radius must exceed the 1 m minimum UE distance");
  if (ues_per_beam == 0) fail("ues_per_beam must be >= 1");
  if (!(beamwidth_bs > 0.0) || beamwidth_bs > kTwoPi) fail("beamwidth_bs must be in (0, 360 deg]");
  if (!(ue_beamwidth() > 0.0) || ue_beamwidth() > kTwoPi) fail("beamwidth_ue must be in (0, 360 deg]");
  if (!std::isfinite(tx_power_dbm)) fail("tx_power must be finite");
  if (!(side_lobe >= 0.0) || !(side_lobe < 1.0)) fail("side_lobe must be a linear gain in [0, 1)");
  if (!std::isfinite(noise_density_dbm_hz)) fail("noise_density must be finite");
  if (!(shadowing_sigma_db >= 0.0)) fail("shadowing_sigma must be >= 0");
  if (!(pathloss_exp > 0.0)) fail("pathloss_exp must be > 0");
  if (n_beams == 0) fail("n_beams must be >= 1");
  if (static_cast<double>(n_beams) * beamwidth_bs > kTwoPi * (1.0 + 1e-12)) {
    fail("beams overlap: n_beams x beamwidth_bs exceeds 360 deg");
  }
  const double area = tracking_area();
  if (!(area >= beamwidth_bs) || !(area < kTwoPi)) {
    fail("tracking_area_width must be at least beamwidth_bs and below 360 deg");
  }
  if (n_trials == 0) fail("trials must be >= 1");
  try {
    mobility.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

ScenarioConfig at_point(const ScenarioConfig& cfg, const SweepPoint& point) {
  ScenarioConfig out = cfg;
  out.ues_per_beam = point.m;
  out.carrier_freq = point.carrier_freq;
  out.beamwidth_bs = point.beamwidth;
  return out;
}

double reported_tr(const TrialResult& trial, Mechanism mech) {
  const MechanismOutcome& o = trial[mech];
  if (!o.metrics().all_covered()) return o.tr;
  if (!(trial.total_throughput > 0.0)) return 0.0;
  const double floor_p = 1.0 / (2.0 * static_cast<double>(trial.m));
  return (o.throughput / trial.total_throughput) / floor_p;
}

namespace {

MechanismOutcome outcome_of(const TrackingDecision& d) {
  MechanismOutcome o;
  o.throughput = d.metrics.throughput;
  o.handoff_prob = d.metrics.handoff_prob;
  o.tr = d.metrics.tr;
  o.covered = d.chosen ? d.chosen->covered_count : 0;
  o.direction = d.new_direction;
  return o;
}

}  // namespace

TrialResult run_drop(const ScenarioConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Rng rng(seed);

  const ChannelParams channel = cfg.channel();
  const AntennaPattern bs_pattern(cfg.beamwidth_bs, cfg.side_lobe);
  const AntennaPattern ue_pattern(cfg.ue_beamwidth(), cfg.side_lobe);
  const std::size_t m = cfg.ues_per_beam;

  // Beam 0 is tracked; the rest stay fixed and only interfere.
  std::vector<BeamConfig> beams;
  beams.reserve(cfg.n_beams);
  for (std::size_t k = 0; k < cfg.n_beams; ++k) {
    const double direction = kTwoPi * static_cast<double>(k) / static_cast<double>(cfg.n_beams);
    beams.push_back({static_cast<BeamId>(k), normalize_angle(direction), bs_pattern, cfg.tx_power_dbm});
  }
  const double prev_direction = beams.front().direction;
  const std::span<const BeamConfig> interferers = std::span<const BeamConfig>(beams).subspan(1);

  const Sector initial_beam(prev_direction, cfg.beamwidth_bs);
  std::vector<PolarPoint> positions;
  positions.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    positions.push_back(uniform_sector_point(rng, initial_beam, kMinUeRadius, cfg.cell_radius));
  }
  for (auto& p : positions) p = step(p, cfg.mobility, cfg.cell_radius, rng);

  const std::vector<double> shadows = sample_shadowing(rng, cfg.shadowing_sigma_db, m * cfg.n_beams);

  const Sector area(prev_direction, cfg.tracking_area());
  std::vector<TrackedUe> tracked;
  std::vector<PositionedUe> in_area;
  for (std::size_t j = 0; j < m; ++j) {
    if (!area.interior_contains(positions[j])) continue;
    const std::span<const double> ue_shadows(shadows.data() + j * cfg.n_beams, cfg.n_beams);
    // Capacity the UE gets once the tracked beam covers it: serving gain at boresight.
    const BeamConfig aimed{beams.front().id, positions[j].angle(), bs_pattern, cfg.tx_power_dbm};
    const LinkShadowing link_shadows{ue_shadows.front(), ue_shadows.subspan(1)};
    const double c = evaluate_link(aimed, positions[j], interferers, ue_pattern, channel, link_shadows).capacity;
    tracked.push_back({static_cast<UeId>(j), positions[j], c});
    in_area.push_back({static_cast<UeId>(j), positions[j]});
  }

  TrialResult result;
  result.seed = seed;
  result.m = m;
  result.n = tracked.size();

  if (tracked.empty()) {
    const MechanismOutcome lost{0.0, 1.0, 0.0, 0, prev_direction};
    result.outcomes.fill(lost);
    result.total_throughput = cfg.normalization == ThroughputNormalization::Bandwidth ? cfg.bandwidth : 0.0;
    return result;
  }

  // Everything downstream works in ring order so that every mechanism sums
  // the same capacities in the same order.
  const OrderedUeRing ring = order_ues(in_area, area);
  std::vector<TrackedUe> by_ring;
  std::vector<double> capacities;
  by_ring.reserve(ring.size());
  capacities.reserve(ring.size());
  for (const auto& entry : ring.entries()) {
    const auto it = std::find_if(tracked.begin(), tracked.end(), [&](const TrackedUe& t) { return t.id == entry.id; });
    by_ring.push_back(*it);
    capacities.push_back(it->capacity);
  }

  if (cfg.normalization == ThroughputNormalization::Bandwidth) {
    result.total_throughput = cfg.bandwidth;
  } else {
    result.total_throughput = std::accumulate(capacities.begin(), capacities.end(), 0.0);
  }
  if (!(result.total_throughput > 0.0)) {
    // Every capacity underflowed to zero; nothing can be scored.
    result.outcomes.fill({0.0, 1.0, 0.0, 0, prev_direction});
    return result;
  }

  const auto windows = enumerate_maximal_sets(ring, cfg.beamwidth_bs);
  const auto scored = score_sets(windows, capacities, m, result.total_throughput);

  result[Mechanism::TRBT] = outcome_of(select_trbt(scored));
  result[Mechanism::MNBT] = outcome_of(select_mnbt(scored));
  result[Mechanism::MTBT] = outcome_of(select_mtbt(scored));
  const TrackingDecision wobt = evaluate_wobt(prev_direction, cfg.beamwidth_bs, by_ring, m, result.total_throughput);
  MechanismOutcome& w = result[Mechanism::WoBT];
  w = outcome_of(wobt);
  w.covered = static_cast<std::size_t>(std::count_if(by_ring.begin(), by_ring.end(), [&](const TrackedUe& t) {
    return initial_beam.contains(t.position);
  }));
  return result;
}

std::uint64_t trial_seed(std::uint64_t master_seed, const SweepPoint& point, std::size_t trial) {
  const auto width_bits = std::bit_cast<std::uint64_t>(point.beamwidth);
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(point.m), static_cast<std::uint32_t>(width_bits),
                    static_cast<std::uint32_t>(width_bits >> 32), static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(trial) >> 32)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

MetricStats summarize(std::span<const double> values) {
  if (values.empty()) throw Error(Errc::EmptyTrials, "summarize: no values");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) return {*lo, 0.0};

  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  return {mean, 1.96 * sd / std::sqrt(n)};
}

AggregateStats aggregate(std::span<const TrialResult> trials, const SweepPoint& point) {
  if (trials.empty()) throw Error(Errc::EmptyTrials, "aggregate: no trials");

  AggregateStats stats;
  stats.point = point;
  stats.n_trials = trials.size();
  std::vector<double> tr, throughput, handoff;
  for (Mechanism mech : kAllMechanisms) {
    tr.clear();
    throughput.clear();
    handoff.clear();
    std::size_t all_covered = 0;
    for (const auto& t : trials) {
      tr.push_back(reported_tr(t, mech));
      throughput.push_back(t[mech].throughput);
      handoff.push_back(t[mech].handoff_prob);
      if (t[mech].metrics().all_covered()) ++all_covered;
    }
    MechanismStats& s = stats.mechanisms[static_cast<std::size_t>(mech)];
    s.tr = summarize(tr);
    s.throughput = summarize(throughput);
    s.handoff_prob = summarize(handoff);
    s.all_covered_drops = all_covered;
  }
  return stats;
}

std::vector<TrialResult> run_point(const ScenarioConfig& cfg, const SweepPoint& point, unsigned workers) {
  const ScenarioConfig point_cfg = at_point(cfg, point);
  point_cfg.validate();

  const std::size_t n = point_cfg.n_trials;
  std::vector<TrialResult> results(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = run_drop(point_cfg, trial_seed(cfg.seed, point, i));
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };

  const unsigned threads = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::vector<SweepPoint> SweepSpec::points() const {
  std::vector<SweepPoint> out;
  out.reserve(carrier_freqs.size() * beamwidths.size() * m_values.size());
  for (double f : carrier_freqs)
    for (double w : beamwidths)
      for (std::size_t m : m_values) out.push_back({m, f, w});
  return out;
}

std::vector<AggregateStats> run_sweep(const ScenarioConfig& cfg, const SweepSpec& sweep, unsigned workers) {
  std::vector<AggregateStats> stats;
  for (const SweepPoint& point : sweep.points()) {
    const auto trials = run_point(cfg, point, workers);
    stats.push_back(aggregate(trials, point));
  }
  return stats;
}

}  // namespace trbt
