#include "trbt/tracking.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "trbt/error.hpp"

namespace trbt {

std::string_view to_string(Mechanism m) noexcept {
  switch (m) {
    case Mechanism::TRBT: return "TRBT";
    case Mechanism::WoBT: return "WoBT";
    case Mechanism::MNBT: return "MNBT";
    case Mechanism::MTBT: return "MTBT";
  }
  return "?";
}

std::optional<Mechanism> mechanism_from_string(std::string_view name) noexcept {
  const auto iequal = [](std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
             return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
  };
  for (Mechanism m : kAllMechanisms) {
    if (iequal(name, to_string(m))) return m;
  }
  return std::nullopt;
}

bool tr_rank_less(const TrackingMetrics& lhs, const TrackingMetrics& rhs) noexcept {
  if (lhs.all_covered() != rhs.all_covered()) return rhs.all_covered();
  if (lhs.all_covered()) return lhs.throughput < rhs.throughput;
  return lhs.tr < rhs.tr;
}

std::vector<CandidateSet> enumerate_maximal_sets(const OrderedUeRing& ring, double beamwidth) {
  if (ring.empty()) throw Error(Errc::EmptyRing, "enumerate_maximal_sets: ring has no UEs");

  const auto gaps = ring.gaps();
  const std::size_t n = ring.size();
  std::vector<CandidateSet> sets;
  sets.reserve(n);
  for (std::size_t a = 0; a < n; ++a) {
    double span = 0.0;
    std::size_t c = a;
    while (c + 1 < n && span + gaps[c] <= beamwidth) {
      span += gaps[c];
      ++c;
    }
    CandidateSet set;
    set.start = a;
    set.end = c;
    set.covered_count = c - a + 1;
    set.span = span;
    set.direction = ring.bisector(a, c);
    sets.push_back(set);
  }
  return sets;
}

namespace {

double handoff_probability(std::size_t covered, std::size_t population) {
  const std::size_t lost = covered >= population ? 0 : population - covered;
  return static_cast<double>(lost) / static_cast<double>(population);
}

double tr_value(double throughput, double handoff_prob, double total_throughput) {
  if (handoff_prob == 0.0) return kAllCovered;
  if (throughput == 0.0) return 0.0;
  if (!(total_throughput > 0.0)) {
    throw Error(Errc::ZeroTotalThroughput, "TR needs a positive total throughput");
  }
  return (throughput / total_throughput) / handoff_prob;
}

TrackingDecision decide(Mechanism mechanism, const CandidateSet& chosen) {
  return {mechanism, chosen, chosen.direction, {chosen.throughput, chosen.handoff_prob, chosen.tr}};
}

template <typename Better>
const CandidateSet& pick(std::span<const CandidateSet> candidates, const char* who, Better better) {
  if (candidates.empty()) throw Error(Errc::NoCandidates, std::string(who) + ": empty candidate list");
  const CandidateSet* best = &candidates.front();
  for (const auto& c : candidates.subspan(1)) {
    if (better(c, *best)) best = &c;
  }
  return *best;
}

}  // namespace

CandidateSet score_set(CandidateSet set, std::span<const double> capacities, std::size_t population,
                       double total_throughput) {
  if (population == 0) throw Error(Errc::ZeroPopulation, "score_set: previous UE count m is 0");
  if (!(total_throughput > 0.0)) throw Error(Errc::ZeroTotalThroughput, "score_set: total throughput is 0");
  if (set.end >= capacities.size() || set.start > set.end) {
    throw std::out_of_range("score_set: window exceeds capacity list");
  }

  double throughput = 0.0;
  for (std::size_t j = set.start; j <= set.end; ++j) throughput += capacities[j];

  set.throughput = throughput;
  set.handoff_prob = handoff_probability(set.covered_count, population);
  set.tr = tr_value(throughput, set.handoff_prob, total_throughput);
  return set;
}

std::vector<CandidateSet> score_sets(std::span<const CandidateSet> sets, std::span<const double> capacities,
                                     std::size_t population, double total_throughput) {
  std::vector<CandidateSet> scored;
  scored.reserve(sets.size());
  for (const auto& s : sets) scored.push_back(score_set(s, capacities, population, total_throughput));
  return scored;
}

TrackingDecision select_trbt(std::span<const CandidateSet> candidates) {
  const auto& best = pick(candidates, "select_trbt", [](const CandidateSet& x, const CandidateSet& y) {
    if (x.all_covered() != y.all_covered()) return x.all_covered();
    const double vx = x.all_covered() ? x.throughput : x.tr;
    const double vy = y.all_covered() ? y.throughput : y.tr;
    if (vx != vy) return vx > vy;
    if (x.start != y.start) return x.start < y.start;
    return x.end > y.end;
  });
  return decide(Mechanism::TRBT, best);
}

TrackingDecision select_mnbt(std::span<const CandidateSet> candidates) {
  const auto& best = pick(candidates, "select_mnbt", [](const CandidateSet& x, const CandidateSet& y) {
    if (x.covered_count != y.covered_count) return x.covered_count > y.covered_count;
    if (x.throughput != y.throughput) return x.throughput > y.throughput;
    return x.start < y.start;
  });
  return decide(Mechanism::MNBT, best);
}

TrackingDecision select_mtbt(std::span<const CandidateSet> candidates) {
  const auto& best = pick(candidates, "select_mtbt", [](const CandidateSet& x, const CandidateSet& y) {
    if (x.throughput != y.throughput) return x.throughput > y.throughput;
    if (x.handoff_prob != y.handoff_prob) return x.handoff_prob < y.handoff_prob;
    return x.start < y.start;
  });
  return decide(Mechanism::MTBT, best);
}

TrackingDecision evaluate_wobt(double prev_direction, double beamwidth, std::span<const TrackedUe> ues,
                               std::size_t population, double total_throughput) {
  if (population == 0) throw Error(Errc::ZeroPopulation, "evaluate_wobt: previous UE count m is 0");

  const Sector beam(prev_direction, beamwidth);
  std::size_t covered = 0;
  double throughput = 0.0;
  for (const auto& ue : ues) {
    if (beam.contains(ue.position)) {
      ++covered;
      throughput += ue.capacity;
    }
  }

  TrackingMetrics metrics;
  metrics.throughput = throughput;
  metrics.handoff_prob = handoff_probability(covered, population);
  metrics.tr = covered == 0 ? 0.0 : tr_value(throughput, metrics.handoff_prob, total_throughput);
  return {Mechanism::WoBT, std::nullopt, beam.center(), metrics};
}

}  // namespace trbt
