#include <doctest.h>

#include <random>
#include <vector>

#include "oracle.hpp"
#include "trbt/error.hpp"
#include "trbt/tracking.hpp"

using namespace trbt;

namespace {

OrderedUeRing ring_from_gaps_deg(const std::vector<double>& gaps_deg) {
  const Sector area(0.0, deg_to_rad(170.0));
  std::vector<PositionedUe> ues;
  double offset = 1.0;
  ues.push_back({0, PolarPoint(area.clockwise_edge() + deg_to_rad(offset), 40.0)});
  for (std::size_t j = 0; j < gaps_deg.size(); ++j) {
    offset += gaps_deg[j];
    ues.push_back({static_cast<UeId>(j + 1), PolarPoint(area.clockwise_edge() + deg_to_rad(offset), 40.0)});
  }
  return order_ues(ues, area);
}

CandidateSet candidate(std::size_t start, std::size_t end, double throughput, double handoff, double tr) {
  CandidateSet c;
  c.start = start;
  c.end = end;
  c.covered_count = end - start + 1;
  c.throughput = throughput;
  c.handoff_prob = handoff;
  c.tr = tr;
  return c;
}

struct Instance {
  OrderedUeRing ring;
  std::vector<double> capacities;
  std::size_t m;
  double total;
  double beamwidth;
};

Instance random_instance(Rng& rng) {
  const double beamwidth = deg_to_rad(std::uniform_real_distribution<double>(5.0, 40.0)(rng));
  const Sector area(std::uniform_real_distribution<double>(0.0, kTwoPi)(rng), 3.0 * beamwidth);
  const std::size_t n = 1 + rng() % 20;
  std::vector<PositionedUe> ues;
  std::vector<double> capacities;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    ues.push_back({static_cast<UeId>(j), uniform_sector_point(rng, area, 1.0, 200.0)});
  }
  // Some coincident UEs to exercise zero gaps.
  if (n > 2 && unit(rng) < 0.2) ues[1].position = ues[0].position;
  auto ring = order_ues(ues, area);
  for (std::size_t j = 0; j < n; ++j) capacities.push_back(unit(rng) < 0.05 ? 0.0 : 1e9 * unit(rng));
  // Mostly m >= n; sometimes UEs wandered in, so m < n.
  const std::size_t m = unit(rng) < 0.2 ? 1 + rng() % n : n + rng() % 4;
  double total = 0.0;
  for (double c : capacities) total += c;
  if (total == 0.0) total = 1.0;
  return {std::move(ring), std::move(capacities), m, total, beamwidth};
}

}  // namespace

TEST_CASE("enumerate_maximal_sets") {
  SUBCASE("worked example") {
    const auto ring = ring_from_gaps_deg({5.0, 8.0, 20.0, 3.0});
    const auto sets = enumerate_maximal_sets(ring, deg_to_rad(15.0));
    REQUIRE(sets.size() == 5);
    const std::vector<std::pair<std::size_t, std::size_t>> expected{{0, 2}, {1, 2}, {2, 2}, {3, 4}, {4, 4}};
    for (std::size_t i = 0; i < sets.size(); ++i) {
      CHECK(sets[i].start == expected[i].first);
      CHECK(sets[i].end == expected[i].second);
      CHECK(sets[i].covered_count == expected[i].second - expected[i].first + 1);
    }
    CHECK(rad_to_deg(sets[0].span) == doctest::Approx(13.0));
    CHECK(rad_to_deg(sets[3].span) == doctest::Approx(3.0));
  }
  SUBCASE("single UE") {
    const auto sets = enumerate_maximal_sets(ring_from_gaps_deg({}), deg_to_rad(10.0));
    REQUIRE(sets.size() == 1);
    CHECK(sets[0].covered_count == 1);
    CHECK(sets[0].span == 0.0);
  }
  SUBCASE("co-located UEs fit in one window") {
    const auto sets = enumerate_maximal_sets(ring_from_gaps_deg({0, 0, 0, 0, 0, 0}), deg_to_rad(10.0));
    CHECK(sets.front().covered_count == 7);
  }
  SUBCASE("isolated last UE forms its own maximal window") {
    const auto sets = enumerate_maximal_sets(ring_from_gaps_deg({2.0, 30.0}), deg_to_rad(10.0));
    CHECK(sets.back().start == 2);
    CHECK(sets.back().end == 2);
  }
  SUBCASE("direction bisects the window extremes") {
    const auto ring = ring_from_gaps_deg({4.0, 6.0});
    const auto sets = enumerate_maximal_sets(ring, deg_to_rad(20.0));
    const double first = ring.entries()[0].position.angle();
    CHECK(angular_distance(sets[0].direction, first + deg_to_rad(5.0)) < 1e-12);
  }
  SUBCASE("empty ring") {
    const OrderedUeRing empty(Sector(0.0, 1.0), {});
    CHECK_THROWS_AS(enumerate_maximal_sets(empty, 0.5), Error);
  }
}

TEST_CASE("enumerated windows are feasible and right-maximal") {
  Rng rng(1234);
  for (int i = 0; i < 500; ++i) {
    const Instance inst = random_instance(rng);
    const auto sets = enumerate_maximal_sets(inst.ring, inst.beamwidth);
    CHECK(sets.size() == inst.ring.size());
    for (const auto& s : sets) {
      CHECK(s.span <= inst.beamwidth);
      CHECK(s.span == inst.ring.span(s.start, s.end));
      if (s.end + 1 < inst.ring.size()) CHECK(inst.ring.span(s.start, s.end + 1) > inst.beamwidth);
    }
  }
}

TEST_CASE("score_set") {
  const std::vector<double> caps{2.0, 2.0, 2.0, 2.0, 1.0, 1.0};

  SUBCASE("m=10, four covered, 80% of throughput") {
    const auto s = score_set(candidate(0, 3, 0, 0, 0), caps, 10, 10.0);
    CHECK(s.throughput == doctest::Approx(8.0));
    CHECK(s.handoff_prob == doctest::Approx(0.6));
    CHECK(s.tr == doctest::Approx(4.0 / 3.0));
  }
  SUBCASE("m=5, two covered, half the throughput") {
    const auto s = score_set(candidate(4, 5, 0, 0, 0), caps, 5, 4.0);
    CHECK(s.handoff_prob == doctest::Approx(0.6));
    CHECK(s.tr == doctest::Approx(0.5 / 0.6));
  }
  SUBCASE("all covered") {
    const auto s = score_set(candidate(0, 5, 0, 0, 0), caps, 6, 10.0);
    CHECK(s.handoff_prob == 0.0);
    CHECK(s.all_covered());
  }
  SUBCASE("incoming UEs clamp the handoff probability at zero") {
    const auto s = score_set(candidate(0, 5, 0, 0, 0), caps, 4, 10.0);
    CHECK(s.handoff_prob == 0.0);
    CHECK(s.all_covered());
  }
  SUBCASE("errors") {
    try {
      score_set(candidate(0, 1, 0, 0, 0), caps, 10, 0.0);
      FAIL("expected ZeroTotalThroughput");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ZeroTotalThroughput);
    }
    try {
      score_set(candidate(0, 1, 0, 0, 0), caps, 0, 1.0);
      FAIL("expected ZeroPopulation");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ZeroPopulation);
    }
  }
}

TEST_CASE("select_trbt") {
  SUBCASE("argmax TR") {
    const std::vector<CandidateSet> c{candidate(0, 0, 1, 0.5, 1.2), candidate(1, 1, 1, 0.5, 3.4),
                                      candidate(2, 2, 1, 0.5, 0.9)};
    CHECK(select_trbt(c).chosen->start == 1);
  }
  SUBCASE("ALL_COVERED outranks finite TR, then throughput decides") {
    const std::vector<CandidateSet> c{candidate(0, 0, 9, 0.5, 1000.0), candidate(1, 3, 2, 0.0, kAllCovered),
                                      candidate(2, 4, 3, 0.0, kAllCovered)};
    const auto d = select_trbt(c);
    CHECK(d.chosen->start == 2);
    CHECK(d.metrics.all_covered());
  }
  SUBCASE("ties go to the smaller start") {
    const std::vector<CandidateSet> c{candidate(0, 1, 1, 0.5, 2.0), candidate(3, 4, 1, 0.5, 2.0)};
    CHECK(select_trbt(c).chosen->start == 0);
  }
  SUBCASE("new direction is the chosen window's bisector") {
    auto a = candidate(0, 1, 1, 0.5, 2.0);
    a.direction = 1.25;
    const std::vector<CandidateSet> c{a};
    const auto d = select_trbt(c);
    CHECK(d.mechanism == Mechanism::TRBT);
    CHECK(d.new_direction == 1.25);
  }
  CHECK_THROWS_AS(select_trbt({}), Error);
}

TEST_CASE("select_mnbt") {
  const std::vector<CandidateSet> c{candidate(0, 2, 50, 0.7, 1), candidate(1, 5, 10, 0.5, 1),
                                    candidate(2, 6, 12, 0.5, 1)};
  CHECK(select_mnbt(c).chosen->start == 2);
  const std::vector<CandidateSet> one{candidate(0, 0, 1, 0.9, 1)};
  CHECK(select_mnbt(one).chosen->start == 0);
  const std::vector<CandidateSet> two{candidate(0, 1, 9, 0.8, 1), candidate(1, 4, 1, 0.6, 1)};
  CHECK(select_mnbt(two).chosen->start == 1);
  CHECK_THROWS_AS(select_mnbt({}), Error);
}

TEST_CASE("select_mtbt") {
  const std::vector<CandidateSet> c{candidate(0, 0, 1e9, 0.5, 1), candidate(1, 1, 3e9, 0.5, 1),
                                    candidate(2, 2, 2e9, 0.5, 1)};
  CHECK(select_mtbt(c).chosen->start == 1);
  const std::vector<CandidateSet> tie{candidate(0, 0, 1e9, 0.4, 1), candidate(1, 2, 1e9, 0.2, 1)};
  CHECK(select_mtbt(tie).chosen->start == 1);
  const std::vector<CandidateSet> one{candidate(3, 3, 5, 0.5, 1)};
  CHECK(select_mtbt(one).chosen->start == 3);
  CHECK_THROWS_AS(select_mtbt({}), Error);
}

TEST_CASE("evaluate_wobt") {
  const double width = deg_to_rad(10.0);
  const auto ue = [](UeId id, double deg, double cap) { return TrackedUe{id, PolarPoint(deg_to_rad(deg), 50.0), cap}; };

  SUBCASE("nobody left in the old beam") {
    const std::vector<TrackedUe> ues{ue(0, 12.0, 5.0), ue(1, -9.0, 5.0)};
    const auto d = evaluate_wobt(0.0, width, ues, 2, 10.0);
    CHECK(d.metrics.throughput == 0.0);
    CHECK(d.metrics.handoff_prob == 1.0);
    CHECK(d.metrics.tr == 0.0);
    CHECK(!d.chosen);
  }
  SUBCASE("everyone still inside") {
    const std::vector<TrackedUe> ues{ue(0, 1.0, 5.0), ue(1, -4.0, 5.0)};
    const auto d = evaluate_wobt(0.0, width, ues, 2, 10.0);
    CHECK(d.metrics.handoff_prob == 0.0);
    CHECK(d.metrics.all_covered());
    CHECK(d.new_direction == 0.0);
  }
  SUBCASE("three of six inside") {
    const std::vector<TrackedUe> ues{ue(0, 1.0, 1.0), ue(1, 2.0, 1.0), ue(2, 3.0, 1.0),
                                     ue(3, 8.0, 1.0), ue(4, 9.0, 1.0), ue(5, 10.0, 1.0)};
    const auto d = evaluate_wobt(0.0, width, ues, 6, 6.0);
    CHECK(d.metrics.handoff_prob == doctest::Approx(0.5));
    CHECK(d.metrics.tr == doctest::Approx(1.0));
  }
}

TEST_CASE("select_trbt matches the brute-force oracle") {
  Rng rng(777);
  for (int i = 0; i < 1000; ++i) {
    const Instance inst = random_instance(rng);
    const auto scored = score_sets(enumerate_maximal_sets(inst.ring, inst.beamwidth), inst.capacities, inst.m,
                                   inst.total);
    const auto decision = select_trbt(scored);
    const auto expected =
        oracle::best(oracle::all_feasible_windows(inst.ring.gaps(), inst.capacities, inst.m, inst.total, inst.beamwidth));
    REQUIRE(decision.chosen);
    CHECK(decision.chosen->start == expected.first);
    CHECK(decision.chosen->end == expected.last);
    if (expected.all_covered) {
      CHECK(decision.metrics.all_covered());
      CHECK(decision.metrics.throughput == expected.throughput);
    } else {
      CHECK(decision.metrics.tr == expected.tr);
    }
  }
}

TEST_CASE("selection properties") {
  Rng rng(4321);
  for (int i = 0; i < 1000; ++i) {
    const Instance inst = random_instance(rng);
    const auto sets = enumerate_maximal_sets(inst.ring, inst.beamwidth);
    const auto scored = score_sets(sets, inst.capacities, inst.m, inst.total);
    const auto trbt = select_trbt(scored);
    const auto mnbt = select_mnbt(scored);
    const auto mtbt = select_mtbt(scored);

    for (const auto& c : scored) {
      CHECK(mnbt.metrics.handoff_prob <= c.handoff_prob);
      CHECK(mtbt.metrics.throughput >= c.throughput);
    }
    CHECK_FALSE(tr_rank_less(trbt.metrics, mnbt.metrics));
    CHECK_FALSE(tr_rank_less(trbt.metrics, mtbt.metrics));
    for (const auto* d : {&trbt, &mnbt, &mtbt}) CHECK(d->chosen->span <= inst.beamwidth);

    // Rescaling T_total rescales TR but never moves the argmax.
    const double k = std::uniform_real_distribution<double>(1e-3, 1e3)(rng);
    const auto rescaled = select_trbt(score_sets(sets, inst.capacities, inst.m, inst.total * k));
    CHECK(rescaled.chosen->start == trbt.chosen->start);
    CHECK(rescaled.chosen->end == trbt.chosen->end);
  }
}

TEST_CASE("mechanism names round-trip") {
  for (Mechanism m : kAllMechanisms) CHECK(mechanism_from_string(to_string(m)) == m);
  CHECK(mechanism_from_string("trbt") == Mechanism::TRBT);
  CHECK_FALSE(mechanism_from_string("best"));
}
