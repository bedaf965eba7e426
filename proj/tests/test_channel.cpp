#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "swipt/channel.hpp"
#include "swipt/errors.hpp"

using namespace swipt;

TEST_CASE("rayleigh sampling is deterministic under a fixed seed") {
  Rng a(7), b(7);
  const auto g1 = sample_rayleigh(4, a, 1.0);
  const auto g2 = sample_rayleigh(4, b, 1.0);
  REQUIRE(g1.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(g1[k] == g2[k]);
  }
}

TEST_CASE("rayleigh sample power matches the requested mean") {
  SUBCASE("across subcarriers") {
    Rng rng(123);
    const auto g = sample_rayleigh(10000, rng, 1.0);
    double mean = 0.0;
    for (const auto& h : g) mean += std::norm(h);
    mean /= static_cast<double>(g.size());
    CHECK(mean == doctest::Approx(1.0).epsilon(0.05));
  }
  SUBCASE("across draws of a single subcarrier") {
    Rng rng(9);
    double mean = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
      mean += std::norm(sample_rayleigh(1, rng, 2.0)[0]);
    }
    mean /= draws;
    CHECK(mean == doctest::Approx(2.0).epsilon(0.05));
  }
}

TEST_CASE("rayleigh sampling rejects invalid parameters") {
  Rng rng(1);
  CHECK_THROWS_AS(sample_rayleigh(0, rng, 1.0), ParameterError);
  CHECK_THROWS_AS(sample_rayleigh(4, rng, 0.0), ParameterError);
  CHECK_THROWS_AS(sample_rayleigh(4, rng, -1.0), ParameterError);
}

TEST_CASE("channel construction validates its invariants") {
  const std::vector<std::complex<double>> g{{1.0, 0.0}, {0.5, 0.5}};
  CHECK_NOTHROW(ChannelRealization(15e3, 1e-4, g, {0.5, 1.0}));
  CHECK_THROWS_AS(ChannelRealization(0.0, 1e-4, g, {0.5, 0.5}), ParameterError);
  CHECK_THROWS_AS(ChannelRealization(15e3, 0.0, g, {0.5, 0.5}), ParameterError);
  CHECK_THROWS_AS(ChannelRealization(15e3, 1e-4, g, {0.5}), ParameterError);
  CHECK_THROWS_AS(ChannelRealization(15e3, 1e-4, g, {0.5, 1.5}), ParameterError);
  CHECK_THROWS_AS(ChannelRealization(15e3, 1e-4, g, {0.5, 0.0}), ParameterError);
  CHECK_THROWS_AS(ChannelRealization(15e3, 1e-4, {}, {}), ParameterError);
  const std::vector<std::complex<double>> bad{{1.0, 0.0},
                                              {std::nan(""), 0.0}};
  CHECK_THROWS_AS(ChannelRealization(15e3, 1e-4, bad, {0.5, 0.5}), ParameterError);
}

TEST_CASE("compute_metrics evaluates capacity, harvest and snr") {
  SUBCASE("zero channel gives zero capacity and harvest") {
    ChannelRealization ch(15e3, 1e-3, {{0.0, 0.0}}, {0.5});
    const auto m = compute_metrics(ch, PowerVector::uniform(1, 2e-3));
    CHECK(m.capacities_bps[0] == 0.0);
    CHECK(m.harvests_w[0] == 0.0);
    CHECK(m.snrs[0] == doctest::Approx(2.0));
  }
  SUBCASE("unit |H|^2 gamma gives exactly B bits per second") {
    // gamma = 1 with |H| = 1 makes log2(1 + 1) = 1.
    ChannelRealization ch(15000.0, 1e-3, {{1.0, 0.0}}, {0.5});
    const auto m = compute_metrics(ch, PowerVector::uniform(1, 1e-3));
    CHECK(m.capacities_bps[0] == doctest::Approx(15000.0).epsilon(1e-12));
  }
  SUBCASE("harvest is eta |H|^2 P") {
    ChannelRealization ch(15e3, 1e-3, {{1.0, 0.0}}, {0.5});
    const auto m = compute_metrics(ch, PowerVector::uniform(1, 2e-3));
    CHECK(m.harvests_w[0] == doctest::Approx(1e-3).epsilon(1e-12));
  }
  SUBCASE("length mismatch is rejected") {
    ChannelRealization ch(15e3, 1e-3, {{1.0, 0.0}}, {0.5});
    CHECK_THROWS_AS(compute_metrics(ch, PowerVector::uniform(2, 1e-3)),
                    ParameterError);
  }
  SUBCASE("negative power is rejected") {
    ChannelRealization ch(15e3, 1e-3, {{1.0, 0.0}}, {0.5});
    CHECK_THROWS_AS(compute_metrics(ch, PowerVector{{-1.0}}), ParameterError);
  }
}

TEST_CASE("totals split capacity and harvest by the mask") {
  SubcarrierMetrics m;
  m.capacities_bps = {3.0, 2.0, 1.0};
  m.harvests_w = {5.0, 5.0, 5.0};
  m.snrs = {1.0, 1.0, 1.0};

  SUBCASE("all information") {
    const auto t = totals(m, AllocationMask::all_information(3));
    CHECK(t.capacity_bps == doctest::Approx(6.0));
    CHECK(t.harvested_w == 0.0);
  }
  SUBCASE("all harvest") {
    const auto t = totals(m, AllocationMask::all_harvest(3));
    CHECK(t.capacity_bps == 0.0);
    CHECK(t.harvested_w == doctest::Approx(15.0));
  }
  SUBCASE("mixed mask") {
    const auto t = totals(m, AllocationMask{{1, 0, 1}});
    CHECK(t.capacity_bps == doctest::Approx(4.0));
    CHECK(t.harvested_w == doctest::Approx(5.0));
  }
  SUBCASE("length mismatch is rejected") {
    CHECK_THROWS_AS(totals(m, AllocationMask::all_information(2)),
                    ParameterError);
  }
}

TEST_CASE("mask complement and index helpers") {
  const AllocationMask mask{{1, 0, 1, 0}};
  const AllocationMask comp = mask.complement();
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(comp.bits[k] == 1 - mask.bits[k]);
  }
  CHECK(mask.info_count() == 2);
  CHECK(mask.harvest_count() == 2);
  CHECK(mask.info_indices() == std::vector<std::size_t>{0, 2});
  CHECK(mask.harvest_indices() == std::vector<std::size_t>{1, 3});
  CHECK(mask.to_string() == "1010");
}

TEST_CASE("metric properties over random draws") {
  Rng rng(2024);
  for (int rep = 0; rep < 50; ++rep) {
    const auto ch = make_rayleigh_channel(8, 15e3, 1e-4, 0.5, rng);
    const PowerVector p = PowerVector::uniform(8, 2e-3);
    const auto m = compute_metrics(ch, p);

    // Monotonicity: more power on one subcarrier never hurts.
    PowerVector boosted = p;
    boosted.watts[3] *= 2.0;
    const auto mb = compute_metrics(ch, boosted);
    CHECK(mb.capacities_bps[3] >= m.capacities_bps[3]);
    if (ch.power_gain(3) > 0.0) {
      CHECK(mb.harvests_w[3] > m.harvests_w[3]);
    }

    // Additivity: a mask and its complement partition the totals.
    AllocationMask mask = AllocationMask::all_harvest(8);
    for (std::size_t k = 0; k < 8; k += 2) mask.bits[k] = 1;
    const auto t1 = totals(m, mask);
    const auto t2 = totals(m, mask.complement());
    CHECK(t1.capacity_bps + t2.capacity_bps ==
          doctest::Approx(m.total_capacity()).epsilon(1e-12));
    CHECK(t1.harvested_w + t2.harvested_w ==
          doctest::Approx(m.total_harvest()).epsilon(1e-12));

    // Halving the noise raises every positive-gain capacity, harvest unchanged.
    ChannelRealization quieter(ch.bandwidth_hz, ch.noise_variance_w / 2.0,
                               ch.gains, ch.efficiencies);
    const auto mq = compute_metrics(quieter, p);
    for (std::size_t k = 0; k < 8; ++k) {
      if (ch.power_gain(k) > 0.0) {
        CHECK(mq.capacities_bps[k] > m.capacities_bps[k]);
      }
      CHECK(mq.harvests_w[k] == doctest::Approx(m.harvests_w[k]).epsilon(1e-15));
    }
  }
}
