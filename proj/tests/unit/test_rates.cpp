#include "itlinq/rates.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "itlinq/channel.hpp"
#include "itlinq/itis.hpp"
#include "itlinq/rng.hpp"
#include "itlinq/scheduling.hpp"

namespace itlinq {
namespace {

SnrTable make_table(std::vector<double> snr, std::vector<double> inr) {
  SnrTable s;
  s.n = static_cast<int>(snr.size());
  s.snr = std::move(snr);
  s.inr = std::move(inr);
  return s;
}

Schedule schedule_of(std::vector<std::uint8_t> active) {
  Schedule sch;
  sch.priority.resize(active.size());
  std::iota(sch.priority.begin(), sch.priority.end(), 0);
  sch.active = std::move(active);
  return sch;
}

TEST(Sinr, SingleActiveLinkSeesPureSnr) {
  const SnrTable s = make_table({15.0, 9.0}, {0, 3, 3, 0});
  EXPECT_DOUBLE_EQ(sinr(schedule_of({1, 0}), s, 0), 15.0);
}

TEST(Sinr, OneInterfererHandValue) {
  const SnrTable s = make_table({15.0, 9.0}, {0, 3, 1, 0});
  EXPECT_DOUBLE_EQ(sinr(schedule_of({1, 1}), s, 0), 3.75);  // 15/(1+3)
}

TEST(Sinr, InactiveQueryThrows) {
  const SnrTable s = make_table({15.0}, {0.0});
  EXPECT_THROW(sinr(schedule_of({0}), s, 0), std::invalid_argument);
  EXPECT_THROW(sinr(schedule_of({1}), s, 1), std::out_of_range);
}

TEST(Sinr, AddingInterferersStrictlyDecreases) {
  const SnrTable s =
      make_table({15.0, 9.0, 4.0}, {0, 3, 2, 1, 0, 1, 1, 1, 0});
  const double alone = sinr(schedule_of({1, 0, 0}), s, 0);
  const double one = sinr(schedule_of({1, 1, 0}), s, 0);
  const double two = sinr(schedule_of({1, 1, 1}), s, 0);
  EXPECT_GT(alone, one);
  EXPECT_GT(one, two);
}

TEST(LinkRates, HandValues) {
  const SnrTable unit = make_table({1.0}, {0.0});
  const RateReport r1 = link_rates(schedule_of({1}), unit);
  EXPECT_DOUBLE_EQ(r1.per_link_bits_s_hz[0], 1.0);  // log2(2)
  EXPECT_DOUBLE_EQ(r1.sum_bits_s_hz, 1.0);

  const SnrTable s = make_table({15.0, 9.0}, {0, 3, 1, 0});
  const RateReport r2 = link_rates(schedule_of({1, 1}), s);
  EXPECT_DOUBLE_EQ(r2.per_link_bits_s_hz[0], std::log2(4.75));
  EXPECT_NEAR(r2.per_link_bits_s_hz[0], 2.2479275134435855, 1e-12);
  EXPECT_DOUBLE_EQ(r2.sum_bits_s_hz,
                   r2.per_link_bits_s_hz[0] + r2.per_link_bits_s_hz[1]);
}

TEST(LinkRates, AllInactiveIsZeroVector) {
  const SnrTable s = make_table({15.0, 9.0}, {0, 3, 1, 0});
  const RateReport r = link_rates(schedule_of({0, 0}), s);
  EXPECT_EQ(r.per_link_bits_s_hz, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(r.sum_bits_s_hz, 0.0);
}

TEST(LinkRates, NonnegativeZeroForInactiveOnRandomSchedules) {
  Rng rng(301);
  for (int it = 0; it < 50; ++it) {
    const int n = 1 + static_cast<int>(rng.below(8));
    std::vector<double> snr(n), inr(static_cast<std::size_t>(n) * n, 0.0);
    for (auto& v : snr) v = std::exp(rng.uniform(-2.0, 10.0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j)
          inr[static_cast<std::size_t>(i) * n + j] = std::exp(rng.uniform(-5.0, 8.0));
    const SnrTable s = make_table(std::move(snr), std::move(inr));
    std::vector<std::uint8_t> active(n);
    for (auto& a : active) a = static_cast<std::uint8_t>(rng.below(2));
    const RateReport r = link_rates(schedule_of(active), s);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      EXPECT_GE(r.per_link_bits_s_hz[i], 0.0);
      if (!active[i]) EXPECT_EQ(r.per_link_bits_s_hz[i], 0.0);
      total += r.per_link_bits_s_hz[i];
    }
    EXPECT_DOUBLE_EQ(r.sum_bits_s_hz, total);
  }
}

TEST(TimeSharing, HandValues) {
  const SnrTable one = make_table({1.0}, {0.0});
  EXPECT_DOUBLE_EQ(time_sharing_rate(one).sum_bits_s_hz, 1.0);

  const SnrTable two = make_table({1.0, 1.0}, {0, 1e9, 1e9, 0});
  const RateReport r = time_sharing_rate(two);
  EXPECT_DOUBLE_EQ(r.sum_bits_s_hz, 1.0);  // interference never enters
  EXPECT_DOUBLE_EQ(r.per_link_bits_s_hz[0], 0.5);
  EXPECT_THROW(time_sharing_rate(make_table({}, {})), std::invalid_argument);
}

TEST(AllOnBound, SumRateAtMostInterferenceFreeSum) {
  Rng rng(302);
  for (int it = 0; it < 50; ++it) {
    const int n = 2 + static_cast<int>(rng.below(7));
    std::vector<double> snr(n), inr(static_cast<std::size_t>(n) * n, 0.0);
    for (auto& v : snr) v = std::exp(rng.uniform(0.0, 12.0));
    const bool clean = it % 2 == 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && !clean)
          inr[static_cast<std::size_t>(i) * n + j] = std::exp(rng.uniform(-4.0, 6.0));
    const SnrTable s = make_table(snr, inr);
    const double sum = link_rates(all_on_schedule(n), s).sum_bits_s_hz;
    double free_sum = 0.0;
    for (double v : snr) free_sum += std::log2(1.0 + v);
    if (clean)
      EXPECT_DOUBLE_EQ(sum, free_sum);
    else
      EXPECT_LT(sum, free_sum);
  }
}

TEST(FractionFromCover, HandValues) {
  CoverResult cover;
  cover.kappa = 1;
  cover.classes = {{0, 1, 2, 3, 4, 5, 6, 7}};
  const FractionReport f = fraction_from_cover(cover, 8);
  EXPECT_DOUBLE_EQ(f.lambda, 1.0);
  EXPECT_DOUBLE_EQ(f.gap_bits, std::log2(24.0));
  EXPECT_NEAR(f.gap_bits, 4.584962500721156, 1e-12);

  CoverResult tdma;
  tdma.kappa = 8;
  const FractionReport g = fraction_from_cover(tdma, 8);
  EXPECT_DOUBLE_EQ(g.lambda, 0.125);
  EXPECT_DOUBLE_EQ(g.gap_bits * g.kappa, std::log2(24.0));

  CoverResult bad;
  bad.kappa = 0;
  EXPECT_THROW(fraction_from_cover(bad, 8), std::invalid_argument);
}

TEST(FractionFromCover, ExactDominatesGreedyAndFloor) {
  Rng rng(303);
  for (int it = 0; it < 40; ++it) {
    const int n = 2 + static_cast<int>(rng.below(5));
    std::vector<double> snr(n), inr(static_cast<std::size_t>(n) * n, 0.0);
    for (auto& v : snr) v = std::exp(rng.uniform(0.0, 14.0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j)
          inr[static_cast<std::size_t>(i) * n + j] =
              std::exp(rng.uniform(-3.0, 9.0));
    const SnrTable s = make_table(std::move(snr), std::move(inr));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    const FractionReport greedy =
        fraction_from_cover(greedy_itis_cover(s, order), n);
    const FractionReport exact = fraction_from_cover(exact_itis_cover(s), n);
    EXPECT_GE(exact.lambda, greedy.lambda);
    EXPECT_GE(greedy.lambda, 1.0 / n);  // singletons keep kappa <= n
    EXPECT_GT(exact.lambda, 0.0);
    EXPECT_LE(exact.lambda, 1.0);
  }
}

TEST(EmpiricalCdf, HandShapes) {
  const auto unit = empirical_cdf({5.0});
  ASSERT_EQ(unit.size(), 1u);
  EXPECT_EQ(unit[0], (std::pair<double, double>{5.0, 1.0}));

  const auto quarters = empirical_cdf({4.0, 1.0, 3.0, 2.0});
  ASSERT_EQ(quarters.size(), 4u);
  EXPECT_EQ(quarters[1], (std::pair<double, double>{2.0, 0.5}));

  const auto dup = empirical_cdf({1.0, 1.0, 2.0});
  ASSERT_EQ(dup.size(), 2u);
  EXPECT_EQ(dup[0], (std::pair<double, double>{1.0, 2.0 / 3.0}));
  EXPECT_EQ(dup[1], (std::pair<double, double>{2.0, 1.0}));

  EXPECT_THROW(empirical_cdf({}), std::invalid_argument);
}

TEST(EmpiricalCdf, SortedNondecreasingEndsAtOne) {
  Rng rng(304);
  std::vector<double> samples(257);
  for (auto& v : samples) v = rng.gaussian(0.0, 3.0);
  const auto cdf = empirical_cdf(samples);
  for (std::size_t k = 1; k < cdf.size(); ++k) {
    EXPECT_LT(cdf[k - 1].first, cdf[k].first);
    EXPECT_LE(cdf[k - 1].second, cdf[k].second);
  }
  EXPECT_DOUBLE_EQ(cdf.back().second, 1.0);
  EXPECT_GT(cdf.front().second, 0.0);
}

}  // namespace
}  // namespace itlinq
