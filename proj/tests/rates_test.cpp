#include "paircache/rates.hpp"

#include "paircache/combinatorics.hpp"
#include "paircache/delivery.hpp"

#include <gtest/gtest.h>

#include <stdexcept>
#include <vector>

namespace paircache {
namespace {

TEST(RateFormula, ThresholdRateKnownValues) {
  EXPECT_EQ(rate_with_threshold(6, 3, 2, 2), Rational(27, 20));
  EXPECT_EQ(rate_with_threshold(6, 3, 2, 3), Rational(27, 20));  // flat across the tie
  EXPECT_EQ(rate_with_threshold(6, 3, 2, 4), Rational(3, 2));
  EXPECT_THROW(rate_with_threshold(6, 3, 2, 1), std::invalid_argument);
  EXPECT_THROW(rate_with_threshold(6, 3, 2, 5), std::invalid_argument);
}

TEST(RateFormula, WorstCaseKnownValues) {
  EXPECT_EQ(worst_case_rate(6, 3), Rational(27, 20));
  EXPECT_EQ(worst_case_rate(10, 1), Rational(9, 5));
  EXPECT_EQ(worst_case_rate(10, 3), Rational(63, 40));
  EXPECT_EQ(worst_case_rate(16, 1), Rational(15, 8));
  EXPECT_EQ(worst_case_rate(16, 3), Rational(97, 56));
  EXPECT_EQ(worst_case_rate(16, 5), Rational(331, 208));
  for (int K = 2; K <= 12; ++K) EXPECT_EQ(worst_case_rate(K, K - 1), Rational(1));
  EXPECT_THROW(worst_case_rate(1, 1), std::invalid_argument);
  EXPECT_THROW(worst_case_rate(6, 0), std::invalid_argument);
  EXPECT_THROW(worst_case_rate(6, 6), std::invalid_argument);
}

TEST(RateFormula, OptimalThresholdMinimizesOverTheWindow) {
  for (int K = 2; K <= 20; ++K)
    for (int m = 1; m < K; ++m)
      for (int L = 1; L < K; ++L) {
        const auto [lo, hi] = threshold_window(K, m, L);
        Rational best = rate_with_threshold(K, m, L, lo);
        for (int j = lo + 1; j <= hi; ++j) best = min(best, rate_with_threshold(K, m, L, j));
        ASSERT_EQ(rate_for_split(K, m, L), best) << "K=" << K << " m=" << m << " L=" << L;
      }
}

TEST(Baseline, KnownValuesAndGrid) {
  EXPECT_EQ(mn_baseline_rate(10, Rational(0)), Rational(2));
  EXPECT_EQ(mn_baseline_rate(10, Rational(6, 5)), Rational(4, 7));
  EXPECT_EQ(mn_baseline_rate(10, Rational(2)), Rational(0));
  EXPECT_EQ(mn_baseline_rate(5, Rational(4, 5)), Rational(1));
  EXPECT_THROW(mn_baseline_rate(10, Rational(1, 10)), std::invalid_argument);
  EXPECT_THROW(mn_baseline_rate(10, Rational(-1, 5)), std::invalid_argument);
  EXPECT_THROW(mn_baseline_rate(10, Rational(21, 10)), std::invalid_argument);
  EXPECT_EQ(mn_baseline_rate(5, Rational(2, 5)), Rational(8, 5));
}

TEST(Baseline, SchemePointsDominate) {
  for (int K = 2; K <= 20; ++K)
    for (int t = 1; 2 * t <= K - 1; ++t) {
      const int m = 2 * t;
      const Rational scheme = worst_case_rate(K, m);
      const Rational base = mn_baseline_rate(K, Rational(m, K));
      ASSERT_LE(scheme, base) << "K=" << K << " m=" << m;
      if (!(K % 2 == 1 && m == K - 1))
        ASSERT_LT(scheme, base) << "K=" << K << " m=" << m;
      else
        ASSERT_EQ(scheme, base) << "K=" << K << " m=" << m;
    }
}

TEST(Chen, MatchesSingleUnitScheme) {
  const RatePoint p = chen_point(10);
  EXPECT_EQ(p.M, Rational(1, 10));
  EXPECT_EQ(p.R, Rational(9, 5));
  EXPECT_EQ(p.source, PointSource::Chen);
  EXPECT_EQ(chen_point(2).R, Rational(1));
  for (int K = 2; K <= 12; ++K) {
    EXPECT_EQ(chen_point(K).M, Rational(1, K));
    EXPECT_EQ(chen_point(K).R, worst_case_rate(K, 1));
  }
}

TEST(Cutset, PiecewiseValues) {
  EXPECT_EQ(cutset_lower_bound(10, Rational(0)), Rational(2));
  EXPECT_EQ(cutset_lower_bound(10, Rational(1, 2)), Rational(1));
  EXPECT_EQ(cutset_lower_bound(10, Rational(2, 3)), Rational(2, 3));  // both arms meet
  EXPECT_EQ(cutset_lower_bound(10, Rational(6, 5)), Rational(2, 5));
  EXPECT_EQ(cutset_lower_bound(10, Rational(2)), Rational(0));
  EXPECT_THROW(cutset_lower_bound(10, Rational(-1)), std::invalid_argument);
  EXPECT_THROW(cutset_lower_bound(10, Rational(5, 2)), std::invalid_argument);
}

TEST(Cutset, StaysBelowEveryAchievablePoint) {
  for (int K = 2; K <= 20; ++K)
    for (const RatePoint& p : achievable_points(K))
      ASSERT_LE(cutset_lower_bound(K, p.M), p.R) << "K=" << K << " M=" << p.M.to_string();
}

TEST(AchievablePoints, CountsAndTags) {
  const auto pts = achievable_points(10);
  ASSERT_EQ(pts.size(), 20u);
  int scheme = 0, baseline = 0, endpoint = 0;
  for (const auto& p : pts) {
    switch (p.source) {
      case PointSource::Scheme:
        ++scheme;
        break;
      case PointSource::MnBaseline:
        ++baseline;
        break;
      case PointSource::Endpoint:
        ++endpoint;
        EXPECT_EQ(p.M, Rational(0));
        EXPECT_EQ(p.R, Rational(2));
        break;
      default:
        FAIL() << "unexpected tag";
    }
  }
  EXPECT_EQ(scheme, 9);
  EXPECT_EQ(baseline, 10);
  EXPECT_EQ(endpoint, 1);
  EXPECT_EQ(pts[0], (RatePoint{Rational(1, 10), Rational(9, 5), PointSource::Scheme}));
  EXPECT_EQ(pts.back(), (RatePoint{Rational(2), Rational(0), PointSource::MnBaseline}));
}

TEST(LowerHull, TenUserEnvelope) {
  const auto pts = achievable_points(10);
  const auto hull = lower_hull(pts);
  const std::vector<RatePoint> want{
      {Rational(0), Rational(2), PointSource::Endpoint},
      {Rational(1, 10), Rational(9, 5), PointSource::Scheme},
      {Rational(3, 10), Rational(63, 40), PointSource::Scheme},
      {Rational(6, 5), Rational(4, 7), PointSource::MnBaseline},
      {Rational(7, 5), Rational(3, 8), PointSource::MnBaseline},
      {Rational(8, 5), Rational(2, 9), PointSource::MnBaseline},
      {Rational(9, 5), Rational(1, 10), PointSource::MnBaseline},
      {Rational(2), Rational(0), PointSource::MnBaseline},
  };
  EXPECT_EQ(hull, want);
}

TEST(LowerHull, SixteenUserSchemeVertices) {
  const auto hull = lower_hull(achievable_points(16));
  std::vector<Rational> scheme_m;
  for (const auto& p : hull)
    if (p.source == PointSource::Scheme && Rational(0) < p.M && p.M < Rational(1))
      scheme_m.push_back(p.M);
  EXPECT_EQ(scheme_m, (std::vector<Rational>{{1, 16}, {3, 16}, {5, 16}}));
}

TEST(LowerHull, TwentyThreeUserSchemeVertices) {
  const auto hull = lower_hull(achievable_points(23));
  std::vector<RatePoint> scheme;
  for (const auto& p : hull)
    if (p.source == PointSource::Scheme && Rational(0) < p.M && p.M < Rational(1))
      scheme.push_back(p);
  ASSERT_EQ(scheme.size(), 4u);
  EXPECT_EQ(scheme[0].M, Rational(1, 23));
  EXPECT_EQ(scheme[0].R, Rational(44, 23));
  EXPECT_EQ(scheme[1].M, Rational(4, 23));
  EXPECT_EQ(scheme[1].R, Rational(284, 161));
  EXPECT_EQ(scheme[2].M, Rational(5, 23));
  EXPECT_EQ(scheme[2].R, Rational(5245, 3059));
  EXPECT_EQ(scheme[3].M, Rational(6, 23));
  EXPECT_EQ(scheme[3].R, Rational(5095, 3059));
}

TEST(LowerHull, DropsCollinearAndDuplicatePoints) {
  const std::vector<RatePoint> collinear{
      {Rational(0), Rational(2), PointSource::Endpoint},
      {Rational(1), Rational(1), PointSource::Scheme},
      {Rational(2), Rational(0), PointSource::MnBaseline},
  };
  const auto hull = lower_hull(collinear);
  ASSERT_EQ(hull.size(), 2u);
  EXPECT_EQ(hull[0].M, Rational(0));
  EXPECT_EQ(hull[1].M, Rational(2));

  const std::vector<RatePoint> dupes{
      {Rational(0), Rational(2), PointSource::Endpoint},
      {Rational(1), Rational(3, 2), PointSource::MnBaseline},
      {Rational(1), Rational(1, 2), PointSource::MnBaseline},
      {Rational(2), Rational(0), PointSource::Endpoint},
  };
  const auto hull2 = lower_hull(dupes);
  ASSERT_EQ(hull2.size(), 3u);
  EXPECT_EQ(hull2[1].R, Rational(1, 2));
}

TEST(LowerHull, ExactTiePrefersSchemeTag) {
  const std::vector<RatePoint> pts{
      {Rational(0), Rational(2), PointSource::Endpoint},
      {Rational(1), Rational(1, 2), PointSource::MnBaseline},
      {Rational(1), Rational(1, 2), PointSource::Scheme},
      {Rational(2), Rational(0), PointSource::Endpoint},
  };
  const auto hull = lower_hull(pts);
  ASSERT_EQ(hull.size(), 3u);
  EXPECT_EQ(hull[1].source, PointSource::Scheme);
}

TEST(LowerHull, DegenerateInputs) {
  EXPECT_THROW(lower_hull({}), std::invalid_argument);
  const std::vector<RatePoint> one{{Rational(1), Rational(1), PointSource::Scheme}};
  EXPECT_EQ(lower_hull(one).size(), 1u);
  const std::vector<RatePoint> two{{Rational(0), Rational(2), PointSource::Endpoint},
                                   {Rational(2), Rational(0), PointSource::Endpoint}};
  EXPECT_EQ(lower_hull(two).size(), 2u);
}

TEST(LowerHull, IsAValidEnvelope) {
  for (int K = 2; K <= 20; ++K) {
    const auto pts = achievable_points(K);
    const auto hull = lower_hull(pts);
    ASSERT_GE(hull.size(), 2u);
    EXPECT_EQ(hull.front().M, Rational(0));
    EXPECT_EQ(hull.front().R, Rational(2));
    EXPECT_EQ(hull.back().M, Rational(2));
    EXPECT_EQ(hull.back().R, Rational(0));
    // strictly increasing M, strictly increasing slopes (true vertices only)
    for (std::size_t i = 1; i < hull.size(); ++i) ASSERT_LT(hull[i - 1].M, hull[i].M);
    for (std::size_t i = 2; i < hull.size(); ++i) {
      const Rational s1 = (hull[i - 1].R - hull[i - 2].R) / (hull[i - 1].M - hull[i - 2].M);
      const Rational s2 = (hull[i].R - hull[i - 1].R) / (hull[i].M - hull[i - 1].M);
      ASSERT_LT(s1, s2) << "K=" << K;
    }
    // never above any input point
    for (const auto& p : pts)
      ASSERT_LE(hull_value_at(hull, p.M), p.R) << "K=" << K << " M=" << p.M.to_string();
  }
}

TEST(HullValue, InterpolatesExactly) {
  const auto hull = lower_hull(achievable_points(10));
  EXPECT_EQ(hull_value_at(hull, Rational(0)), Rational(2));
  EXPECT_EQ(hull_value_at(hull, Rational(3, 10)), Rational(63, 40));
  EXPECT_EQ(hull_value_at(hull, Rational(1, 20)), Rational(19, 10));
  EXPECT_EQ(hull_value_at(hull, Rational(3, 4)), Rational(601, 560));
  EXPECT_EQ(hull_value_at(hull, Rational(2)), Rational(0));
  EXPECT_THROW(hull_value_at(hull, Rational(-1, 10)), std::invalid_argument);
  EXPECT_THROW(hull_value_at(hull, Rational(21, 10)), std::invalid_argument);
}

TEST(FileSize, TenUserSharingValues) {
  EXPECT_EQ(min_file_size_k10(4), 6930u);
  EXPECT_EQ(min_file_size_k10(5), 6300u);
  EXPECT_EQ(min_file_size_k10(6), 1890u);
  EXPECT_EQ(min_file_size_k10(7), 5040u);
  EXPECT_EQ(min_file_size_k10(8), 4410u);
  EXPECT_EQ(min_file_size_k10(9), 1260u);
  EXPECT_THROW(min_file_size_k10(3), std::invalid_argument);
  EXPECT_THROW(min_file_size_k10(10), std::invalid_argument);
  // every value buys at least one whole block of each endpoint scheme
  for (int m = 4; m <= 9; ++m)
    EXPECT_GE(min_file_size_k10(m), binom(10, 3) + binom(10, 6));
}

TEST(FileSize, InterpolatedFormReproducesTenUserCase) {
  const MemorySharingEndpoint left{Rational(3, 10), binom(10, 3)};
  const MemorySharingEndpoint right{Rational(6, 5), binom(10, 6)};
  for (int m = 4; m <= 9; ++m)
    EXPECT_EQ(min_file_size_interpolated(left, right, Rational(m, 10)), min_file_size_k10(m));
}

TEST(FileSize, BalancedSplitUsesOneBlockPerEndpoint) {
  const MemorySharingEndpoint left{Rational(1, 2), 5};
  const MemorySharingEndpoint right{Rational(1), 7};
  EXPECT_EQ(min_file_size_interpolated(left, right, Rational(33, 38)), 12u);
}

TEST(FileSize, InterpolatedValidation) {
  const MemorySharingEndpoint left{Rational(1, 2), 5};
  const MemorySharingEndpoint right{Rational(1), 7};
  EXPECT_THROW(min_file_size_interpolated(left, right, Rational(1, 2)), std::invalid_argument);
  EXPECT_THROW(min_file_size_interpolated(left, right, Rational(1)), std::invalid_argument);
  EXPECT_THROW(min_file_size_interpolated(left, right, Rational(2)), std::invalid_argument);
  EXPECT_THROW(min_file_size_interpolated({Rational(1, 2), 0}, right, Rational(3, 4)),
               std::invalid_argument);
  const MemorySharingEndpoint big_l{Rational(1, 2), 1ull << 62};
  const MemorySharingEndpoint big_r{Rational(1), 1ull << 62};
  EXPECT_THROW(min_file_size_interpolated(big_l, big_r, Rational(513, 1024)),
               std::overflow_error);
}

TEST(PointSourceNames, Strings) {
  EXPECT_STREQ(to_string(PointSource::Scheme), "scheme");
  EXPECT_STREQ(to_string(PointSource::MnBaseline), "mn-baseline");
  EXPECT_STREQ(to_string(PointSource::Chen), "chen");
  EXPECT_STREQ(to_string(PointSource::Endpoint), "endpoint");
  EXPECT_STREQ(to_string(PointSource::HullVertex), "hull-vertex");
}

}  // namespace
}  // namespace paircache
