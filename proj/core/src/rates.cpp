#include "paircache/rates.hpp"

#include "paircache/combinatorics.hpp"
#include "paircache/delivery.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace paircache {

const char* to_string(PointSource s) {
  switch (s) {
    case PointSource::Scheme:
      return "scheme";
    case PointSource::MnBaseline:
      return "mn-baseline";
    case PointSource::Chen:
      return "chen";
    case PointSource::Endpoint:
      return "endpoint";
    case PointSource::HullVertex:
      return "hull-vertex";
  }
  return "?";
}

namespace {

// Messages in the two coded delivery steps, as bounded sums of binomial
// products; a lower bound above its upper bound contributes nothing.
std::uint64_t coded_message_count(int K, int m, int L, int j) {
  std::uint64_t step3 = 0;
  for (int i = std::max(0, m - L + 1); i <= std::min(j - 1, K - L); ++i)
    step3 += binom(K - L, i) * binom(L - 1, m - i);
  std::uint64_t step4 = 0;
  for (int i = std::max(j, m - L); i <= std::min(m, K - L - 1); ++i)
    step4 += binom(K - L - 1, i) * binom(L, m - i);
  return step3 + step4;
}

}  // namespace

Rational rate_with_threshold(int K, int m, int L, int j) {
  const auto [lo, hi] = threshold_window(K, m, L);
  if (j < lo || j > hi)
    throw std::invalid_argument("rate_with_threshold: threshold outside window");
  const std::uint64_t extra = coded_message_count(K, m, L, j);
  return Rational(1) + Rational(BigInt(extra), BigInt(binom(K, m)));
}

Rational rate_for_split(int K, int m, int L) {
  return rate_with_threshold(K, m, L, optimal_threshold(K, m, L));
}

Rational worst_case_rate(int K, int m) {
  if (K < 2 || K > kMaxGroundSize || m < 1 || m > K - 1)
    throw std::invalid_argument("worst_case_rate: bad (K,m)");
  Rational best = 1;
  for (int L = 1; L <= K - 1; ++L) best = max(best, rate_for_split(K, m, L));
  return best;
}

Rational mn_baseline_rate(int K, const Rational& M) {
  if (K < 2) throw std::invalid_argument("mn_baseline_rate: K must be at least 2");
  if (M < Rational(0) || M > Rational(2))
    throw std::invalid_argument("mn_baseline_rate: M outside [0,2]");
  const Rational t = M * Rational(K) / Rational(2);
  if (!t.is_integer())
    throw std::invalid_argument("mn_baseline_rate: M off the baseline grid 2t/K");
  const Rational inv_coded = Rational(1) / (Rational(1) + t);
  return Rational(K) * (Rational(1) - M / Rational(2)) * min(inv_coded, Rational(2, K));
}

RatePoint chen_point(int K) {
  if (K < 2) throw std::invalid_argument("chen_point: K must be at least 2");
  return {Rational(1, K), Rational(2 * std::int64_t{K} - 2, K), PointSource::Chen};
}

Rational cutset_lower_bound(int K, const Rational& M) {
  if (K < 2) throw std::invalid_argument("cutset_lower_bound: K must be at least 2");
  if (M < Rational(0) || M > Rational(2))
    throw std::invalid_argument("cutset_lower_bound: M outside [0,2]");
  Rational best = 0;
  best = max(best, Rational(2) - Rational(2) * M);
  best = max(best, Rational(1) - M / Rational(2));
  return best;
}

std::vector<RatePoint> achievable_points(int K) {
  if (K < 2 || K > kMaxGroundSize)
    throw std::invalid_argument("achievable_points: K must be in 2..64");
  std::vector<RatePoint> pts;
  pts.reserve(2 * K);
  for (int m = 1; m <= K - 1; ++m)
    pts.push_back({Rational(m, K), worst_case_rate(K, m), PointSource::Scheme});
  for (int t = 0; t <= K; ++t) {
    const Rational M(2 * t, K);
    pts.push_back({M, mn_baseline_rate(K, M),
                   t == 0 ? PointSource::Endpoint : PointSource::MnBaseline});
  }
  return pts;
}

namespace {

int source_preference(PointSource s) {
  switch (s) {
    case PointSource::Scheme:
      return 0;
    case PointSource::MnBaseline:
      return 1;
    case PointSource::Chen:
      return 2;
    case PointSource::Endpoint:
      return 3;
    case PointSource::HullVertex:
      return 4;
  }
  return 5;
}

// Sign of the cross product (b-a) x (c-a); positive = strict left turn.
int cross_sign(const RatePoint& a, const RatePoint& b, const RatePoint& c) {
  const BigInt p = b.M.num() * a.M.den() - a.M.num() * b.M.den();   // (bx-ax) * axd*bxd
  const BigInt q = c.R.num() * a.R.den() - a.R.num() * c.R.den();   // (cy-ay) * ayd*cyd
  const BigInt r = b.R.num() * a.R.den() - a.R.num() * b.R.den();   // (by-ay) * ayd*byd
  const BigInt s = c.M.num() * a.M.den() - a.M.num() * c.M.den();   // (cx-ax) * axd*cxd
  const BigInt lhs = p * q * (c.M.den() * b.R.den());
  const BigInt rhs = r * s * (b.M.den() * c.R.den());
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

}  // namespace

std::vector<RatePoint> lower_hull(std::span<const RatePoint> points) {
  if (points.empty()) throw std::invalid_argument("lower_hull: no points");
  std::vector<RatePoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), [](const RatePoint& a, const RatePoint& b) {
    if (a.M != b.M) return a.M < b.M;
    if (a.R != b.R) return a.R < b.R;
    return source_preference(a.source) < source_preference(b.source);
  });
  // keep one point per M: the lowest (scheme wins exact ties)
  std::vector<RatePoint> uniq;
  for (const auto& p : sorted)
    if (uniq.empty() || uniq.back().M != p.M) uniq.push_back(p);

  if (uniq.size() <= 2) return uniq;
  std::vector<RatePoint> hull;
  for (const auto& p : uniq) {
    // pop until the chain turns strictly left; collinear points drop too
    while (hull.size() >= 2 && cross_sign(hull[hull.size() - 2], hull.back(), p) <= 0)
      hull.pop_back();
    hull.push_back(p);
  }
  return hull;
}

Rational hull_value_at(std::span<const RatePoint> hull, const Rational& M) {
  if (hull.empty()) throw std::invalid_argument("hull_value_at: empty hull");
  if (M < hull.front().M || M > hull.back().M)
    throw std::invalid_argument("hull_value_at: M outside hull range");
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[i + 1];
    if (M > b.M) continue;
    if (M == a.M) return a.R;
    if (M == b.M) return b.R;
    return a.R + (b.R - a.R) * (M - a.M) / (b.M - a.M);
  }
  return hull.back().R;
}

std::uint64_t min_file_size_k10(int m) {
  if (m < 4 || m > 9) throw std::invalid_argument("min_file_size_k10: m must be in 4..9");
  const std::uint64_t p = 7ull * (12 - m);
  const std::uint64_t q = static_cast<std::uint64_t>(m - 3);
  const std::uint64_t g = std::gcd(p, q);
  return binom(10, 3) * (p / g) + binom(10, 6) * (q / g);
}

std::uint64_t min_file_size_interpolated(const MemorySharingEndpoint& left,
                                         const MemorySharingEndpoint& right,
                                         const Rational& target_M) {
  if (left.granularity == 0 || right.granularity == 0)
    throw std::invalid_argument("min_file_size_interpolated: zero granularity");
  if (!(left.M < target_M && target_M < right.M))
    throw std::invalid_argument(
        "min_file_size_interpolated: target M outside the open endpoint interval");
  const Rational g1(static_cast<std::int64_t>(left.granularity));
  const Rational g2(static_cast<std::int64_t>(right.granularity));
  const Rational ratio =
      (g2 * right.M * (right.M - target_M)) / (g1 * left.M * (target_M - left.M));
  // ratio = l : l' reduced; total file size g1*l + g2*l'
  const BigInt total = BigInt(left.granularity) * ratio.num() +
                       BigInt(right.granularity) * ratio.den();
  if (total > BigInt(std::numeric_limits<std::uint64_t>::max()))
    throw std::overflow_error("min_file_size_interpolated: result exceeds uint64");
  return total.convert_to<std::uint64_t>();
}

}  // namespace paircache
