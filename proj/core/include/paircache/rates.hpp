#pragma once

#include "paircache/rational.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace paircache {

enum class PointSource : std::uint8_t { Scheme, MnBaseline, Chen, Endpoint, HullVertex };

const char* to_string(PointSource s);

struct RatePoint {
  Rational M;
  Rational R;
  PointSource source = PointSource::Scheme;

  friend bool operator==(const RatePoint&, const RatePoint&) = default;
};

// Worst-case delivery rate at split L with threshold j: 1 plus the coded
// steps' message counts over C(K,m). j must lie in threshold_window(K,m,L).
Rational rate_with_threshold(int K, int m, int L, int j);

// Rate at the optimal threshold for split L.
Rational rate_for_split(int K, int m, int L);

// Worst case over all splits L in 1..K-1; at least 1.
Rational worst_case_rate(int K, int m);

// Maddah-Ali-Niesen two-file baseline rate K(1-M/2)*min{1/(1+MK/2), 2/K}.
// M must sit on the baseline grid 2t/K, t integer in 0..K.
Rational mn_baseline_rate(int K, const Rational& M);

// The (1/K, 2(K-1)/K) point of Chen's scheme; coincides with m=1.
RatePoint chen_point(int K);

// Classical two-file cut-set bound max(2-2M, 1-M/2, 0).
Rational cutset_lower_bound(int K, const Rational& M);

// Scheme points (m/K, worst_case_rate) for m=1..K-1 plus baseline points
// (2t/K, mn_baseline_rate) for t=0..K; the t=0 point (0,2) is tagged as the
// endpoint. 2K points total.
std::vector<RatePoint> achievable_points(int K);

// Vertices of the lower convex envelope, increasing M, exact arithmetic.
// Coincident M keeps the smaller R (scheme preferred on exact ties);
// collinear interior points are dropped. Source tags are preserved.
std::vector<RatePoint> lower_hull(std::span<const RatePoint> points);

// Envelope height at M, interpolated exactly between hull vertices.
Rational hull_value_at(std::span<const RatePoint> hull, const Rational& M);

// Minimum file size for memory sharing between the K=10 scheme endpoints
// M=3/10 and M=12/10, at target M=m/10:
//   binom(10,3)*7(12-m)/g + binom(10,6)*(m-3)/g,  g = gcd(7(12-m), m-3).
std::uint64_t min_file_size_k10(int m);

struct MemorySharingEndpoint {
  Rational M;
  std::uint64_t granularity = 0;  // subfile count the endpoint scheme needs
};

// Generalized form of the K=10 derivation: split the file as g1*l + g2*l'
// with l/l' the reduced cache-split proportion
//   g2*Mr*(Mr-Mt) : g1*Ml*(Mt-Ml),
// and return the minimal total g1*l + g2*l'.
std::uint64_t min_file_size_interpolated(const MemorySharingEndpoint& left,
                                         const MemorySharingEndpoint& right,
                                         const Rational& target_M);

}  // namespace paircache
