#pragma once

#include "paircache/model.hpp"
#include "paircache/rational.hpp"

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace paircache {

// Valid threshold interval [max(0, m-L+1), min(K-L, m+1)] for a split with
// L A-requesters, 0 < L < K. Always non-empty.
std::pair<int, int> threshold_window(int K, int m, int L);

// Rate-minimizing threshold j* = ceil(m*(K-L)/K); always inside the window.
int optimal_threshold(int K, int m, int L);

// Canonical-demand delivery plan: the first L users request file A.
struct DeliveryPlan {
  int K = 0;
  int m = 0;
  int L = 0;
  int j = 0;  // 0 when L is 0 or K (no threshold involved)
  std::vector<BroadcastMessage> messages;

  std::array<std::uint64_t, 4> step_counts() const;
};

// The ordered broadcast sequence for the canonical demand. For 0 < L < K,
// j must lie in threshold_window(K, m, L):
//   step 1: uncoded A subfiles with at least j indices above L;
//   step 2: uncoded B subfiles with fewer than j indices above L;
//   step 3: XOR chains pivoted on user 1 covering A subfiles that miss it;
//   step 4: XOR chains pivoted on user L+1 covering B subfiles that miss it.
// For L = 0 or L = K every subfile of the one requested file is sent plain.
DeliveryPlan generate_messages(const ProblemInstance& inst, int L, int j);

// Plan mapped through a user relabeling back to original user indices.
// Message order and step tags are preserved; terms are re-sorted.
DeliveryPlan relabel_plan(const DeliveryPlan& plan, const DemandPermutation& perm);

// XOR of the referenced subfile blocks.
std::vector<std::uint8_t> evaluate_message(const BroadcastMessage& msg, const FilePayload& file_a,
                                           const FilePayload& file_b);

std::vector<std::vector<std::uint8_t>> evaluate_plan(const DeliveryPlan& plan,
                                                     const FilePayload& file_a,
                                                     const FilePayload& file_b);

class DecodeError : public std::runtime_error {
 public:
  DecodeError(std::string subfile, const std::string& what)
      : std::runtime_error(what), subfile_(std::move(subfile)) {}
  // Name of the subfile that could not be reconstructed, e.g. "A{1,2,3}".
  const std::string& subfile() const { return subfile_; }

 private:
  std::string subfile_;
};

// Reconstruct the full requested file for one user of the canonical demand,
// from that user's cache plus the received message blocks. Bit-exact; throws
// DecodeError naming the first unresolvable subfile.
FilePayload decode_user(int user, FileId want, const CacheContent& cache,
                        const DeliveryPlan& plan,
                        std::span<const std::vector<std::uint8_t>> received);

struct SimulationReport {
  int K = 0;
  int m = 0;
  int L = 0;                      // A-requesters after canonicalization
  std::optional<int> threshold;   // empty when L is 0 or K
  std::array<std::uint64_t, 4> step_counts{};
  std::uint64_t total_messages = 0;
  std::uint64_t total_bytes = 0;
  Rational rate;                  // total_messages / C(K,m)
  std::vector<bool> user_ok;      // original user order

  bool all_ok() const;
};

// End to end: seeded payloads, placement, canonical-space delivery with the
// optimal threshold, per-user decode, bit-exact comparison against the
// original files.
SimulationReport simulate(const ProblemInstance& inst, const Demand& demand,
                          std::uint64_t seed = kDefaultSeed);

}  // namespace paircache
