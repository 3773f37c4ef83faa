#pragma once

#include "paircache/combinatorics.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace paircache {

inline constexpr std::uint64_t kDefaultSeed = 0xC0DEDCACull;

enum class FileId : std::uint8_t { A = 0, B = 1 };

constexpr FileId other_file(FileId f) { return f == FileId::A ? FileId::B : FileId::A; }
constexpr char file_char(FileId f) { return f == FileId::A ? 'A' : 'B'; }

// Two files of C(K,m) subfiles each, K users with cache budget M = m/K files.
class ProblemInstance {
 public:
  ProblemInstance(int num_users, int cache_param, std::size_t subfile_bytes = 1);

  int K() const { return num_users_; }
  int m() const { return cache_param_; }
  std::size_t subfile_bytes() const { return subfile_bytes_; }
  std::uint64_t num_subfiles() const;     // C(K, m)
  std::uint64_t cached_per_user() const;  // C(K-1, m-1)

 private:
  int num_users_;
  int cache_param_;
  std::size_t subfile_bytes_;
};

// Per-user file requests, e.g. parse("AABBBB"). Users are 1-based.
class Demand {
 public:
  explicit Demand(std::vector<FileId> requests);
  static Demand parse(const std::string& s);

  int size() const { return static_cast<int>(requests_.size()); }
  FileId of_user(int user) const;
  int count_a() const;
  const std::vector<FileId>& requests() const { return requests_; }
  std::string to_string() const;

  friend bool operator==(const Demand&, const Demand&) = default;

 private:
  std::vector<FileId> requests_;
};

// Stable relabeling that sends the A-requesters to positions 1..L and the
// B-requesters to L+1..K, preserving relative order within each group.
struct DemandPermutation {
  std::vector<int> to_canonical;  // index user-1 -> canonical user (1-based)
  std::vector<int> to_original;   // index canon-1 -> original user (1-based)
  int num_a = 0;                  // L

  int canonical_user(int original) const { return to_canonical.at(original - 1); }
  int original_user(int canonical) const { return to_original.at(canonical - 1); }
  Subset map_subset(const Subset& s, const std::vector<int>& mapping) const;
  Subset to_canonical_subset(const Subset& s) const { return map_subset(s, to_canonical); }
  Subset to_original_subset(const Subset& s) const { return map_subset(s, to_original); }
};

DemandPermutation canonicalize_demand(const Demand& d);

// One file's payload: block_count blocks of block_size bytes, indexed by
// colex rank of the subfile index.
class FilePayload {
 public:
  FilePayload() = default;
  FilePayload(std::uint64_t block_count, std::size_t block_size);

  std::uint64_t block_count() const { return block_count_; }
  std::size_t block_size() const { return block_size_; }
  std::span<const std::uint8_t> block(std::uint64_t r) const;
  std::span<std::uint8_t> block(std::uint64_t r);

  friend bool operator==(const FilePayload&, const FilePayload&) = default;

 private:
  std::uint64_t block_count_ = 0;
  std::size_t block_size_ = 0;
  std::vector<std::uint8_t> data_;
};

// Deterministic payloads: one mt19937_64 stream fills file A then file B.
std::pair<FilePayload, FilePayload> seeded_payload_pair(std::uint64_t block_count,
                                                        std::size_t block_size,
                                                        std::uint64_t seed);

// Payload reindexed through a user relabeling: the block at the rank of the
// mapped index equals the input block at the rank of the index.
FilePayload relabel_payload(const FilePayload& p, const std::vector<int>& mapping, int K, int m);

struct MessageTerm {
  FileId file;
  Subset index;

  friend constexpr auto operator<=>(const MessageTerm&, const MessageTerm&) = default;
  std::string to_string() const { return std::string(1, file_char(file)) + index.to_string(); }
};

// XOR of subfiles, tagged with the delivery step (1..4) that produced it.
// Terms are kept sorted; duplicate pairs cancel. A message may not cancel
// to nothing.
class BroadcastMessage {
 public:
  BroadcastMessage(std::vector<MessageTerm> terms, int step);

  const std::vector<MessageTerm>& terms() const { return terms_; }
  int step() const { return step_; }
  std::string to_string() const;  // "B{4,5,6} + B{3,5,6} + ..."

  friend bool operator==(const BroadcastMessage&, const BroadcastMessage&) = default;

 private:
  std::vector<MessageTerm> terms_;
  int step_;
};

// One user's cache: blocks of A_T ^ B_T keyed by colex rank of T.
class CacheContent {
 public:
  CacheContent(int user, std::size_t block_size, std::uint64_t rank_space);

  void insert(std::uint64_t rank, std::span<const std::uint8_t> block);

  int user() const { return user_; }
  std::size_t block_size() const { return block_size_; }
  std::uint64_t size() const { return ranks_.size(); }
  bool has(std::uint64_t rank) const;
  std::span<const std::uint8_t> block(std::uint64_t rank) const;
  const std::vector<std::uint64_t>& ranks() const { return ranks_; }

 private:
  int user_;
  std::size_t block_size_;
  std::vector<std::uint64_t> ranks_;
  std::vector<std::uint8_t> blocks_;
  std::vector<std::int64_t> slot_of_rank_;  // -1 = absent
};

}  // namespace paircache
