#include "paircache/model.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace paircache {

ProblemInstance::ProblemInstance(int num_users, int cache_param, std::size_t subfile_bytes)
    : num_users_(num_users), cache_param_(cache_param), subfile_bytes_(subfile_bytes) {
  if (num_users < 2 || num_users > kMaxGroundSize)
    throw std::invalid_argument("ProblemInstance: K must be in 2..64");
  if (cache_param < 1 || cache_param > num_users - 1)
    throw std::invalid_argument("ProblemInstance: m must be in 1..K-1");
  if (subfile_bytes == 0)
    throw std::invalid_argument("ProblemInstance: subfile_bytes must be positive");
}

std::uint64_t ProblemInstance::num_subfiles() const { return binom(num_users_, cache_param_); }

std::uint64_t ProblemInstance::cached_per_user() const {
  return binom(num_users_ - 1, cache_param_ - 1);
}

Demand::Demand(std::vector<FileId> requests) : requests_(std::move(requests)) {
  if (requests_.empty()) throw std::invalid_argument("Demand: no users");
}

Demand Demand::parse(const std::string& s) {
  std::vector<FileId> req;
  req.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case 'A':
      case 'a':
        req.push_back(FileId::A);
        break;
      case 'B':
      case 'b':
        req.push_back(FileId::B);
        break;
      default:
        throw std::invalid_argument(std::string("Demand: bad request character '") + c + "'");
    }
  }
  return Demand(std::move(req));
}

FileId Demand::of_user(int user) const {
  if (user < 1 || user > size()) throw std::out_of_range("Demand: user out of range");
  return requests_[user - 1];
}

int Demand::count_a() const {
  return static_cast<int>(std::count(requests_.begin(), requests_.end(), FileId::A));
}

std::string Demand::to_string() const {
  std::string out;
  out.reserve(requests_.size());
  for (FileId f : requests_) out += file_char(f);
  return out;
}

Subset DemandPermutation::map_subset(const Subset& s, const std::vector<int>& mapping) const {
  std::uint64_t mask = 0;
  for (std::uint64_t m = s.mask(); m != 0; m &= m - 1) {
    int e = __builtin_ctzll(m) + 1;
    mask |= element_bit(mapping.at(e - 1));
  }
  return Subset::from_mask(mask);
}

DemandPermutation canonicalize_demand(const Demand& d) {
  DemandPermutation p;
  const int K = d.size();
  p.to_canonical.resize(K);
  p.to_original.resize(K);
  p.num_a = d.count_a();
  int next_a = 1, next_b = p.num_a + 1;
  for (int u = 1; u <= K; ++u) {
    int canon = (d.of_user(u) == FileId::A) ? next_a++ : next_b++;
    p.to_canonical[u - 1] = canon;
    p.to_original[canon - 1] = u;
  }
  return p;
}

FilePayload::FilePayload(std::uint64_t block_count, std::size_t block_size)
    : block_count_(block_count), block_size_(block_size) {
  if (block_size == 0) throw std::invalid_argument("FilePayload: zero block size");
  data_.resize(block_count * block_size, 0);
}

std::span<const std::uint8_t> FilePayload::block(std::uint64_t r) const {
  if (r >= block_count_) throw std::out_of_range("FilePayload: block rank out of range");
  return {data_.data() + r * block_size_, block_size_};
}

std::span<std::uint8_t> FilePayload::block(std::uint64_t r) {
  if (r >= block_count_) throw std::out_of_range("FilePayload: block rank out of range");
  return {data_.data() + r * block_size_, block_size_};
}

namespace {

void fill_from_stream(FilePayload& p, std::mt19937_64& gen) {
  for (std::uint64_t r = 0; r < p.block_count(); ++r) {
    auto blk = p.block(r);
    std::size_t i = 0;
    while (i < blk.size()) {
      std::uint64_t w = gen();
      for (int b = 0; b < 8 && i < blk.size(); ++b, ++i) {
        blk[i] = static_cast<std::uint8_t>(w & 0xff);
        w >>= 8;
      }
    }
  }
}

}  // namespace

std::pair<FilePayload, FilePayload> seeded_payload_pair(std::uint64_t block_count,
                                                        std::size_t block_size,
                                                        std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  FilePayload a(block_count, block_size);
  FilePayload b(block_count, block_size);
  fill_from_stream(a, gen);
  fill_from_stream(b, gen);
  return {std::move(a), std::move(b)};
}

FilePayload relabel_payload(const FilePayload& p, const std::vector<int>& mapping, int K, int m) {
  if (static_cast<int>(mapping.size()) != K)
    throw std::invalid_argument("relabel_payload: mapping size != K");
  if (p.block_count() != binom(K, m))
    throw std::invalid_argument("relabel_payload: payload size != C(K,m)");
  FilePayload out(p.block_count(), p.block_size());
  for (std::uint64_t r = 0; r < p.block_count(); ++r) {
    Subset t = colex_unrank(r, K, m);
    std::uint64_t mapped_mask = 0;
    for (std::uint64_t mk = t.mask(); mk != 0; mk &= mk - 1)
      mapped_mask |= element_bit(mapping[__builtin_ctzll(mk)]);
    std::uint64_t r2 = colex_rank(Subset::from_mask(mapped_mask), K);
    auto src = p.block(r);
    auto dst = out.block(r2);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return out;
}

BroadcastMessage::BroadcastMessage(std::vector<MessageTerm> terms, int step)
    : terms_(std::move(terms)), step_(step) {
  if (step < 1 || step > 4) throw std::invalid_argument("BroadcastMessage: step must be 1..4");
  std::sort(terms_.begin(), terms_.end());
  // XOR semantics: identical terms cancel pairwise.
  std::vector<MessageTerm> reduced;
  reduced.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size();) {
    std::size_t j = i;
    while (j < terms_.size() && terms_[j] == terms_[i]) ++j;
    if ((j - i) % 2 == 1) reduced.push_back(terms_[i]);
    i = j;
  }
  terms_ = std::move(reduced);
  if (terms_.empty()) throw std::invalid_argument("BroadcastMessage: terms cancel to nothing");
}

std::string BroadcastMessage::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0) out += " + ";
    out += terms_[i].to_string();
  }
  return out;
}

CacheContent::CacheContent(int user, std::size_t block_size, std::uint64_t rank_space)
    : user_(user), block_size_(block_size), slot_of_rank_(rank_space, -1) {
  if (user < 1 || user > kMaxGroundSize) throw std::invalid_argument("CacheContent: bad user");
  if (block_size == 0) throw std::invalid_argument("CacheContent: zero block size");
}

void CacheContent::insert(std::uint64_t rank, std::span<const std::uint8_t> block) {
  if (rank >= slot_of_rank_.size()) throw std::out_of_range("CacheContent: rank out of range");
  if (block.size() != block_size_) throw std::invalid_argument("CacheContent: bad block size");
  if (slot_of_rank_[rank] >= 0) throw std::invalid_argument("CacheContent: duplicate rank");
  slot_of_rank_[rank] = static_cast<std::int64_t>(ranks_.size());
  ranks_.push_back(rank);
  blocks_.insert(blocks_.end(), block.begin(), block.end());
}

bool CacheContent::has(std::uint64_t rank) const {
  return rank < slot_of_rank_.size() && slot_of_rank_[rank] >= 0;
}

std::span<const std::uint8_t> CacheContent::block(std::uint64_t rank) const {
  if (!has(rank)) throw std::out_of_range("CacheContent: rank not cached");
  return {blocks_.data() + static_cast<std::size_t>(slot_of_rank_[rank]) * block_size_,
          block_size_};
}

}  // namespace paircache
