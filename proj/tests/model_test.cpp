#include "paircache/model.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>

namespace paircache {
namespace {

TEST(ProblemInstance, ValidatesRanges) {
  const ProblemInstance inst(6, 3);
  EXPECT_EQ(inst.K(), 6);
  EXPECT_EQ(inst.m(), 3);
  EXPECT_EQ(inst.subfile_bytes(), 1u);
  EXPECT_EQ(inst.num_subfiles(), 20u);
  EXPECT_EQ(inst.cached_per_user(), 10u);
  EXPECT_THROW(ProblemInstance(1, 1), std::invalid_argument);
  EXPECT_THROW(ProblemInstance(65, 3), std::invalid_argument);
  EXPECT_THROW(ProblemInstance(6, 0), std::invalid_argument);
  EXPECT_THROW(ProblemInstance(6, 6), std::invalid_argument);
  EXPECT_THROW(ProblemInstance(6, 3, 0), std::invalid_argument);
}

TEST(Demand, ParseAndAccess) {
  const Demand d = Demand::parse("AABBBB");
  EXPECT_EQ(d.size(), 6);
  EXPECT_EQ(d.count_a(), 2);
  EXPECT_EQ(d.of_user(1), FileId::A);
  EXPECT_EQ(d.of_user(3), FileId::B);
  EXPECT_EQ(d.to_string(), "AABBBB");
  EXPECT_EQ(Demand::parse("abBA").to_string(), "ABBA");
  EXPECT_THROW(Demand::parse("AXB"), std::invalid_argument);
  EXPECT_THROW(Demand::parse(""), std::invalid_argument);
  EXPECT_THROW(d.of_user(0), std::out_of_range);
  EXPECT_THROW(d.of_user(7), std::out_of_range);
}

TEST(Demand, CanonicalizeIsStable) {
  const auto p = canonicalize_demand(Demand::parse("BABA"));
  EXPECT_EQ(p.num_a, 2);
  // A-requesters (users 2, 4) take slots 1, 2 in order; B-requesters 1, 3
  // take slots 3, 4.
  EXPECT_EQ(p.to_canonical, (std::vector<int>{3, 1, 4, 2}));
  EXPECT_EQ(p.to_original, (std::vector<int>{2, 4, 1, 3}));
  for (int u = 1; u <= 4; ++u) EXPECT_EQ(p.original_user(p.canonical_user(u)), u);

  const auto q = canonicalize_demand(Demand::parse("AAB"));
  EXPECT_EQ(q.to_canonical, (std::vector<int>{1, 2, 3}));

  const auto all_b = canonicalize_demand(Demand::parse("BBBB"));
  EXPECT_EQ(all_b.num_a, 0);
  EXPECT_EQ(all_b.to_canonical, (std::vector<int>{1, 2, 3, 4}));
}

TEST(Demand, MapSubsetRoundTrip) {
  const auto p = canonicalize_demand(Demand::parse("BABA"));
  const Subset s{1, 2};
  const Subset canon = p.to_canonical_subset(s);
  EXPECT_EQ(canon, (Subset{1, 3}));  // user1(B)->3, user2(A)->1
  EXPECT_EQ(p.to_original_subset(canon), s);
}

TEST(FilePayload, BlockAccess) {
  FilePayload p(4, 3);
  EXPECT_EQ(p.block_count(), 4u);
  EXPECT_EQ(p.block_size(), 3u);
  for (std::uint64_t r = 0; r < 4; ++r)
    for (std::uint8_t b : p.block(r)) EXPECT_EQ(b, 0u);
  p.block(2)[1] = 0xAB;
  EXPECT_EQ(p.block(2)[1], 0xAB);
  EXPECT_THROW(p.block(4), std::out_of_range);
  EXPECT_THROW(FilePayload(4, 0), std::invalid_argument);
}

TEST(FilePayload, SeededPairIsDeterministic) {
  const auto [a1, b1] = seeded_payload_pair(20, 8, 42);
  const auto [a2, b2] = seeded_payload_pair(20, 8, 42);
  EXPECT_EQ(a1, a2);
  EXPECT_EQ(b1, b2);
  EXPECT_NE(a1, b1);
  const auto [a3, b3] = seeded_payload_pair(20, 8, 43);
  EXPECT_NE(a1, a3);
}

TEST(FilePayload, RelabelMovesBlocks) {
  const int K = 4, m = 2;
  const auto [a, b] = seeded_payload_pair(binom(K, m), 4, kDefaultSeed);
  const auto p = canonicalize_demand(Demand::parse("BABA"));
  const FilePayload moved = relabel_payload(a, p.to_canonical, K, m);
  for (std::uint64_t r = 0; r < a.block_count(); ++r) {
    const Subset t = colex_unrank(r, K, m);
    const std::uint64_t r2 = colex_rank(p.to_canonical_subset(t), K);
    const auto src = a.block(r);
    const auto dst = moved.block(r2);
    ASSERT_TRUE(std::equal(src.begin(), src.end(), dst.begin()));
  }
  // applying the inverse mapping restores the original payload
  EXPECT_EQ(relabel_payload(moved, p.to_original, K, m), a);
  const std::vector<int> identity{1, 2, 3, 4};
  EXPECT_EQ(relabel_payload(a, identity, K, m), a);
  EXPECT_THROW(relabel_payload(a, {1, 2, 3}, K, m), std::invalid_argument);
}

TEST(BroadcastMessage, SortsAndCancels) {
  const MessageTerm t1{FileId::B, Subset{4, 5, 6}};
  const MessageTerm t2{FileId::B, Subset{3, 5, 6}};
  const BroadcastMessage msg({t1, t2}, 4);
  ASSERT_EQ(msg.terms().size(), 2u);
  EXPECT_EQ(msg.terms()[0], t2);  // smaller mask first
  EXPECT_EQ(msg.terms()[1], t1);
  EXPECT_EQ(msg.step(), 4);

  const BroadcastMessage cancelled({t1, t2, t1}, 4);  // duplicate pair drops
  ASSERT_EQ(cancelled.terms().size(), 1u);
  EXPECT_EQ(cancelled.terms()[0], t2);

  EXPECT_THROW(BroadcastMessage({t1, t1}, 4), std::invalid_argument);
  EXPECT_THROW(BroadcastMessage({t1}, 0), std::invalid_argument);
  EXPECT_THROW(BroadcastMessage({t1}, 5), std::invalid_argument);
}

TEST(BroadcastMessage, TermOrderPutsFileAFirst) {
  const MessageTerm a{FileId::A, Subset{2, 3}};
  const MessageTerm b{FileId::B, Subset{1, 2}};
  const BroadcastMessage msg({b, a}, 1);
  EXPECT_EQ(msg.terms()[0], a);
  EXPECT_EQ(msg.to_string(), "A{2,3} + B{1,2}");
}

TEST(CacheContent, InsertAndLookup) {
  CacheContent c(3, 2, 10);
  EXPECT_EQ(c.user(), 3);
  EXPECT_EQ(c.block_size(), 2u);
  const std::vector<std::uint8_t> blk{0x12, 0x34};
  c.insert(7, blk);
  EXPECT_TRUE(c.has(7));
  EXPECT_FALSE(c.has(6));
  EXPECT_EQ(c.size(), 1u);
  EXPECT_EQ(c.block(7)[0], 0x12);
  EXPECT_EQ(c.block(7)[1], 0x34);
  EXPECT_EQ(c.ranks(), (std::vector<std::uint64_t>{7}));
  EXPECT_THROW(c.block(6), std::out_of_range);
  EXPECT_THROW(c.insert(7, blk), std::invalid_argument);
  EXPECT_THROW(c.insert(10, blk), std::out_of_range);
  const std::vector<std::uint8_t> short_blk{0x01};
  EXPECT_THROW(c.insert(3, short_blk), std::invalid_argument);
}

}  // namespace
}  // namespace paircache
