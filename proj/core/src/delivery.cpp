#include "paircache/delivery.hpp"

#include "paircache/placement.hpp"

#include <algorithm>
#include <stdexcept>

namespace paircache {

namespace {

int popcount(std::uint64_t v) { return __builtin_popcountll(v); }

void check_split(int K, int m, int L) {
  if (K < 2 || K > kMaxGroundSize || m < 1 || m > K - 1)
    throw std::invalid_argument("bad (K,m)");
  if (L < 1 || L > K - 1) throw std::invalid_argument("split L must be in 1..K-1");
}

}  // namespace

std::pair<int, int> threshold_window(int K, int m, int L) {
  check_split(K, m, L);
  return {std::max(0, m - L + 1), std::min(K - L, m + 1)};
}

int optimal_threshold(int K, int m, int L) {
  const auto [lo, hi] = threshold_window(K, m, L);
  const int jstar = (m * (K - L) + K - 1) / K;  // ceil(m(K-L)/K), never truly clamped
  return std::clamp(jstar, lo, hi);
}

std::array<std::uint64_t, 4> DeliveryPlan::step_counts() const {
  std::array<std::uint64_t, 4> c{};
  for (const auto& msg : messages) ++c[msg.step() - 1];
  return c;
}

DeliveryPlan generate_messages(const ProblemInstance& inst, int L, int j) {
  const int K = inst.K();
  const int m = inst.m();
  if (L < 0 || L > K) throw std::invalid_argument("generate_messages: L out of range");

  DeliveryPlan plan;
  plan.K = K;
  plan.m = m;
  plan.L = L;

  // Ascending-mask enumeration is colex order; vector position equals rank.
  const auto masks = k_submasks(low_elements_mask(K), m);

  if (L == 0 || L == K) {
    plan.j = 0;
    const FileId f = (L == K) ? FileId::A : FileId::B;
    const int step = (L == K) ? 1 : 2;
    for (std::uint64_t mk : masks)
      plan.messages.emplace_back(std::vector<MessageTerm>{{f, Subset::from_mask(mk)}}, step);
    return plan;
  }

  const auto [lo, hi] = threshold_window(K, m, L);
  if (j < lo || j > hi)
    throw std::invalid_argument("generate_messages: threshold " + std::to_string(j) +
                                " outside [" + std::to_string(lo) + "," + std::to_string(hi) +
                                "]");
  plan.j = j;

  const std::uint64_t amask = low_elements_mask(L);
  const std::uint64_t pivot_a = element_bit(1);
  const std::uint64_t pivot_b = element_bit(L + 1);

  std::vector<BroadcastMessage> step2;
  for (std::uint64_t mk : masks) {
    if (popcount(mk & ~amask) >= j)
      plan.messages.emplace_back(std::vector<MessageTerm>{{FileId::A, Subset::from_mask(mk)}},
                                 1);
    else
      step2.emplace_back(std::vector<MessageTerm>{{FileId::B, Subset::from_mask(mk)}}, 2);
  }
  for (auto& msg : step2) plan.messages.push_back(std::move(msg));

  // Step 3: for each lead index missing user 1 (below the threshold), chain
  // it with the indices obtained by swapping user 1 for one of its low users.
  for (std::uint64_t mk : masks) {
    if ((mk & pivot_a) != 0 || popcount(mk & ~amask) >= j) continue;
    std::vector<MessageTerm> terms{{FileId::A, Subset::from_mask(mk)}};
    for (std::uint64_t t = mk & amask; t != 0; t &= t - 1) {
      const std::uint64_t bit = t & (~t + 1);
      terms.push_back({FileId::A, Subset::from_mask((mk ^ bit) | pivot_a)});
    }
    plan.messages.emplace_back(std::move(terms), 3);
  }

  // Step 4: mirror of step 3 with pivot user L+1 swapping high users.
  for (std::uint64_t mk : masks) {
    if ((mk & pivot_b) != 0 || popcount(mk & ~amask) < j) continue;
    std::vector<MessageTerm> terms{{FileId::B, Subset::from_mask(mk)}};
    for (std::uint64_t s = mk & ~amask; s != 0; s &= s - 1) {
      const std::uint64_t bit = s & (~s + 1);
      terms.push_back({FileId::B, Subset::from_mask((mk ^ bit) | pivot_b)});
    }
    plan.messages.emplace_back(std::move(terms), 4);
  }

  return plan;
}

DeliveryPlan relabel_plan(const DeliveryPlan& plan, const DemandPermutation& perm) {
  if (static_cast<int>(perm.to_original.size()) != plan.K)
    throw std::invalid_argument("relabel_plan: permutation size != K");
  DeliveryPlan out;
  out.K = plan.K;
  out.m = plan.m;
  out.L = plan.L;
  out.j = plan.j;
  out.messages.reserve(plan.messages.size());
  for (const auto& msg : plan.messages) {
    std::vector<MessageTerm> terms;
    terms.reserve(msg.terms().size());
    for (const auto& t : msg.terms())
      terms.push_back({t.file, perm.to_original_subset(t.index)});
    out.messages.emplace_back(std::move(terms), msg.step());
  }
  return out;
}

std::vector<std::uint8_t> evaluate_message(const BroadcastMessage& msg, const FilePayload& file_a,
                                           const FilePayload& file_b) {
  if (file_a.block_size() != file_b.block_size() ||
      file_a.block_count() != file_b.block_count())
    throw std::invalid_argument("evaluate_message: mismatched payloads");
  std::vector<std::uint8_t> out(file_a.block_size(), 0);
  for (const MessageTerm& t : msg.terms()) {
    const FilePayload& p = (t.file == FileId::A) ? file_a : file_b;
    auto blk = p.block(colex_rank(t.index, kMaxGroundSize));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] ^= blk[i];
  }
  return out;
}

std::vector<std::vector<std::uint8_t>> evaluate_plan(const DeliveryPlan& plan,
                                                     const FilePayload& file_a,
                                                     const FilePayload& file_b) {
  std::vector<std::vector<std::uint8_t>> out;
  out.reserve(plan.messages.size());
  for (const auto& msg : plan.messages) out.push_back(evaluate_message(msg, file_a, file_b));
  return out;
}

namespace {

struct PlanIndex {
  std::vector<std::int64_t> step[4];  // colex rank of (lead) index -> message position
};

PlanIndex index_plan(const DeliveryPlan& plan) {
  const std::uint64_t C = binom(plan.K, plan.m);
  PlanIndex px;
  for (auto& tbl : px.step) tbl.assign(C, -1);
  for (std::size_t i = 0; i < plan.messages.size(); ++i) {
    const auto& msg = plan.messages[i];
    const int pivot = (msg.step() == 3) ? 1 : plan.L + 1;
    const Subset* lead = nullptr;
    if (msg.step() <= 2) {
      lead = &msg.terms().front().index;
    } else {
      for (const auto& t : msg.terms())
        if (!t.index.contains(pivot)) {
          lead = &t.index;
          break;
        }
    }
    if (lead == nullptr) throw std::invalid_argument("decode: message without a lead index");
    px.step[msg.step() - 1][colex_rank(*lead, plan.K)] = static_cast<std::int64_t>(i);
  }
  return px;
}

}  // namespace

FilePayload decode_user(int user, FileId want, const CacheContent& cache,
                        const DeliveryPlan& plan,
                        std::span<const std::vector<std::uint8_t>> received) {
  const int K = plan.K;
  const int m = plan.m;
  const int L = plan.L;
  const int j = plan.j;
  if (K < 2) throw std::invalid_argument("decode_user: empty plan");
  if (user < 1 || user > K) throw std::invalid_argument("decode_user: user out of range");
  if (received.size() != plan.messages.size())
    throw std::invalid_argument("decode_user: received count != plan size");
  if (L == 0 && want != FileId::B)
    throw std::invalid_argument("decode_user: plan serves only file B");
  if (L == K && want != FileId::A)
    throw std::invalid_argument("decode_user: plan serves only file A");
  if (L > 0 && L < K && (user <= L) != (want == FileId::A))
    throw std::invalid_argument("decode_user: request inconsistent with canonical split");

  const std::uint64_t C = binom(K, m);
  const std::size_t bs = cache.block_size();
  for (const auto& blk : received)
    if (blk.size() != bs) throw std::invalid_argument("decode_user: message block size mismatch");

  const PlanIndex px = index_plan(plan);
  FilePayload out(C, bs);

  auto fail = [&](const Subset& target) {
    const std::string name = std::string(1, file_char(want)) + target.to_string();
    throw DecodeError(name, "user " + std::to_string(user) + " cannot reconstruct " + name);
  };
  auto take = [&](const std::vector<std::int64_t>& tbl, std::uint64_t r,
                  const Subset& target) -> std::span<const std::uint8_t> {
    if (r >= C || tbl[r] < 0) fail(target);
    return received[static_cast<std::size_t>(tbl[r])];
  };
  auto cache_block = [&](std::uint64_t r, const Subset& target) {
    if (!cache.has(r)) fail(target);
    return cache.block(r);
  };
  auto xor_in = [bs](std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
    for (std::size_t i = 0; i < bs; ++i) dst[i] ^= src[i];
  };

  const auto masks = k_submasks(low_elements_mask(K), m);

  if (L == 0 || L == K) {
    const auto& tbl = (L == K) ? px.step[0] : px.step[1];
    for (std::uint64_t r = 0; r < C; ++r) {
      auto acc = out.block(r);
      xor_in(acc, take(tbl, r, Subset::from_mask(masks[r])));
    }
    return out;
  }

  const std::uint64_t amask = low_elements_mask(L);
  const std::uint64_t ubit = element_bit(user);

  // Subfiles recoverable straight from the cache: the plain message of the
  // other file XORed onto the cached A_T ^ B_T.
  auto known_a = [&](std::uint64_t idx, std::span<std::uint8_t> acc, const Subset& target) {
    const std::uint64_t r = colex_rank(Subset::from_mask(idx), K);
    xor_in(acc, cache_block(r, target));
    xor_in(acc, take(px.step[1], r, target));
  };
  auto known_b = [&](std::uint64_t idx, std::span<std::uint8_t> acc, const Subset& target) {
    const std::uint64_t r = colex_rank(Subset::from_mask(idx), K);
    xor_in(acc, cache_block(r, target));
    xor_in(acc, take(px.step[0], r, target));
  };

  if (want == FileId::A) {
    const std::uint64_t pivot = element_bit(1);
    for (std::uint64_t r = 0; r < C; ++r) {
      const std::uint64_t mk = masks[r];
      const Subset target = Subset::from_mask(mk);
      auto acc = out.block(r);
      if (popcount(mk & ~amask) >= j) {
        xor_in(acc, take(px.step[0], r, target));
        continue;
      }
      if ((mk & ubit) != 0) {
        xor_in(acc, cache_block(r, target));
        xor_in(acc, take(px.step[1], r, target));
        continue;
      }
      const std::uint64_t tmask = mk & amask;
      const std::uint64_t smask = mk & ~amask;
      if (user == 1) {
        xor_in(acc, take(px.step[2], r, target));
        for (std::uint64_t t = tmask; t != 0; t &= t - 1)
          known_a((mk ^ (t & (~t + 1))) | pivot, acc, target);
      } else if ((tmask & pivot) != 0) {
        // swap the pivot out: decode through the chain led by (T\{1})+{user}
        const std::uint64_t lead = ((tmask ^ pivot) | ubit) | smask;
        xor_in(acc, take(px.step[2], colex_rank(Subset::from_mask(lead), K), target));
        known_a(lead, acc, target);
        for (std::uint64_t t = tmask ^ pivot; t != 0; t &= t - 1)
          known_a(((tmask | ubit) ^ (t & (~t + 1))) | smask, acc, target);
      } else {
        // neither pivot nor user present: cancel sibling chains pairwise
        xor_in(acc, take(px.step[2], r, target));
        for (std::uint64_t t = tmask; t != 0; t &= t - 1) {
          const std::uint64_t mlead = ((tmask | ubit) ^ (t & (~t + 1))) | smask;
          xor_in(acc, take(px.step[2], colex_rank(Subset::from_mask(mlead), K), target));
          known_a(mlead, acc, target);
        }
      }
    }
  } else {
    const std::uint64_t pivot = element_bit(L + 1);
    for (std::uint64_t r = 0; r < C; ++r) {
      const std::uint64_t mk = masks[r];
      const Subset target = Subset::from_mask(mk);
      auto acc = out.block(r);
      if (popcount(mk & ~amask) < j) {
        xor_in(acc, take(px.step[1], r, target));
        continue;
      }
      if ((mk & ubit) != 0) {
        xor_in(acc, cache_block(r, target));
        xor_in(acc, take(px.step[0], r, target));
        continue;
      }
      const std::uint64_t tmask = mk & amask;
      const std::uint64_t smask = mk & ~amask;
      if (user == L + 1) {
        xor_in(acc, take(px.step[3], r, target));
        for (std::uint64_t s = smask; s != 0; s &= s - 1)
          known_b((mk ^ (s & (~s + 1))) | pivot, acc, target);
      } else if ((smask & pivot) != 0) {
        const std::uint64_t lead = tmask | ((smask ^ pivot) | ubit);
        xor_in(acc, take(px.step[3], colex_rank(Subset::from_mask(lead), K), target));
        known_b(lead, acc, target);
        for (std::uint64_t s = smask ^ pivot; s != 0; s &= s - 1)
          known_b(tmask | ((smask | ubit) ^ (s & (~s + 1))), acc, target);
      } else {
        xor_in(acc, take(px.step[3], r, target));
        for (std::uint64_t s = smask; s != 0; s &= s - 1) {
          const std::uint64_t mlead = tmask | ((smask | ubit) ^ (s & (~s + 1)));
          xor_in(acc, take(px.step[3], colex_rank(Subset::from_mask(mlead), K), target));
          known_b(mlead, acc, target);
        }
      }
    }
  }
  return out;
}

bool SimulationReport::all_ok() const {
  return std::all_of(user_ok.begin(), user_ok.end(), [](bool b) { return b; });
}

SimulationReport simulate(const ProblemInstance& inst, const Demand& demand, std::uint64_t seed) {
  const int K = inst.K();
  const int m = inst.m();
  if (demand.size() != K) throw std::invalid_argument("simulate: demand size != K");
  const std::uint64_t C = inst.num_subfiles();

  auto [file_a, file_b] = seeded_payload_pair(C, inst.subfile_bytes(), seed);
  const DemandPermutation perm = canonicalize_demand(demand);
  const int L = perm.num_a;

  // Run placement and delivery in the relabeled user space. Placement is
  // symmetric under user relabeling, so these caches equal the real ones
  // with their indices renamed.
  FilePayload ca = relabel_payload(file_a, perm.to_canonical, K, m);
  FilePayload cb = relabel_payload(file_b, perm.to_canonical, K, m);
  auto caches = build_caches(inst, ca, cb);

  DeliveryPlan plan = (L == 0 || L == K)
                          ? generate_messages(inst, L, 0)
                          : generate_messages(inst, L, optimal_threshold(K, m, L));
  auto blocks = evaluate_plan(plan, ca, cb);

  SimulationReport rep;
  rep.K = K;
  rep.m = m;
  rep.L = L;
  if (L > 0 && L < K) rep.threshold = plan.j;
  rep.step_counts = plan.step_counts();
  rep.total_messages = plan.messages.size();
  rep.total_bytes = rep.total_messages * inst.subfile_bytes();
  rep.rate = Rational(BigInt(rep.total_messages), BigInt(C));
  rep.user_ok.assign(K, false);
  for (int u = 1; u <= K; ++u) {
    const FileId want = demand.of_user(u);
    const int cu = perm.canonical_user(u);
    FilePayload decoded = decode_user(cu, want, caches[cu - 1], plan, blocks);
    FilePayload in_original = relabel_payload(decoded, perm.to_original, K, m);
    rep.user_ok[u - 1] = (in_original == (want == FileId::A ? file_a : file_b));
  }
  return rep;
}

}  // namespace paircache
