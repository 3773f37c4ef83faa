#include "paircache/placement.hpp"

#include <stdexcept>

namespace paircache {

std::vector<Subset> cache_index_set(int K, int m, int user) {
  if (K < 2 || K > kMaxGroundSize || m < 1 || m > K - 1)
    throw std::invalid_argument("cache_index_set: bad (K,m)");
  if (user < 1 || user > K) throw std::invalid_argument("cache_index_set: user out of range");
  // Adding a fixed element to each (m-1)-submask of the ground set minus the
  // user preserves ascending mask order, hence colex order.
  std::uint64_t rest = low_elements_mask(K) & ~element_bit(user);
  auto masks = k_submasks(rest, m - 1);
  std::vector<Subset> out;
  out.reserve(masks.size());
  for (std::uint64_t mk : masks) out.push_back(Subset::from_mask(mk | element_bit(user)));
  return out;
}

std::vector<CacheContent> build_caches(const ProblemInstance& inst, const FilePayload& file_a,
                                       const FilePayload& file_b) {
  const std::uint64_t C = inst.num_subfiles();
  if (file_a.block_count() != C || file_b.block_count() != C)
    throw std::invalid_argument("build_caches: payload block count != C(K,m)");
  if (file_a.block_size() != inst.subfile_bytes() || file_b.block_size() != inst.subfile_bytes())
    throw std::invalid_argument("build_caches: payload block size mismatch");

  std::vector<CacheContent> caches;
  caches.reserve(inst.K());
  std::vector<std::uint8_t> xored(inst.subfile_bytes());
  for (int u = 1; u <= inst.K(); ++u) {
    CacheContent cache(u, inst.subfile_bytes(), C);
    for (const Subset& t : cache_index_set(inst.K(), inst.m(), u)) {
      std::uint64_t r = colex_rank(t, inst.K());
      auto a = file_a.block(r);
      auto b = file_b.block(r);
      for (std::size_t i = 0; i < xored.size(); ++i) xored[i] = a[i] ^ b[i];
      cache.insert(r, xored);
    }
    caches.push_back(std::move(cache));
  }
  return caches;
}

}  // namespace paircache
