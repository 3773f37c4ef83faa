#pragma once

#include "paircache/model.hpp"

#include <vector>

namespace paircache {

// The m-subsets of {1..K} containing `user`, in colex order. These are the
// subfile indices user stores.
std::vector<Subset> cache_index_set(int K, int m, int user);

// One cache per user: user u stores A_T ^ B_T for every index T with u in T.
std::vector<CacheContent> build_caches(const ProblemInstance& inst, const FilePayload& file_a,
                                       const FilePayload& file_b);

}  // namespace paircache
