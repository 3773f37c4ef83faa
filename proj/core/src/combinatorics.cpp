#include "paircache/combinatorics.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace paircache {

namespace {

constexpr auto kPascal = [] {
  std::array<std::array<std::uint64_t, kMaxGroundSize + 1>, kMaxGroundSize + 1> t{};
  for (int n = 0; n <= kMaxGroundSize; ++n) {
    t[n][0] = 1;
    for (int k = 1; k <= n; ++k)
      t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
  }
  return t;
}();

void check_element(int e) {
  if (e < 1 || e > kMaxGroundSize)
    throw std::invalid_argument("element " + std::to_string(e) + " outside {1..64}");
}

}  // namespace

std::uint64_t binom(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("binom: negative argument");
  if (n > kMaxGroundSize) throw std::out_of_range("binom: n > 64");
  if (k > n) return 0;
  return kPascal[n][k];
}

Subset::Subset(std::initializer_list<int> elems) {
  int prev = 0;
  for (int e : elems) {
    check_element(e);
    if (e <= prev) throw std::invalid_argument("Subset: elements must be strictly increasing");
    mask_ |= element_bit(e);
    prev = e;
  }
}

Subset::Subset(const std::vector<int>& elems) {
  int prev = 0;
  for (int e : elems) {
    check_element(e);
    if (e <= prev) throw std::invalid_argument("Subset: elements must be strictly increasing");
    mask_ |= element_bit(e);
    prev = e;
  }
}

Subset Subset::with(int e) const {
  check_element(e);
  return from_mask(mask_ | element_bit(e));
}

Subset Subset::without(int e) const {
  check_element(e);
  return from_mask(mask_ & ~element_bit(e));
}

std::vector<int> Subset::elements() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t m = mask_; m != 0; m &= m - 1)
    out.push_back(__builtin_ctzll(m) + 1);
  return out;
}

std::string Subset::to_string() const {
  std::string out = "{";
  bool first = true;
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) {
    if (!first) out += ',';
    out += std::to_string(__builtin_ctzll(m) + 1);
    first = false;
  }
  out += '}';
  return out;
}

std::uint64_t colex_rank(const Subset& s, int n) {
  if (n < 0 || n > kMaxGroundSize) throw std::out_of_range("colex_rank: bad ground size");
  if (s.max_element() > n) throw std::invalid_argument("colex_rank: subset exceeds ground set");
  std::uint64_t r = 0;
  int i = 0;
  for (std::uint64_t m = s.mask(); m != 0; m &= m - 1) {
    int e = __builtin_ctzll(m) + 1;
    ++i;
    r += binom(e - 1, i);
  }
  return r;
}

Subset colex_unrank(std::uint64_t r, int n, int k) {
  if (n < 0 || n > kMaxGroundSize || k < 0 || k > n)
    throw std::invalid_argument("colex_unrank: bad (n,k)");
  if (r >= binom(n, k)) throw std::out_of_range("colex_unrank: rank out of range");
  std::uint64_t mask = 0;
  int hi = n;
  for (int i = k; i >= 1; --i) {
    int e = hi;
    while (binom(e - 1, i) > r) --e;
    mask |= element_bit(e);
    r -= binom(e - 1, i);
    hi = e - 1;
  }
  return Subset::from_mask(mask);
}

std::vector<Subset> enumerate_subsets(int n, int k) {
  if (n < 0 || n > kMaxGroundSize || k < 0)
    throw std::invalid_argument("enumerate_subsets: bad (n,k)");
  std::vector<Subset> out;
  if (k > n) return out;
  auto masks = k_submasks(low_elements_mask(n), k);
  out.reserve(masks.size());
  for (std::uint64_t m : masks) out.push_back(Subset::from_mask(m));
  return out;
}

std::vector<std::uint64_t> k_submasks(std::uint64_t ground, int k) {
  if (k < 0) throw std::invalid_argument("k_submasks: negative k");
  const int n = __builtin_popcountll(ground);
  std::vector<std::uint64_t> out;
  if (k > n) return out;
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  std::array<int, kMaxGroundSize> pos{};
  int np = 0;
  for (std::uint64_t m = ground; m != 0; m &= m - 1) pos[np++] = __builtin_ctzll(m);

  const std::uint64_t total = binom(n, k);
  out.reserve(total);
  std::uint64_t c = (std::uint64_t{1} << k) - 1;  // Gosper over compact n-bit space
  for (std::uint64_t i = 0; i < total; ++i) {
    std::uint64_t expanded = 0;
    for (std::uint64_t m = c; m != 0; m &= m - 1)
      expanded |= std::uint64_t{1} << pos[__builtin_ctzll(m)];
    out.push_back(expanded);
    std::uint64_t u = c & (~c + 1);
    std::uint64_t v = c + u;
    if (v != 0) c = v + (((v ^ c) / u) >> 2);
  }
  return out;
}

}  // namespace paircache
