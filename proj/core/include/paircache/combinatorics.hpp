#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace paircache {

// Ground sets are {1..n} with n at most 64 so every subset fits one machine
// word and every binomial coefficient fits uint64.
inline constexpr int kMaxGroundSize = 64;

// C(n, k), exact. Returns 0 for k > n. Throws std::invalid_argument for
// negative arguments and std::out_of_range for n > 64.
std::uint64_t binom(int n, int k);

// Bitmask for {1..n}: element e occupies bit e-1.
constexpr std::uint64_t element_bit(int e) { return std::uint64_t{1} << (e - 1); }

constexpr std::uint64_t low_elements_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// A subset of {1..64} as an immutable bitmask. Numeric order of masks is
// exactly colexicographic order, so operator<=> compares colex.
class Subset {
 public:
  constexpr Subset() = default;
  Subset(std::initializer_list<int> elems);
  explicit Subset(const std::vector<int>& elems);

  static constexpr Subset from_mask(std::uint64_t mask) {
    Subset s;
    s.mask_ = mask;
    return s;
  }

  constexpr std::uint64_t mask() const { return mask_; }
  int size() const { return __builtin_popcountll(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(int e) const {
    return e >= 1 && e <= 64 && (mask_ & element_bit(e)) != 0;
  }
  // Largest element, 0 when empty.
  int max_element() const { return mask_ == 0 ? 0 : 64 - __builtin_clzll(mask_); }

  Subset with(int e) const;
  Subset without(int e) const;

  std::vector<int> elements() const;  // ascending
  std::string to_string() const;      // "{1,4,5}", "{}"

  friend constexpr auto operator<=>(const Subset&, const Subset&) = default;

 private:
  std::uint64_t mask_ = 0;
};

// Position of s among the k-subsets of {1..n} in colexicographic order,
// in [0, C(n,k)).
std::uint64_t colex_rank(const Subset& s, int n);

// Inverse of colex_rank.
Subset colex_unrank(std::uint64_t r, int n, int k);

// All k-subsets of {1..n} in colex order; size C(n,k).
std::vector<Subset> enumerate_subsets(int n, int k);

// All k-element submasks of `ground`, ascending (= colex) order.
std::vector<std::uint64_t> k_submasks(std::uint64_t ground, int k);

}  // namespace paircache
