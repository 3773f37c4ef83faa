#include "paircache/oracle.hpp"

#include "paircache/placement.hpp"

#include <stdexcept>

namespace paircache {

LinearSystem::LinearSystem(int K, int m) : K_(K), m_(m) {
  if (K < 2 || K > kMaxGroundSize || m < 1 || m > K - 1)
    throw std::invalid_argument("LinearSystem: bad (K,m)");
  num_subfiles_ = binom(K, m);
  words_per_row_ = static_cast<std::size_t>((num_columns() + 63) / 64);
}

std::uint64_t LinearSystem::column_of(FileId file, std::uint64_t rank) const {
  if (rank >= num_subfiles_) throw std::out_of_range("LinearSystem: rank out of range");
  return (file == FileId::A) ? rank : num_subfiles_ + rank;
}

void LinearSystem::add_row(std::span<const std::uint64_t> columns, RowKind kind) {
  const std::size_t base = words_.size();
  words_.resize(base + words_per_row_, 0);
  for (std::uint64_t c : columns) {
    if (c >= num_columns()) throw std::out_of_range("LinearSystem: column out of range");
    words_[base + c / 64] ^= std::uint64_t{1} << (c % 64);
  }
  kinds_.push_back(kind);
}

bool LinearSystem::row_has(std::size_t row, std::uint64_t column) const {
  if (row >= kinds_.size() || column >= num_columns())
    throw std::out_of_range("LinearSystem: bad row/column");
  return (words_[row * words_per_row_ + column / 64] >> (column % 64)) & 1;
}

std::span<const std::uint64_t> LinearSystem::row_words(std::size_t i) const {
  if (i >= kinds_.size()) throw std::out_of_range("LinearSystem: row out of range");
  return {words_.data() + i * words_per_row_, words_per_row_};
}

LinearSystem build_user_system(const ProblemInstance& inst, int user, const DeliveryPlan& plan) {
  if (plan.K != inst.K() || plan.m != inst.m())
    throw std::invalid_argument("build_user_system: plan does not match instance");
  if (user < 1 || user > inst.K())
    throw std::invalid_argument("build_user_system: user out of range");

  LinearSystem sys(inst.K(), inst.m());
  std::vector<std::uint64_t> cols;
  for (const Subset& t : cache_index_set(inst.K(), inst.m(), user)) {
    const std::uint64_t r = colex_rank(t, inst.K());
    cols = {sys.column_of(FileId::A, r), sys.column_of(FileId::B, r)};
    sys.add_row(cols, RowKind::CacheEq);
  }
  for (const auto& msg : plan.messages) {
    cols.clear();
    for (const auto& term : msg.terms())
      cols.push_back(sys.column_of(term.file, colex_rank(term.index, inst.K())));
    sys.add_row(cols, RowKind::BroadcastEq);
  }
  return sys;
}

DecodabilityResult decodable(const LinearSystem& sys, FileId want) {
  const std::size_t nrows = sys.num_rows();
  const std::size_t wpr = sys.words_per_row();
  const std::uint64_t ncols = sys.num_columns();

  // Row-echelon form of a working copy.
  std::vector<std::uint64_t> work(nrows * wpr);
  for (std::size_t i = 0; i < nrows; ++i) {
    auto r = sys.row_words(i);
    std::copy(r.begin(), r.end(), work.begin() + static_cast<std::ptrdiff_t>(i * wpr));
  }
  auto bit = [&](std::size_t row, std::uint64_t col) -> bool {
    return (work[row * wpr + col / 64] >> (col % 64)) & 1;
  };
  auto xor_rows = [&](std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < wpr; ++w) work[dst * wpr + w] ^= work[src * wpr + w];
  };
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t w = 0; w < wpr; ++w) std::swap(work[a * wpr + w], work[b * wpr + w]);
  };

  std::vector<std::pair<std::uint64_t, std::size_t>> pivots;  // (column, row)
  std::size_t next = 0;
  for (std::uint64_t col = 0; col < ncols && next < nrows; ++col) {
    std::size_t found = nrows;
    for (std::size_t i = next; i < nrows; ++i)
      if (bit(i, col)) {
        found = i;
        break;
      }
    if (found == nrows) continue;
    swap_rows(found, next);
    for (std::size_t i = next + 1; i < nrows; ++i)
      if (bit(i, col)) xor_rows(i, next);
    pivots.emplace_back(col, next);
    ++next;
  }

  DecodabilityResult res;
  res.want = want;

  // e_col is in the row space iff reducing it by the echelon rows reaches 0.
  std::vector<std::uint64_t> v(wpr);
  for (std::uint64_t rank = 0; rank < sys.num_subfiles(); ++rank) {
    const std::uint64_t target = (want == FileId::A) ? rank : sys.num_subfiles() + rank;
    std::fill(v.begin(), v.end(), 0);
    v[target / 64] = std::uint64_t{1} << (target % 64);
    for (const auto& [col, row] : pivots) {
      if ((v[col / 64] >> (col % 64)) & 1)
        for (std::size_t w = 0; w < wpr; ++w) v[w] ^= work[row * wpr + w];
    }
    bool zero = true;
    for (std::uint64_t w : v)
      if (w != 0) {
        zero = false;
        break;
      }
    if (!zero) {
      res.decodable = false;
      res.missing = colex_unrank(rank, sys.K(), sys.m());
      return res;
    }
  }
  res.decodable = true;
  return res;
}

}  // namespace paircache
