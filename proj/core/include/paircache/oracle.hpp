#pragma once

#include "paircache/delivery.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace paircache {

enum class RowKind : std::uint8_t { CacheEq, BroadcastEq };

// What one user knows, as GF(2) equations over 2*C(K,m) symbol columns:
// column r is subfile A at rank r, column C+r is subfile B at rank r.
// Rows are bit-packed in 64-bit words.
class LinearSystem {
 public:
  LinearSystem(int K, int m);

  int K() const { return K_; }
  int m() const { return m_; }
  std::uint64_t num_subfiles() const { return num_subfiles_; }
  std::uint64_t num_columns() const { return 2 * num_subfiles_; }
  std::size_t num_rows() const { return kinds_.size(); }
  RowKind row_kind(std::size_t i) const { return kinds_.at(i); }

  std::uint64_t column_of(FileId file, std::uint64_t rank) const;
  void add_row(std::span<const std::uint64_t> columns, RowKind kind);
  bool row_has(std::size_t row, std::uint64_t column) const;

  std::span<const std::uint64_t> row_words(std::size_t i) const;
  std::size_t words_per_row() const { return words_per_row_; }

 private:
  int K_;
  int m_;
  std::uint64_t num_subfiles_;
  std::size_t words_per_row_;
  std::vector<std::uint64_t> words_;
  std::vector<RowKind> kinds_;
};

// One row per cached block (A_T + B_T for T containing the user) followed by
// one row per broadcast message.
LinearSystem build_user_system(const ProblemInstance& inst, int user, const DeliveryPlan& plan);

struct DecodabilityResult {
  bool decodable = false;
  FileId want = FileId::A;
  std::optional<Subset> missing;  // first unrecoverable subfile index

  explicit operator bool() const { return decodable; }
};

// True iff every unit vector of the wanted file lies in the row space
// (Gaussian elimination over GF(2), then membership tests in rank order).
DecodabilityResult decodable(const LinearSystem& sys, FileId want);

}  // namespace paircache
