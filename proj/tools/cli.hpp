#pragma once

#include "paircache/delivery.hpp"
#include "paircache/rates.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace paircache::cli {

struct RateOptions {
  int K = 0;
  int m = 0;
  std::optional<int> L;
  std::optional<int> j;
  bool json = false;
};

struct SweepOptions {
  int K = 0;
  std::string out_path;  // empty = stdout
};

struct SimulateOptions {
  int K = 0;
  int m = 0;
  std::string demands;
  std::uint64_t seed = kDefaultSeed;
  std::size_t subfile_bytes = 1;
  bool json = false;
};

struct HullOptions {
  int K = 0;
  bool json = false;
};

struct FminOptions {
  int m = 0;
  bool json = false;
};

struct VerifyOptions {
  int k_max = 12;
  std::uint64_t seed = kDefaultSeed;
  bool json = false;
};

// One sweep line: the M grid is the union of the scheme grid m/K and the
// baseline grid 2t/K; absent columns stay empty in the CSV.
struct SweepRow {
  Rational M;
  std::optional<Rational> r_scheme;
  std::optional<Rational> r_mn;
  Rational r_hull;
  Rational r_lb;
};

std::vector<SweepRow> sweep_rows(int K);
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

// Exit codes: 0 success, 1 usage error, 2 verification or decode failure.
int cmd_rate(const RateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_hull(const HullOptions& opt, std::ostream& out, std::ostream& err);
int cmd_fmin(const FminOptions& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace paircache::cli
