#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "covarr/bigint.hpp"
#include "covarr/errors.hpp"

namespace covarr {

/// N x k symbol array over the alphabet [0, v). Row-major storage, immutable
/// in spirit: the coverage engine never mutates its input.
class ArrayMatrix {
 public:
  ArrayMatrix(uint32_t n_rows, uint32_t n_cols, uint32_t v);
  ArrayMatrix(uint32_t n_rows, uint32_t n_cols, uint32_t v, std::vector<uint32_t> data);

  uint32_t rows() const { return n_rows_; }
  uint32_t cols() const { return n_cols_; }
  uint32_t alphabet() const { return v_; }

  uint32_t at(uint32_t r, uint32_t c) const { return data_[size_t{r} * n_cols_ + c]; }
  void set(uint32_t r, uint32_t c, uint32_t s);

  const std::vector<uint32_t>& data() const { return data_; }

  bool operator==(const ArrayMatrix&) const = default;

 private:
  uint32_t n_rows_;
  uint32_t n_cols_;
  uint32_t v_;
  std::vector<uint32_t> data_;
};

/// Strictly increasing column indices; t = indices.size().
struct ColumnSet {
  std::vector<uint32_t> indices;

  bool operator==(const ColumnSet&) const = default;
};

/// Validates q against an array's column count; throws Errc::bad_argument.
void check_column_set(const ColumnSet& q, uint32_t n_cols);

struct CoverageOptions {
  uint32_t threads = 1;
  uint32_t witness_cap = 16;
  bool collect_all_witnesses = false;
  /// Cap on C(k,t) * N work units for exact enumeration.
  uint64_t work_budget = 100'000'000;
  /// Cap on the v^t occupancy table.
  uint64_t table_limit = uint64_t{1} << 28;
};

struct CoverageReport {
  uint32_t t = 0;
  BigInt total;          // C(k, t)
  uint64_t covered = 0;  // exact count, or covered samples when !exact
  double ratio = 0;      // covered/total exact, or the sample mean
  bool exact = true;
  double stderr_ = 0;    // binomial standard error when sampled, else 0
  std::vector<ColumnSet> uncovered;  // capped witness list, lexicographic
};

struct VerifyResult {
  bool covering = false;
  std::optional<ColumnSet> witness;  // lexicographically first uncovered set
};

struct OaCheckResult {
  bool is_oa = false;
  uint64_t lambda = 0;  // N / v^t when is_oa
};

/// True iff every tuple of [v]^t occurs among the rows restricted to q.
bool covers(const ArrayMatrix& a, const ColumnSet& q, const CoverageOptions& opt = {});

/// Exact covered count over all C(k,t) sets in lexicographic order.
/// Deterministic for any thread count. Throws Errc::budget_exceeded when the
/// enumeration would exceed opt.work_budget.
CoverageReport coverage_report(const ArrayMatrix& a, uint32_t t, const CoverageOptions& opt = {});

/// Coverage estimate from i.i.d. uniform t-subsets; deterministic per seed
/// and thread count (per-sample substreams).
CoverageReport coverage_sampled(const ArrayMatrix& a, uint32_t t, uint64_t samples, uint64_t seed,
                                const CoverageOptions& opt = {});

/// Full covering check; short-circuits at the lexicographically first
/// uncovered set, which is returned as the witness.
VerifyResult verify_covering(const ArrayMatrix& a, uint32_t t, const CoverageOptions& opt = {});

/// Orthogonal-array check: every tuple exactly N/v^t times in every t-subarray.
OaCheckResult verify_oa(const ArrayMatrix& a, uint32_t t, const CoverageOptions& opt = {});

/// Maps symbol s to min(s, v_target - 1). Never un-covers a covered set.
ArrayMatrix project_alphabet(const ArrayMatrix& a, uint32_t v_target);

}  // namespace covarr
