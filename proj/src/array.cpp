#include "covarr/array.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "covarr/rng.hpp"

namespace covarr {

ArrayMatrix::ArrayMatrix(uint32_t n_rows, uint32_t n_cols, uint32_t v)
    : n_rows_(n_rows), n_cols_(n_cols), v_(v), data_(size_t{n_rows} * n_cols, 0) {
  if (n_rows < 1 || n_cols < 1) fail(Errc::bad_argument, "array dimensions must be positive");
  if (v < 2) fail(Errc::bad_argument, "alphabet size must be >= 2");
}

ArrayMatrix::ArrayMatrix(uint32_t n_rows, uint32_t n_cols, uint32_t v, std::vector<uint32_t> data)
    : n_rows_(n_rows), n_cols_(n_cols), v_(v), data_(std::move(data)) {
  if (n_rows < 1 || n_cols < 1) fail(Errc::bad_argument, "array dimensions must be positive");
  if (v < 2) fail(Errc::bad_argument, "alphabet size must be >= 2");
  if (data_.size() != size_t{n_rows} * n_cols)
    fail(Errc::bad_argument, "data size does not match declared dimensions");
  for (uint32_t s : data_)
    if (s >= v) fail(Errc::bad_argument, "symbol " + std::to_string(s) + " out of range");
}

void ArrayMatrix::set(uint32_t r, uint32_t c, uint32_t s) {
  if (r >= n_rows_ || c >= n_cols_) fail(Errc::bad_argument, "cell index out of range");
  if (s >= v_) fail(Errc::bad_argument, "symbol out of range");
  data_[size_t{r} * n_cols_ + c] = s;
}

void check_column_set(const ColumnSet& q, uint32_t n_cols) {
  if (q.indices.empty()) fail(Errc::bad_argument, "column set must be nonempty");
  uint32_t prev = 0;
  bool first = true;
  for (uint32_t c : q.indices) {
    if (c >= n_cols) fail(Errc::bad_argument, "column index out of range");
    if (!first && c <= prev) fail(Errc::bad_argument, "column indices must be strictly increasing");
    prev = c;
    first = false;
  }
}

namespace {

// v^t with the occupancy-table limit enforced.
uint64_t tuple_space(uint32_t v, uint32_t t, uint64_t limit) {
  uint64_t space = 0;
  if (!pow_u64(v, t, space) || space > limit)
    fail(Errc::strength_too_large, "v^t exceeds the occupancy-table limit");
  return space;
}

// Scratch for one worker: a byte per tuple plus the list of touched cells,
// so clearing costs O(rows) instead of O(v^t) per subset.
struct TupleScratch {
  std::vector<uint8_t> seen;
  std::vector<uint32_t> counts;
  std::vector<uint64_t> touched;

  explicit TupleScratch(uint64_t space) : seen(space, 0) {}

  void reset() {
    for (uint64_t idx : touched) {
      seen[idx] = 0;
      if (!counts.empty()) counts[idx] = 0;
    }
    touched.clear();
  }
};

// Mixed-radix tuple index over the given columns in increasing column order.
inline uint64_t tuple_index(const ArrayMatrix& a, uint32_t row, const uint32_t* cols, uint32_t t) {
  uint64_t idx = 0;
  uint64_t scale = 1;
  for (uint32_t j = 0; j < t; ++j) {
    idx += uint64_t{a.at(row, cols[j])} * scale;
    scale *= a.alphabet();
  }
  return idx;
}

bool covers_subset(const ArrayMatrix& a, const uint32_t* cols, uint32_t t, uint64_t space,
                   TupleScratch& scratch) {
  if (a.rows() < space) return false;  // pigeonhole
  scratch.reset();
  uint64_t distinct = 0;
  for (uint32_t r = 0; r < a.rows(); ++r) {
    uint64_t idx = tuple_index(a, r, cols, t);
    if (!scratch.seen[idx]) {
      scratch.seen[idx] = 1;
      scratch.touched.push_back(idx);
      if (++distinct == space) return true;
    }
  }
  return false;
}

// Uniformity check: every tuple exactly lambda times.
bool subset_is_uniform(const ArrayMatrix& a, const uint32_t* cols, uint32_t t, uint64_t space,
                       uint64_t lambda, TupleScratch& scratch) {
  scratch.reset();
  for (uint32_t r = 0; r < a.rows(); ++r) {
    uint64_t idx = tuple_index(a, r, cols, t);
    if (!scratch.seen[idx]) {
      scratch.seen[idx] = 1;
      scratch.touched.push_back(idx);
    }
    if (++scratch.counts[idx] > lambda) return false;
  }
  // counts sum to lambda * space, so none below lambda either
  return scratch.touched.size() == space;
}

bool next_combination(std::vector<uint32_t>& c, uint32_t k) {
  uint32_t t = static_cast<uint32_t>(c.size());
  int i = static_cast<int>(t) - 1;
  while (i >= 0 && c[static_cast<size_t>(i)] == k - t + static_cast<uint32_t>(i)) --i;
  if (i < 0) return false;
  ++c[static_cast<size_t>(i)];
  for (uint32_t j = static_cast<uint32_t>(i) + 1; j < t; ++j) c[j] = c[j - 1] + 1;
  return true;
}

// Combination of the given lexicographic rank (combinatorial number system).
std::vector<uint32_t> unrank_combination(uint64_t rank, uint32_t k, uint32_t t) {
  std::vector<uint32_t> combo(t);
  uint64_t rest = rank;
  uint32_t x = 0;
  for (uint32_t i = 0; i < t; ++i) {
    for (;; ++x) {
      uint64_t block = binomial_u64(k - 1 - x, t - 1 - i);
      if (rest < block) break;
      rest -= block;
    }
    combo[i] = x++;
  }
  return combo;
}

struct EnumSetup {
  uint64_t total = 0;   // C(k, t)
  uint64_t space = 0;   // v^t
};

EnumSetup check_enumeration(const ArrayMatrix& a, uint32_t t, const CoverageOptions& opt) {
  if (t < 1) fail(Errc::bad_argument, "strength must be >= 1");
  if (t > a.cols()) fail(Errc::bad_argument, "strength exceeds the number of columns");
  EnumSetup setup;
  setup.space = tuple_space(a.alphabet(), t, opt.table_limit);
  BigInt total = binomial(a.cols(), t);
  if (total * a.rows() > BigInt(opt.work_budget))
    fail(Errc::budget_exceeded, "subset enumeration exceeds the work budget");
  setup.total = total.convert_to<uint64_t>();
  return setup;
}

// Runs worker(chunk_index, rank_lo, rank_hi) on `threads` contiguous chunks.
template <typename Worker>
void run_chunked(uint64_t total, uint32_t threads, Worker&& worker) {
  uint32_t n = std::max<uint32_t>(1, threads);
  n = static_cast<uint32_t>(std::min<uint64_t>(n, total == 0 ? 1 : total));
  if (n == 1) {
    worker(0, 0, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (uint32_t i = 0; i < n; ++i) {
    uint64_t lo = total * i / n;
    uint64_t hi = total * (i + 1) / n;
    pool.emplace_back([&worker, i, lo, hi] { worker(i, lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

bool covers(const ArrayMatrix& a, const ColumnSet& q, const CoverageOptions& opt) {
  check_column_set(q, a.cols());
  uint64_t space = tuple_space(a.alphabet(), static_cast<uint32_t>(q.indices.size()), opt.table_limit);
  TupleScratch scratch(space);
  return covers_subset(a, q.indices.data(), static_cast<uint32_t>(q.indices.size()), space, scratch);
}

CoverageReport coverage_report(const ArrayMatrix& a, uint32_t t, const CoverageOptions& opt) {
  EnumSetup setup = check_enumeration(a, t, opt);
  uint32_t chunks = std::max<uint32_t>(1, opt.threads);
  chunks = static_cast<uint32_t>(std::min<uint64_t>(chunks, setup.total));

  std::vector<uint64_t> covered_per_chunk(chunks, 0);
  std::vector<std::vector<ColumnSet>> witnesses_per_chunk(chunks);
  const uint64_t cap = opt.collect_all_witnesses ? ~uint64_t{0} : opt.witness_cap;

  run_chunked(setup.total, chunks, [&](uint32_t chunk, uint64_t lo, uint64_t hi) {
    if (lo >= hi) return;
    TupleScratch scratch(setup.space);
    std::vector<uint32_t> combo = unrank_combination(lo, a.cols(), t);
    uint64_t covered = 0;
    auto& local_witnesses = witnesses_per_chunk[chunk];
    for (uint64_t rank = lo; rank < hi; ++rank) {
      if (covers_subset(a, combo.data(), t, setup.space, scratch)) {
        ++covered;
      } else if (local_witnesses.size() < cap) {
        local_witnesses.push_back(ColumnSet{combo});
      }
      if (rank + 1 < hi) next_combination(combo, a.cols());
    }
    covered_per_chunk[chunk] = covered;
  });

  CoverageReport report;
  report.t = t;
  report.total = setup.total;
  for (uint64_t c : covered_per_chunk) report.covered += c;
  report.ratio = setup.total == 0 ? 1.0
                                  : static_cast<double>(report.covered) /
                                        static_cast<double>(setup.total);
  report.exact = true;
  report.stderr_ = 0.0;
  for (auto& chunk_witnesses : witnesses_per_chunk) {
    for (auto& w : chunk_witnesses) {
      if (report.uncovered.size() >= cap) break;
      report.uncovered.push_back(std::move(w));
    }
  }
  return report;
}

CoverageReport coverage_sampled(const ArrayMatrix& a, uint32_t t, uint64_t samples, uint64_t seed,
                                const CoverageOptions& opt) {
  if (samples < 1) fail(Errc::bad_argument, "need at least one sample");
  if (t < 1) fail(Errc::bad_argument, "strength must be >= 1");
  if (t > a.cols()) fail(Errc::bad_argument, "strength exceeds the number of columns");
  uint64_t space = tuple_space(a.alphabet(), t, opt.table_limit);

  uint32_t chunks = std::max<uint32_t>(1, opt.threads);
  chunks = static_cast<uint32_t>(std::min<uint64_t>(chunks, samples));
  std::vector<uint64_t> covered_per_chunk(chunks, 0);
  std::vector<std::vector<ColumnSet>> witnesses_per_chunk(chunks);
  const uint64_t cap = opt.collect_all_witnesses ? ~uint64_t{0} : opt.witness_cap;

  run_chunked(samples, chunks, [&](uint32_t chunk, uint64_t lo, uint64_t hi) {
    if (lo >= hi) return;
    TupleScratch scratch(space);
    std::vector<uint32_t> combo(t);
    auto& local_witnesses = witnesses_per_chunk[chunk];
    for (uint64_t i = lo; i < hi; ++i) {
      // Floyd's subset sampling: a uniform t-subset of [k] per substream.
      Rng rng(Rng::derive(seed, 0x5a3d, i));
      combo.clear();
      for (uint64_t j = a.cols() - t; j < a.cols(); ++j) {
        uint32_t x = static_cast<uint32_t>(rng.below(j + 1));
        if (std::find(combo.begin(), combo.end(), x) != combo.end())
          combo.push_back(static_cast<uint32_t>(j));
        else
          combo.push_back(x);
      }
      std::sort(combo.begin(), combo.end());
      if (covers_subset(a, combo.data(), t, space, scratch)) {
        ++covered_per_chunk[chunk];
      } else if (local_witnesses.size() < cap) {
        local_witnesses.push_back(ColumnSet{combo});
      }
    }
  });

  CoverageReport report;
  report.t = t;
  report.total = binomial(a.cols(), t);
  for (uint64_t c : covered_per_chunk) report.covered += c;
  report.ratio = static_cast<double>(report.covered) / static_cast<double>(samples);
  report.exact = false;
  report.stderr_ = std::sqrt(report.ratio * (1.0 - report.ratio) / static_cast<double>(samples));
  for (auto& chunk_witnesses : witnesses_per_chunk) {
    for (auto& w : chunk_witnesses) {
      if (report.uncovered.size() >= cap) break;
      report.uncovered.push_back(std::move(w));
    }
  }
  return report;
}

VerifyResult verify_covering(const ArrayMatrix& a, uint32_t t, const CoverageOptions& opt) {
  EnumSetup setup = check_enumeration(a, t, opt);
  uint32_t chunks = std::max<uint32_t>(1, opt.threads);
  chunks = static_cast<uint32_t>(std::min<uint64_t>(chunks, setup.total));

  std::atomic<uint64_t> best_rank{~uint64_t{0}};
  std::vector<std::optional<std::pair<uint64_t, ColumnSet>>> found(chunks);

  run_chunked(setup.total, chunks, [&](uint32_t chunk, uint64_t lo, uint64_t hi) {
    if (lo >= hi) return;
    TupleScratch scratch(setup.space);
    std::vector<uint32_t> combo = unrank_combination(lo, a.cols(), t);
    for (uint64_t rank = lo; rank < hi; ++rank) {
      if (best_rank.load(std::memory_order_relaxed) < lo) return;  // earlier chunk already failed
      if (!covers_subset(a, combo.data(), t, setup.space, scratch)) {
        found[chunk] = {rank, ColumnSet{combo}};
        uint64_t seen = best_rank.load(std::memory_order_relaxed);
        while (rank < seen && !best_rank.compare_exchange_weak(seen, rank)) {
        }
        return;  // first failure in this chunk is the only candidate it can contribute
      }
      if (rank + 1 < hi) next_combination(combo, a.cols());
    }
  });

  VerifyResult out;
  uint64_t min_rank = ~uint64_t{0};
  for (auto& f : found) {
    if (f && f->first < min_rank) {
      min_rank = f->first;
      out.witness = f->second;
    }
  }
  out.covering = !out.witness.has_value();
  return out;
}

OaCheckResult verify_oa(const ArrayMatrix& a, uint32_t t, const CoverageOptions& opt) {
  EnumSetup setup = check_enumeration(a, t, opt);
  if (a.rows() % setup.space != 0) return {false, 0};
  const uint64_t lambda = a.rows() / setup.space;

  uint32_t chunks = std::max<uint32_t>(1, opt.threads);
  chunks = static_cast<uint32_t>(std::min<uint64_t>(chunks, setup.total));
  std::atomic<bool> uniform{true};

  run_chunked(setup.total, chunks, [&](uint32_t chunk, uint64_t lo, uint64_t hi) {
    (void)chunk;
    if (lo >= hi) return;
    TupleScratch scratch(setup.space);
    scratch.counts.assign(setup.space, 0);
    std::vector<uint32_t> combo = unrank_combination(lo, a.cols(), t);
    for (uint64_t rank = lo; rank < hi; ++rank) {
      if (!uniform.load(std::memory_order_relaxed)) return;
      if (!subset_is_uniform(a, combo.data(), t, setup.space, lambda, scratch)) {
        uniform.store(false, std::memory_order_relaxed);
        return;
      }
      if (rank + 1 < hi) next_combination(combo, a.cols());
    }
  });

  if (!uniform.load()) return {false, 0};
  return {true, lambda};
}

ArrayMatrix project_alphabet(const ArrayMatrix& a, uint32_t v_target) {
  if (v_target > a.alphabet())
    fail(Errc::alphabet_grow, "projection cannot grow the alphabet");
  if (v_target < 2) fail(Errc::bad_argument, "alphabet size must be >= 2");
  std::vector<uint32_t> data = a.data();
  for (uint32_t& s : data) s = std::min(s, v_target - 1);
  return {a.rows(), a.cols(), v_target, std::move(data)};
}

}  // namespace covarr
