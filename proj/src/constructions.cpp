#include "covarr/constructions.hpp"

#include <string>

#include "covarr/rng.hpp"

namespace covarr {

namespace {

constexpr uint64_t kMaxRows = uint64_t{1} << 24;       // q^t rows
constexpr uint64_t kMaxCells = uint64_t{1} << 28;      // rows * cols

uint64_t checked_rows(uint64_t q, uint32_t t) {
  uint64_t rows = 0;
  if (!pow_u64(q, t, rows) || rows > kMaxRows)
    fail(Errc::order_too_large, "q^t exceeds the construction budget");
  return rows;
}

// Advances a little-endian digit vector through [0,q)^t in lexicographic
// order of the index vector (leftmost coordinate most significant).
bool next_vector(std::vector<uint64_t>& digits, uint64_t q) {
  for (size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < q) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace

std::vector<ProjectivePoint> projective_points(const FieldSpec& field, uint32_t t) {
  if (t < 1) fail(Errc::bad_argument, "strength must be >= 1");
  uint64_t rows = checked_rows(field.q(), t);
  uint64_t count = (rows - 1) / (field.q() - 1);
  if (count > kMaxCells) fail(Errc::order_too_large, "too many projective points");

  std::vector<ProjectivePoint> points;
  points.reserve(count);
  // Leading-zero prefix first: points with more leading zeros are
  // lexicographically smaller, and within a fixed leading position the free
  // suffix runs through [0,q)^(t-1-lead) in lexicographic order.
  for (uint32_t lead = t; lead-- > 0;) {
    std::vector<uint64_t> suffix(t - 1 - lead, 0);
    bool more = true;
    while (more) {
      ProjectivePoint pt;
      pt.coords.reserve(t);
      for (uint32_t i = 0; i < lead; ++i) pt.coords.push_back(field.zero());
      pt.coords.push_back(field.one());
      for (uint64_t digit : suffix) pt.coords.push_back(field.element(digit));
      points.push_back(std::move(pt));
      more = !suffix.empty() && next_vector(suffix, field.q());
      if (suffix.empty()) break;
    }
  }
  return points;
}

bool linearly_independent(const std::vector<ProjectivePoint>& points, const FieldSpec& field) {
  if (points.empty()) fail(Errc::bad_argument, "need at least one vector");
  const size_t t = points.front().coords.size();
  if (points.size() > t)
    fail(Errc::too_many_vectors, "more than t vectors are always dependent");
  for (const auto& p : points)
    if (p.coords.size() != t) fail(Errc::length_mismatch, "points of mixed dimension");

  // Gaussian elimination on a copy; rank == number of rows means independent.
  std::vector<std::vector<FieldElem>> m;
  m.reserve(points.size());
  for (const auto& p : points) m.push_back(p.coords);

  size_t rank = 0;
  for (size_t col = 0; col < t && rank < m.size(); ++col) {
    size_t pivot = rank;
    while (pivot < m.size() && field.is_zero(m[pivot][col])) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    FieldElem inv = field.inv(m[rank][col]);
    for (size_t j = 0; j < t; ++j) m[rank][j] = field.mul(m[rank][j], inv);
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == rank || field.is_zero(m[r][col])) continue;
      FieldElem factor = m[r][col];
      for (size_t j = 0; j < t; ++j)
        m[r][j] = field.sub(m[r][j], field.mul(factor, m[rank][j]));
    }
    ++rank;
  }
  return rank == m.size();
}

ArrayMatrix build_a_opt(const FieldSpec& field, uint32_t t) {
  if (t < 1) fail(Errc::bad_argument, "strength must be >= 1");
  uint64_t rows = checked_rows(field.q(), t);
  std::vector<ProjectivePoint> points = projective_points(field, t);
  uint64_t cols = points.size();
  if (rows * cols > kMaxCells) fail(Errc::order_too_large, "array exceeds the cell budget");

  ArrayMatrix a(static_cast<uint32_t>(rows), static_cast<uint32_t>(cols),
                static_cast<uint32_t>(field.q()));
  std::vector<uint64_t> digits(t, 0);
  std::vector<FieldElem> y;
  y.reserve(t);
  for (uint32_t r = 0;; ++r) {
    y.clear();
    for (uint64_t d : digits) y.push_back(field.element(d));
    for (uint32_t c = 0; c < cols; ++c)
      a.set(r, c, static_cast<uint32_t>(field.dot(y, points[c].coords).index));
    if (!next_vector(digits, field.q())) break;
  }
  return a;
}

BigInt cov_a_opt_exact(const FieldSpec& field, uint32_t t) {
  if (t < 1) fail(Errc::bad_argument, "strength must be >= 1");
  checked_rows(field.q(), t);
  BigInt qt = bigpow(field.q(), t);
  BigInt out = 1;
  BigInt qi = 1;
  for (uint32_t i = 0; i < t; ++i) {
    out *= (qt - qi) / BigInt(field.q() - 1);  // exact: q^i (q^{t-i} - 1) / (q - 1)
    qi *= field.q();
  }
  BigInt tf = factorial(t);
  if (out % tf != 0) fail(Errc::bad_argument, "non-integer coverage count (unreachable)");
  return out / tf;
}

ArrayMatrix build_block(uint32_t v, uint32_t t, uint32_t k) {
  if (v < 2) fail(Errc::bad_argument, "alphabet size must be >= 2");
  if (t < 1 || k < t) fail(Errc::k_less_than_t, "need k >= t >= 1");
  uint64_t rows = checked_rows(v, t);
  if (rows * k > kMaxCells) fail(Errc::order_too_large, "array exceeds the cell budget");

  // Near-equal contiguous blocks; block b owns columns [start_b, start_{b+1}).
  std::vector<uint32_t> block_of(k);
  uint32_t col = 0;
  for (uint32_t b = 0; b < t; ++b) {
    uint32_t size = k / t + (b < k % t ? 1 : 0);
    for (uint32_t j = 0; j < size; ++j) block_of[col++] = b;
  }

  ArrayMatrix a(static_cast<uint32_t>(rows), k, v);
  std::vector<uint64_t> values(t, 0);
  for (uint32_t r = 0;; ++r) {
    for (uint32_t c = 0; c < k; ++c)
      a.set(r, c, static_cast<uint32_t>(values[block_of[c]]));
    if (!next_vector(values, v)) break;
  }
  return a;
}

ArrayMatrix build_random(uint32_t v, uint32_t n, uint32_t k, uint64_t seed) {
  if (v < 2) fail(Errc::bad_argument, "alphabet size must be >= 2");
  if (n < 1 || k < 1) fail(Errc::bad_argument, "dimensions must be positive");
  Rng rng(Rng::derive(seed, 0x7a2d));
  std::vector<uint32_t> data(size_t{n} * k);
  for (auto& s : data) s = static_cast<uint32_t>(rng.below(v));
  return {n, k, v, std::move(data)};
}

ArrayMatrix blow_up_with_assignment(const ArrayMatrix& base,
                                    const std::vector<uint32_t>& assignment) {
  ArrayMatrix out(base.rows(), static_cast<uint32_t>(assignment.size()), base.alphabet());
  for (uint32_t j = 0; j < assignment.size(); ++j)
    if (assignment[j] >= base.cols())
      fail(Errc::bad_argument, "assignment entry out of range");
  for (uint32_t r = 0; r < base.rows(); ++r)
    for (uint32_t j = 0; j < assignment.size(); ++j) out.set(r, j, base.at(r, assignment[j]));
  return out;
}

BlowupResult blow_up(const ArrayMatrix& base, uint32_t k, BlowupMode mode, uint64_t seed) {
  if (k < 1) fail(Errc::bad_argument, "need k >= 1");
  const uint32_t base_cols = base.cols();
  BlowupPlan plan;
  plan.base_cols = base_cols;
  plan.mode = mode;
  plan.seed = seed;
  plan.assignment.resize(k);
  if (mode == BlowupMode::balanced) {
    uint32_t col = 0;
    for (uint32_t b = 0; b < base_cols && col < k; ++b) {
      uint32_t size = k / base_cols + (b < k % base_cols ? 1 : 0);
      for (uint32_t j = 0; j < size && col < k; ++j) plan.assignment[col++] = b;
    }
  } else {
    for (uint32_t j = 0; j < k; ++j)
      plan.assignment[j] = static_cast<uint32_t>(Rng(Rng::derive(seed, 0xb10c, j)).below(base_cols));
  }
  ArrayMatrix array = blow_up_with_assignment(base, plan.assignment);
  return {std::move(array), std::move(plan)};
}

}  // namespace covarr
