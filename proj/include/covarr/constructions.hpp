#pragma once

#include <cstdint>
#include <vector>

#include "covarr/array.hpp"
#include "covarr/bigint.hpp"
#include "covarr/field.hpp"

namespace covarr {

/// Canonical representative of a 1-dimensional subspace of F_q^t: the first
/// (lowest-index) nonzero coordinate equals 1, so two distinct canonical
/// points are never scalar multiples of each other.
struct ProjectivePoint {
  std::vector<FieldElem> coords;
};

/// All canonical projective points of F_q^t in lexicographic order of their
/// index vectors. Exactly (q^t - 1)/(q - 1) of them.
std::vector<ProjectivePoint> projective_points(const FieldSpec& field, uint32_t t);

/// Rank test over GF(q) by Gaussian elimination. Requires 1 <= |points| <= t;
/// more than t vectors is always dependent and raises Errc::too_many_vectors
/// to surface caller bugs.
bool linearly_independent(const std::vector<ProjectivePoint>& points, const FieldSpec& field);

/// The q^t x (q^t-1)/(q-1) array whose rows are indexed by the vectors of
/// F_q^t in lexicographic index order, columns by projective_points order,
/// with entry = index of the scalar product of row vector and column point.
ArrayMatrix build_a_opt(const FieldSpec& field, uint32_t t);

/// Closed-form count of covered t-sets of build_a_opt:
/// (1/t!) * prod_{i=0}^{t-1} (q^t - q^i)/(q - 1), in exact integer arithmetic.
BigInt cov_a_opt_exact(const FieldSpec& field, uint32_t t);

/// v^t rows, constant on each of t near-equal contiguous column blocks
/// (sizes differ by at most one), enumerating all block-value combinations in
/// lexicographic order.
ArrayMatrix build_block(uint32_t v, uint32_t t, uint32_t k);

/// Entries i.i.d. uniform on [0, v), deterministic per seed.
ArrayMatrix build_random(uint32_t v, uint32_t n, uint32_t k, uint64_t seed);

enum class BlowupMode { balanced, random };

/// Which base column each result column copies. Balanced mode uses contiguous
/// near-equal parts; random mode draws each column's source i.i.d. uniform.
struct BlowupPlan {
  uint32_t base_cols = 0;
  std::vector<uint32_t> assignment;  // length k, entries in [0, base_cols)
  BlowupMode mode = BlowupMode::balanced;
  uint64_t seed = 0;
};

struct BlowupResult {
  ArrayMatrix array;
  BlowupPlan plan;
};

BlowupResult blow_up(const ArrayMatrix& base, uint32_t k, BlowupMode mode, uint64_t seed = 0);

/// Applies an existing assignment (used by the concatenation builder so
/// resampled columns reuse the same machinery).
ArrayMatrix blow_up_with_assignment(const ArrayMatrix& base, const std::vector<uint32_t>& assignment);

}  // namespace covarr
