#pragma once

#include <cstdint>
#include <vector>

#include "covarr/errors.hpp"

namespace covarr {

/// Element of GF(p^m): little-endian polynomial coefficients over [0, p)
/// plus the cached integer index sum(coeffs[i] * p^i). Index 0 is the
/// additive identity, index 1 the multiplicative identity. Array symbols
/// always carry the index, never the coefficient list.
struct FieldElem {
  std::vector<uint32_t> coeffs;
  uint64_t index = 0;

  bool operator==(const FieldElem&) const = default;
};

/// GF(p^m) with a canonical modulus: the lexicographically smallest monic
/// irreducible of degree m over F_p, coefficient lists compared from the
/// highest degree down. Construction is deterministic, instances immutable,
/// and every operation is pure, so concurrent use needs no synchronization.
class FieldSpec {
 public:
  static constexpr uint64_t kMaxOrder = uint64_t{1} << 20;

  static FieldSpec make(uint64_t p, uint32_t m);

  uint64_t p() const { return p_; }
  uint32_t m() const { return m_; }
  uint64_t q() const { return q_; }

  /// Little-endian coefficients, length m+1, monic. For m = 1 this is "x".
  const std::vector<uint32_t>& modulus() const { return modulus_; }

  FieldElem element(uint64_t index) const;
  FieldElem zero() const { return element(0); }
  FieldElem one() const { return element(1); }

  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const { return add(a, neg(b)); }
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  /// Multiplicative inverse; exhaustive search for q <= 2^12, extended
  /// Euclid beyond that. Throws Errc::zero_inverse on the zero element.
  FieldElem inv(const FieldElem& a) const;
  /// sum_i u[i] * w[i]; throws Errc::length_mismatch on unequal lengths.
  FieldElem dot(const std::vector<FieldElem>& u, const std::vector<FieldElem>& w) const;

  bool is_zero(const FieldElem& a) const { return a.index == 0; }

 private:
  FieldSpec() = default;
  void check_member(const FieldElem& a) const;

  uint64_t p_ = 0;
  uint32_t m_ = 0;
  uint64_t q_ = 0;
  std::vector<uint32_t> modulus_;
};

/// Deterministic trial-division primality test (intended range: p <= 2^20).
bool is_prime_u64(uint64_t n);

}  // namespace covarr
