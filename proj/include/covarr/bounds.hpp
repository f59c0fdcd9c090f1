#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "covarr/bigint.hpp"

namespace covarr {

/// Reduced fraction over arbitrary-precision integers: gcd(num, den) = 1,
/// den > 0. Every closed-form bound is evaluated through this type first and
/// converted to floating point only where a logarithm is unavoidable.
class ExactFraction {
 public:
  ExactFraction() : num_(0), den_(1) {}
  ExactFraction(BigInt num, BigInt den);
  explicit ExactFraction(const BigInt& n) : num_(n), den_(1) {}
  explicit ExactFraction(int64_t n) : num_(n), den_(1) {}

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  ExactFraction operator+(const ExactFraction& o) const;
  ExactFraction operator-(const ExactFraction& o) const;
  ExactFraction operator*(const ExactFraction& o) const;
  ExactFraction operator/(const ExactFraction& o) const;
  ExactFraction pow(uint64_t e) const;

  bool operator==(const ExactFraction& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator<(const ExactFraction& o) const { return num_ * o.den_ < o.num_ * den_; }
  bool operator<=(const ExactFraction& o) const { return num_ * o.den_ <= o.num_ * den_; }
  bool operator>(const ExactFraction& o) const { return o < *this; }
  bool operator>=(const ExactFraction& o) const { return o <= *this; }

  bool is_integer() const { return den_ == 1; }
  double to_double() const;
  long double to_long_double() const;
  /// Decimal rendering with up to 17 significant digits (shortest is not
  /// attempted; output is deterministic).
  std::string decimal() const;

  /// Exact dyadic decomposition of a finite double (every double is rational).
  static ExactFraction from_double_exact(double x);

 private:
  BigInt num_;
  BigInt den_;
};

/// c_{t,v} = prod_{i=0}^{t-1} (v^t - v^i) / (v^t - 1), exactly.
ExactFraction c_tv(uint32_t t, uint64_t v);

struct CovmaxBounds {
  std::optional<ExactFraction> lower;  // c * C(k,t); prime powers only
  ExactFraction upper;                 // c * k^t / t!
  bool prime_power = false;
};

/// Bounds on the maximum number of t-sets coverable with v^t rows.
CovmaxBounds covmax_bounds(uint32_t t, uint64_t k, uint64_t v);

/// Covering-array row bound r * v^t from the concatenation argument
/// (prime powers only; throws Errc::not_prime_power otherwise).
BigInt can_upper_new(uint32_t t, uint64_t k, uint64_t v);

/// Leading term (t-1) lg k / lg(v^t / (v^t - 1)); the o(1) factor is not added.
double can_upper_gss(uint32_t t, uint64_t k, uint64_t v);

struct BoundsTable {
  uint32_t t = 0;
  uint64_t v = 0;
  ExactFraction c;  // c_{t,v}
  bool prime_power = false;
  double d_gss = 0;
  double d_fs = 0;
  std::optional<double> d_sc;              // prime powers only; log taken base 2
  std::optional<double> d_new;             // (t-1) v^t / lg(1/(1-c)), prime powers
  std::optional<double> d_new_simplified;  // (t-1) v^t / (2 lg v - lg(v+1)), prime powers
  std::optional<double> d_new_large_v;     // formula value only; holds for large v
  std::optional<double> d_exact_t2;        // v/2, the exact strength-2 limit
};

BoundsTable d_bound_table(uint32_t t, uint64_t v);

/// Smallest N with k <= C(N-1, floor(N/2)-1): the exact binary strength-2
/// covering array number. Exact big-integer scan.
uint64_t exact_can_strength2_binary(uint64_t k);

/// floor((n-1)/(v-1)): the strength-2 orthogonal-array column maximum.
uint64_t pb_max_columns(uint64_t n, uint64_t v);

/// Least prime power q >= v, by scan with trial division and perfect-power
/// detection.
uint64_t next_prime_power(uint64_t v);

/// True iff v = p^m for a prime p; optionally reports (p, m).
bool is_prime_power(uint64_t v, uint64_t* p_out = nullptr, uint32_t* m_out = nullptr);

/// Copies of the v^t-row optimal array needed for full coverage at (t, k):
/// ceil(((t-1) lg k + lg(e t)) / lg(1/(1 - c_{t,v}))). Evaluated at 50-digit
/// precision so the ceiling cannot be lost to rounding. Prime powers only.
uint64_t copies_for_covering(uint32_t t, uint64_t k, uint64_t v);

/// Copies needed so the expected uncovered fraction drops below eps:
/// the least r >= 1 with ((q+1)/q^2)^r <= eps, decided in exact rational
/// arithmetic (eps enters as the exact dyadic value of the double).
uint64_t copies_for_almost(uint64_t q, double epsilon);

struct AcanBounds {
  std::optional<BigInt> new_bound;  // v^t * copies_for_almost(v, eps); prime powers
  std::optional<uint64_t> copies;
  double scdv = 0;                  // v^t ln(v^{t-1}/eps)
  std::optional<double> scdv_pp;    // v^t ln(2 v^{t-2}/eps) + v; prime powers
};

AcanBounds acan_bounds(uint32_t t, uint64_t v, double epsilon);

}  // namespace covarr
