#include "covarr/bigint.hpp"

#include "covarr/errors.hpp"

namespace covarr {

BigInt binomial(uint64_t n, uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  BigInt out = 1;
  for (uint64_t i = 0; i < r; ++i) {
    out *= (n - i);
    out /= (i + 1);  // exact at every step
  }
  return out;
}

uint64_t binomial_u64(uint64_t n, uint64_t r) {
  BigInt b = binomial(n, r);
  if (b > BigInt(~uint64_t{0}))
    fail(Errc::order_too_large, "binomial coefficient does not fit in 64 bits");
  return b.convert_to<uint64_t>();
}

BigInt bigpow(uint64_t v, uint64_t e) {
  BigInt out = 1;
  BigInt base = v;
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

BigInt factorial(uint64_t n) {
  BigInt out = 1;
  for (uint64_t i = 2; i <= n; ++i) out *= i;
  return out;
}

bool pow_u64(uint64_t v, uint64_t e, uint64_t& out) {
  out = 1;
  for (uint64_t i = 0; i < e; ++i) {
    if (v != 0 && out > ~uint64_t{0} / v) return false;
    out *= v;
  }
  return true;
}

}  // namespace covarr
