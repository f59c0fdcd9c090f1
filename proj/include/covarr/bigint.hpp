#pragma once

#include <cstdint>
#include <boost/multiprecision/cpp_int.hpp>

namespace covarr {

using BigInt = boost::multiprecision::cpp_int;

/// Exact binomial coefficient; 0 when r > n. Arguments are small indices,
/// the result can be arbitrarily large.
BigInt binomial(uint64_t n, uint64_t r);

/// Binomial coefficient known to fit in uint64 (enumeration ranks). Throws
/// Errc::order_too_large on overflow.
uint64_t binomial_u64(uint64_t n, uint64_t r);

/// v^e as a BigInt.
BigInt bigpow(uint64_t v, uint64_t e);

/// n! as a BigInt.
BigInt factorial(uint64_t n);

/// v^e when it fits uint64, otherwise nullopt semantics via bool return.
bool pow_u64(uint64_t v, uint64_t e, uint64_t& out);

}  // namespace covarr
