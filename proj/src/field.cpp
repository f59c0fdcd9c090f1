#include "covarr/field.hpp"

#include <algorithm>
#include <string>

namespace covarr {
namespace {

using Poly = std::vector<uint32_t>;  // little-endian, no trailing-zero trimming required

int degree(const Poly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;  // zero polynomial
}

// Remainder of f modulo the monic polynomial g, over F_p.
Poly poly_mod(Poly f, const Poly& g, uint64_t p) {
  const int dg = degree(g);
  for (int i = degree(f); i >= dg; i = degree(f)) {
    const uint64_t coef = f[i];  // g is monic, no leading-coefficient division
    if (coef != 0) {
      for (int j = 0; j <= dg; ++j) {
        uint64_t sub = coef * g[j] % p;
        uint64_t cur = f[i - dg + j];
        f[i - dg + j] = static_cast<uint32_t>((cur + p - sub) % p);
      }
    }
  }
  f.resize(std::max(dg, 1));
  return f;
}

Poly poly_mul(const Poly& a, const Poly& b, uint64_t p) {
  Poly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      out[i + j] = static_cast<uint32_t>((out[i + j] + uint64_t{a[i]} * b[j]) % p);
    }
  }
  return out;
}

// Extended Euclid over F_p[x]: returns (gcd, s) with s*a ≡ gcd (mod g).
struct EgcdResult {
  Poly gcd;
  Poly s;
};

uint64_t inv_mod_p(uint64_t a, uint64_t p) {
  // extended Euclid on integers
  int64_t t = 0, new_t = 1;
  int64_t r = static_cast<int64_t>(p), new_r = static_cast<int64_t>(a % p);
  while (new_r != 0) {
    int64_t quot = r / new_r;
    std::swap(t -= quot * new_t, new_t);
    std::swap(r -= quot * new_r, new_r);
  }
  if (t < 0) t += static_cast<int64_t>(p);
  return static_cast<uint64_t>(t);
}

Poly poly_trim(Poly f) {
  int d = degree(f);
  f.resize(static_cast<size_t>(std::max(d, 0)) + 1);
  return f;
}

Poly poly_scale(Poly f, uint64_t c, uint64_t p) {
  for (auto& x : f) x = static_cast<uint32_t>(uint64_t{x} * c % p);
  return f;
}

Poly poly_sub_scaled(Poly a, const Poly& b, uint64_t c, uint64_t p, size_t shift) {
  if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
  for (size_t j = 0; j < b.size(); ++j) {
    uint64_t sub = uint64_t{b[j]} * c % p;
    a[j + shift] = static_cast<uint32_t>((a[j + shift] + p - sub) % p);
  }
  return a;
}

// Polynomial division with remainder: a = q*b + r.
void poly_divmod(const Poly& a, const Poly& b, uint64_t p, Poly& quot, Poly& rem) {
  rem = poly_trim(a);
  int db = degree(b);
  quot.assign(std::max<int>(degree(rem) - db + 1, 1), 0);
  uint64_t lead_inv = inv_mod_p(b[static_cast<size_t>(db)], p);
  while (degree(rem) >= db) {
    int dr = degree(rem);
    uint64_t c = uint64_t{rem[static_cast<size_t>(dr)]} * lead_inv % p;
    size_t shift = static_cast<size_t>(dr - db);
    quot[shift] = static_cast<uint32_t>((quot[shift] + c) % p);
    rem = poly_sub_scaled(std::move(rem), b, c, p, shift);
    rem = poly_trim(std::move(rem));
  }
}

EgcdResult poly_egcd(Poly a, Poly b, uint64_t p) {
  Poly s0{1}, s1{0};
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (degree(b) >= 0) {
    Poly quot, rem;
    poly_divmod(a, b, p, quot, rem);
    a = std::move(b);
    b = poly_trim(std::move(rem));
    // s0 - quot*s1
    Poly qs = poly_mul(quot, s1, p);
    if (s0.size() < qs.size()) s0.resize(qs.size(), 0);
    for (size_t j = 0; j < qs.size(); ++j)
      s0[j] = static_cast<uint32_t>((s0[j] + p - qs[j]) % p);
    std::swap(s0, s1);
  }
  return {poly_trim(std::move(a)), poly_trim(std::move(s0))};
}

// Irreducibility over F_p by exhaustive trial division: no monic divisor of
// degree 1..deg/2 divides f.
bool is_irreducible(const Poly& f, uint64_t p) {
  int d = degree(f);
  for (int dd = 1; dd <= d / 2; ++dd) {
    // iterate monic divisors of degree dd: free coefficients c_0..c_{dd-1}
    uint64_t count = 1;
    for (int i = 0; i < dd; ++i) count *= p;
    for (uint64_t code = 0; code < count; ++code) {
      Poly g(static_cast<size_t>(dd) + 1, 0);
      uint64_t rest = code;
      for (int i = 0; i < dd; ++i) {
        g[static_cast<size_t>(i)] = static_cast<uint32_t>(rest % p);
        rest /= p;
      }
      g[static_cast<size_t>(dd)] = 1;
      if (degree(poly_mod(f, g, p)) < 0) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::make(uint64_t p, uint32_t m) {
  if (!is_prime_u64(p)) fail(Errc::non_prime, "p = " + std::to_string(p) + " is not prime");
  if (m < 1) fail(Errc::degree_out_of_range, "extension degree must be >= 1");
  uint64_t q = 1;
  for (uint32_t i = 0; i < m; ++i) {
    if (q > kMaxOrder / p) fail(Errc::order_too_large, "p^m exceeds the configured maximum");
    q *= p;
  }
  if (q > kMaxOrder) fail(Errc::order_too_large, "p^m exceeds the configured maximum");

  FieldSpec spec;
  spec.p_ = p;
  spec.m_ = m;
  spec.q_ = q;
  if (m == 1) {
    spec.modulus_ = {0, 1};  // the polynomial x; arithmetic is plain mod p
    return spec;
  }
  // Scan monic degree-m candidates in lexicographic order of the coefficient
  // list read from the highest degree down, i.e. (c_{m-1}, ..., c_0) ascending.
  uint64_t count = 1;
  for (uint32_t i = 0; i < m; ++i) count *= p;
  for (uint64_t code = 0; code < count; ++code) {
    Poly f(m + 1, 0);
    f[m] = 1;
    // c_{m-1} takes the most significant digit of code, so it varies slowest.
    uint64_t rest = code;
    for (uint32_t i = 0; i < m; ++i) {
      f[i] = static_cast<uint32_t>(rest % p);
      rest /= p;
    }
    if (is_irreducible(f, p)) {
      spec.modulus_ = f;
      return spec;
    }
  }
  fail(Errc::degree_out_of_range, "no irreducible polynomial found (unreachable)");
}

void FieldSpec::check_member(const FieldElem& a) const {
  if (a.coeffs.size() != m_)
    fail(Errc::mixed_fields, "element width " + std::to_string(a.coeffs.size()) +
                                 " does not match field degree " + std::to_string(m_));
  for (uint32_t c : a.coeffs)
    if (c >= p_) fail(Errc::mixed_fields, "coefficient out of range for characteristic");
}

FieldElem FieldSpec::element(uint64_t index) const {
  if (index >= q_) fail(Errc::bad_argument, "element index out of range");
  FieldElem e;
  e.index = index;
  e.coeffs.resize(m_);
  for (uint32_t i = 0; i < m_; ++i) {
    e.coeffs[i] = static_cast<uint32_t>(index % p_);
    index /= p_;
  }
  return e;
}

FieldElem FieldSpec::add(const FieldElem& a, const FieldElem& b) const {
  check_member(a);
  check_member(b);
  FieldElem out;
  out.coeffs.resize(m_);
  uint64_t idx = 0, scale = 1;
  for (uint32_t i = 0; i < m_; ++i) {
    out.coeffs[i] = static_cast<uint32_t>((uint64_t{a.coeffs[i]} + b.coeffs[i]) % p_);
    idx += out.coeffs[i] * scale;
    scale *= p_;
  }
  out.index = idx;
  return out;
}

FieldElem FieldSpec::neg(const FieldElem& a) const {
  check_member(a);
  FieldElem out;
  out.coeffs.resize(m_);
  uint64_t idx = 0, scale = 1;
  for (uint32_t i = 0; i < m_; ++i) {
    out.coeffs[i] = static_cast<uint32_t>((p_ - a.coeffs[i]) % p_);
    idx += out.coeffs[i] * scale;
    scale *= p_;
  }
  out.index = idx;
  return out;
}

FieldElem FieldSpec::mul(const FieldElem& a, const FieldElem& b) const {
  check_member(a);
  check_member(b);
  Poly prod = poly_mul(a.coeffs, b.coeffs, p_);
  Poly rem = m_ == 1 ? Poly{static_cast<uint32_t>(prod[0] % p_)} : poly_mod(std::move(prod), modulus_, p_);
  rem.resize(m_, 0);
  FieldElem out;
  out.coeffs = std::move(rem);
  uint64_t idx = 0, scale = 1;
  for (uint32_t i = 0; i < m_; ++i) {
    idx += out.coeffs[i] * scale;
    scale *= p_;
  }
  out.index = idx;
  return out;
}

FieldElem FieldSpec::inv(const FieldElem& a) const {
  check_member(a);
  if (a.index == 0) fail(Errc::zero_inverse, "zero has no multiplicative inverse");
  if (q_ <= (uint64_t{1} << 12)) {
    for (uint64_t i = 1; i < q_; ++i) {
      FieldElem cand = element(i);
      if (mul(a, cand).index == 1) return cand;
    }
    fail(Errc::zero_inverse, "no inverse found (field construction broken)");
  }
  if (m_ == 1) {
    return element(inv_mod_p(a.index, p_));
  }
  EgcdResult eg = poly_egcd(a.coeffs, modulus_, p_);
  // gcd is a nonzero constant; normalize s by its inverse
  uint64_t g0 = eg.gcd[0] % p_;
  Poly s = poly_scale(std::move(eg.s), inv_mod_p(g0, p_), p_);
  s = poly_mod(std::move(s), modulus_, p_);
  s.resize(m_, 0);
  FieldElem out;
  out.coeffs = std::move(s);
  uint64_t idx = 0, scale = 1;
  for (uint32_t i = 0; i < m_; ++i) {
    idx += out.coeffs[i] * scale;
    scale *= p_;
  }
  out.index = idx;
  return out;
}

FieldElem FieldSpec::dot(const std::vector<FieldElem>& u, const std::vector<FieldElem>& w) const {
  if (u.size() != w.size())
    fail(Errc::length_mismatch, "dot product of vectors with different lengths");
  FieldElem acc = zero();
  for (size_t i = 0; i < u.size(); ++i) acc = add(acc, mul(u[i], w[i]));
  return acc;
}

}  // namespace covarr
