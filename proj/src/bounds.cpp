#include "covarr/bounds.hpp"

#include <cmath>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "covarr/errors.hpp"

namespace covarr {

using Big50 = boost::multiprecision::cpp_bin_float_50;

ExactFraction::ExactFraction(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) fail(Errc::bad_argument, "fraction with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

ExactFraction ExactFraction::operator+(const ExactFraction& o) const {
  return {num_ * o.den_ + o.num_ * den_, den_ * o.den_};
}
ExactFraction ExactFraction::operator-(const ExactFraction& o) const {
  return {num_ * o.den_ - o.num_ * den_, den_ * o.den_};
}
ExactFraction ExactFraction::operator*(const ExactFraction& o) const {
  return {num_ * o.num_, den_ * o.den_};
}
ExactFraction ExactFraction::operator/(const ExactFraction& o) const {
  if (o.num_ == 0) fail(Errc::bad_argument, "division by zero fraction");
  return {num_ * o.den_, den_ * o.num_};
}

ExactFraction ExactFraction::pow(uint64_t e) const {
  ExactFraction out(BigInt(1));
  ExactFraction base = *this;
  while (e > 0) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

double ExactFraction::to_double() const {
  return (Big50(num_) / Big50(den_)).convert_to<double>();
}

long double ExactFraction::to_long_double() const {
  return (Big50(num_) / Big50(den_)).convert_to<long double>();
}

std::string ExactFraction::decimal() const {
  std::ostringstream os;
  os.precision(17);
  os << (Big50(num_) / Big50(den_));
  return os.str();
}

ExactFraction ExactFraction::from_double_exact(double x) {
  if (!std::isfinite(x)) fail(Errc::bad_argument, "non-finite value has no exact fraction");
  if (x == 0.0) return ExactFraction(BigInt(0));
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
  int64_t scaled = static_cast<int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  BigInt num = scaled;
  BigInt den = 1;
  if (exp >= 0)
    num <<= exp;
  else
    den <<= -exp;
  return {std::move(num), std::move(den)};
}

ExactFraction c_tv(uint32_t t, uint64_t v) {
  if (t < 1) fail(Errc::bad_argument, "strength must be >= 1");
  if (v < 2) fail(Errc::bad_argument, "alphabet must be >= 2");
  BigInt vt = bigpow(v, t);
  ExactFraction out(BigInt(1));
  BigInt vi = 1;
  for (uint32_t i = 0; i < t; ++i) {
    out = out * ExactFraction(vt - vi, vt - 1);
    vi *= v;
  }
  return out;
}

CovmaxBounds covmax_bounds(uint32_t t, uint64_t k, uint64_t v) {
  if (k < t) fail(Errc::k_less_than_t, "need k >= t");
  ExactFraction c = c_tv(t, v);
  CovmaxBounds out;
  out.prime_power = is_prime_power(v);
  out.upper = c * ExactFraction(bigpow(k, t), factorial(t));
  if (out.prime_power) out.lower = c * ExactFraction(binomial(k, t));
  return out;
}

BigInt can_upper_new(uint32_t t, uint64_t k, uint64_t v) {
  return BigInt(copies_for_covering(t, k, v)) * bigpow(v, t);
}

double can_upper_gss(uint32_t t, uint64_t k, uint64_t v) {
  if (t < 2 || v < 2 || k < t) fail(Errc::bad_argument, "need t, v >= 2 and k >= t");
  Big50 vt(bigpow(v, t));
  Big50 denom = boost::multiprecision::log(vt / (vt - 1)) / boost::multiprecision::log(Big50(2));
  Big50 numer = Big50(t - 1) * boost::multiprecision::log(Big50(k)) / boost::multiprecision::log(Big50(2));
  return (numer / denom).convert_to<double>();
}

namespace {

double lg_ratio(const BigInt& num, const BigInt& den) {
  // lg(num/den) at 50-digit precision
  return (boost::multiprecision::log(Big50(num) / Big50(den)) /
          boost::multiprecision::log(Big50(2)))
      .convert_to<double>();
}

}  // namespace

BoundsTable d_bound_table(uint32_t t, uint64_t v) {
  if (t < 2 || v < 2) fail(Errc::bad_argument, "need t, v >= 2");
  BoundsTable out;
  out.t = t;
  out.v = v;
  out.c = c_tv(t, v);
  out.prime_power = is_prime_power(v);

  BigInt vt = bigpow(v, t);
  BigInt vt1 = bigpow(v, t - 1);
  out.d_gss = static_cast<double>(t - 1) / lg_ratio(vt, vt - 1);
  out.d_fs = static_cast<double>(v) * (t - 1) / lg_ratio(vt1, vt1 - 1);
  if (out.prime_power) {
    out.d_sc = static_cast<double>(v) * static_cast<double>(v - 1) * (t - 1) /
               lg_ratio(vt1, vt1 - BigInt(v) + 1);
    // 1 - c as an exact fraction, then one log
    ExactFraction one_minus_c = ExactFraction(BigInt(1)) - out.c;
    double lg_inv = lg_ratio(one_minus_c.den(), one_minus_c.num());
    double vt_d = Big50(vt).convert_to<double>();
    out.d_new = (t - 1) * vt_d / lg_inv;
    double simplified_den = 2 * std::log2(static_cast<double>(v)) -
                            std::log2(static_cast<double>(v) + 1);
    out.d_new_simplified = (t - 1) * vt_d / simplified_den;
    out.d_new_large_v = (t - 1) *
                        std::exp(t * std::pow(static_cast<double>(v), -0.474)) * vt_d /
                        simplified_den;
  }
  if (t == 2) out.d_exact_t2 = static_cast<double>(v) / 2.0;
  return out;
}

uint64_t exact_can_strength2_binary(uint64_t k) {
  if (k < 2) fail(Errc::bad_argument, "need k >= 2");
  for (uint64_t n = 2;; ++n) {
    uint64_t half = n / 2;
    if (half == 0) continue;
    if (binomial(n - 1, half - 1) >= k) return n;
  }
}

uint64_t pb_max_columns(uint64_t n, uint64_t v) {
  if (n < 1 || v < 2) fail(Errc::bad_argument, "need n >= 1 and v >= 2");
  return (n - 1) / (v - 1);
}

bool is_prime_power(uint64_t v, uint64_t* p_out, uint32_t* m_out) {
  if (v < 2) return false;
  uint64_t p = v;
  for (uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      p = d;
      break;
    }
  }
  uint64_t rest = v;
  uint32_t m = 0;
  while (rest % p == 0) {
    rest /= p;
    ++m;
  }
  if (rest != 1) return false;
  if (p_out) *p_out = p;
  if (m_out) *m_out = m;
  return true;
}

uint64_t next_prime_power(uint64_t v) {
  if (v < 2) fail(Errc::bad_argument, "need v >= 2");
  for (uint64_t q = v;; ++q)
    if (is_prime_power(q)) return q;
}

uint64_t copies_for_covering(uint32_t t, uint64_t k, uint64_t v) {
  if (t < 2) fail(Errc::bad_argument, "strength must be >= 2");
  if (k < t) fail(Errc::k_less_than_t, "need k >= t");
  if (!is_prime_power(v))
    fail(Errc::not_prime_power, std::to_string(v) + " is not a prime power");
  ExactFraction c = c_tv(t, v);
  ExactFraction one_minus_c = ExactFraction(BigInt(1)) - c;
  Big50 lg2 = boost::multiprecision::log(Big50(2));
  Big50 denom =
      boost::multiprecision::log(Big50(one_minus_c.den()) / Big50(one_minus_c.num())) / lg2;
  Big50 numer = Big50(t - 1) * boost::multiprecision::log(Big50(k)) / lg2 +
                boost::multiprecision::log(boost::multiprecision::exp(Big50(1)) * t) / lg2;
  Big50 r = boost::multiprecision::ceil(numer / denom);
  uint64_t out = r.convert_to<uint64_t>();
  return out < 1 ? 1 : out;
}

uint64_t copies_for_almost(uint64_t q, double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 1.0)
    fail(Errc::bad_epsilon, "epsilon must lie in (0, 1]");
  if (q < 2) fail(Errc::bad_argument, "need q >= 2");
  ExactFraction eps = ExactFraction::from_double_exact(epsilon);
  ExactFraction step(BigInt(q + 1), BigInt(q) * BigInt(q));
  ExactFraction acc = step;
  for (uint64_t r = 1;; ++r) {
    if (acc <= eps) return r;
    acc = acc * step;
    if (r > 1'000'000) fail(Errc::bad_epsilon, "epsilon too small to satisfy");
  }
}

AcanBounds acan_bounds(uint32_t t, uint64_t v, double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 1.0)
    fail(Errc::bad_epsilon, "epsilon must lie in (0, 1]");
  if (t < 2 || v < 2) fail(Errc::bad_argument, "need t, v >= 2");
  AcanBounds out;
  double vt = Big50(bigpow(v, t)).convert_to<double>();
  out.scdv = vt * std::log(std::pow(static_cast<double>(v), static_cast<double>(t) - 1) / epsilon);
  if (is_prime_power(v)) {
    uint64_t r = copies_for_almost(v, epsilon);
    out.copies = r;
    out.new_bound = BigInt(r) * bigpow(v, t);
    out.scdv_pp =
        vt * std::log(2 * std::pow(static_cast<double>(v), static_cast<double>(t) - 2) / epsilon) +
        static_cast<double>(v);
  }
  return out;
}

}  // namespace covarr
