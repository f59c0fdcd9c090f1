#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <utility>
#include <vector>

#include "covarr/field.hpp"

using namespace covarr;

namespace {

// Oracle: does the monic quadratic x^2 + b x + c have a root in F_p?
bool quadratic_has_root(uint64_t p, uint64_t b, uint64_t c) {
  for (uint64_t x = 0; x < p; ++x)
    if ((x * x + b * x + c) % p == 0) return true;
  return false;
}

std::vector<FieldSpec> small_fields() {
  std::vector<FieldSpec> fields;
  for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61}) {
    uint64_t q = p;
    uint32_t m = 1;
    while (q <= 64) {
      fields.push_back(FieldSpec::make(p, m));
      ++m;
      q *= p;
    }
  }
  return fields;
}

}  // namespace

TEST_CASE("prime field modulus is x and arithmetic is mod p") {
  FieldSpec f2 = FieldSpec::make(2, 1);
  CHECK(f2.q() == 2);
  CHECK(f2.modulus() == std::vector<uint32_t>{0, 1});
  FieldSpec f3 = FieldSpec::make(3, 1);
  CHECK(f3.add(f3.element(2), f3.element(2)).index == 1);
}

TEST_CASE("canonical modulus for GF(4) is x^2+x+1") {
  // oracle: every other monic quadratic over F_2 has a root, so x^2+x+1 is
  // the only irreducible and necessarily the lexicographically smallest
  for (uint64_t b = 0; b < 2; ++b)
    for (uint64_t c = 0; c < 2; ++c)
      if (!(b == 1 && c == 1)) CHECK(quadratic_has_root(2, b, c));
  CHECK_FALSE(quadratic_has_root(2, 1, 1));

  FieldSpec f4 = FieldSpec::make(2, 2);
  CHECK(f4.modulus() == std::vector<uint32_t>{1, 1, 1});
}

TEST_CASE("canonical modulus for GF(9) is x^2+1") {
  // squares mod 3 are {0, 1}, so -1 = 2 has no square root and x^2+1 is
  // irreducible; it is also first in the high-degree-down lexicographic scan
  CHECK_FALSE(quadratic_has_root(3, 0, 1));
  FieldSpec f9 = FieldSpec::make(3, 2);
  CHECK(f9.modulus() == std::vector<uint32_t>{1, 0, 1});
}

TEST_CASE("make_field rejects bad parameters") {
  CHECK_THROWS_WITH_AS(FieldSpec::make(6, 1), doctest::Contains("not prime"), Error);
  CHECK_THROWS_AS(FieldSpec::make(2, 0), Error);
  CHECK_THROWS_AS(FieldSpec::make(2, 21), Error);  // 2^21 > 2^20
}

TEST_CASE("make_field is deterministic") {
  const std::vector<std::pair<uint64_t, uint32_t>> cases{{2, 4}, {3, 3}, {5, 2}, {7, 1}};
  for (auto [p, m] : cases) {
    CHECK(FieldSpec::make(p, m).modulus() == FieldSpec::make(p, m).modulus());
  }
}

TEST_CASE("GF(4) addition and multiplication examples") {
  FieldSpec f4 = FieldSpec::make(2, 2);
  CHECK(f4.add(f4.element(2), f4.element(3)).index == 1);  // x + (x+1) = 1
  CHECK(f4.mul(f4.element(2), f4.element(2)).index == 3);  // x^2 = x+1
  CHECK(f4.mul(f4.element(2), f4.element(3)).index == 1);  // x(x+1) = 1
  CHECK(f4.inv(f4.element(2)).index == 3);
}

TEST_CASE("identities and zero inverse") {
  for (const FieldSpec& f : {FieldSpec::make(2, 2), FieldSpec::make(3, 1), FieldSpec::make(5, 2)}) {
    for (uint64_t i = 0; i < f.q(); ++i) {
      CHECK(f.add(f.element(i), f.zero()).index == i);
      CHECK(f.mul(f.element(i), f.one()).index == i);
    }
    CHECK(f.inv(f.one()).index == 1);
    CHECK_THROWS_AS(f.inv(f.zero()), Error);
  }
}

TEST_CASE("mixed-width elements are rejected") {
  FieldSpec f4 = FieldSpec::make(2, 2);
  FieldSpec f2 = FieldSpec::make(2, 1);
  CHECK_THROWS_AS(f4.add(f2.element(1), f4.element(1)), Error);
  CHECK_THROWS_AS(f4.mul(f4.element(1), f2.element(1)), Error);
}

TEST_CASE("dot products") {
  FieldSpec f2 = FieldSpec::make(2, 1);
  auto vec = [&](const FieldSpec& f, std::vector<uint64_t> idx) {
    std::vector<FieldElem> out;
    for (uint64_t i : idx) out.push_back(f.element(i));
    return out;
  };
  CHECK(f2.dot(vec(f2, {1, 1}), vec(f2, {1, 0})).index == 1);
  CHECK(f2.dot(vec(f2, {0, 1}), vec(f2, {1, 0})).index == 0);
  FieldSpec f3 = FieldSpec::make(3, 1);
  CHECK(f3.dot(vec(f3, {1, 2}), vec(f3, {2, 2})).index == 0);  // 2 + 4 = 0 mod 3
  CHECK_THROWS_AS(f3.dot(vec(f3, {1}), vec(f3, {1, 2})), Error);
}

TEST_CASE("index <-> coefficients round-trips for all elements") {
  for (const FieldSpec& f : {FieldSpec::make(2, 3), FieldSpec::make(3, 2), FieldSpec::make(7, 1)}) {
    for (uint64_t i = 0; i < f.q(); ++i) {
      FieldElem e = f.element(i);
      uint64_t idx = 0, scale = 1;
      for (uint32_t c : e.coeffs) {
        idx += c * scale;
        scale *= f.p();
      }
      CHECK(idx == i);
      CHECK(e.index == i);
    }
  }
}

TEST_CASE("field axioms hold exhaustively for every q <= 64") {
  for (const FieldSpec& f : small_fields()) {
    INFO("q = ", f.q());
    const uint64_t q = f.q();
    std::vector<FieldElem> elems;
    for (uint64_t i = 0; i < q; ++i) elems.push_back(f.element(i));

    bool commutative = true, inverses = true;
    for (uint64_t a = 0; a < q; ++a) {
      for (uint64_t b = 0; b < q; ++b) {
        commutative &= f.add(elems[a], elems[b]) == f.add(elems[b], elems[a]);
        commutative &= f.mul(elems[a], elems[b]) == f.mul(elems[b], elems[a]);
      }
      if (a != 0) inverses &= f.mul(elems[a], f.inv(elems[a])).index == 1;
    }
    CHECK(commutative);
    CHECK(inverses);

    bool associative = true, distributive = true;
    for (uint64_t a = 0; a < q; ++a)
      for (uint64_t b = 0; b < q; ++b)
        for (uint64_t c = 0; c < q; ++c) {
          associative &=
              f.add(f.add(elems[a], elems[b]), elems[c]) == f.add(elems[a], f.add(elems[b], elems[c]));
          associative &=
              f.mul(f.mul(elems[a], elems[b]), elems[c]) == f.mul(elems[a], f.mul(elems[b], elems[c]));
          distributive &= f.mul(elems[a], f.add(elems[b], elems[c])) ==
                          f.add(f.mul(elems[a], elems[b]), f.mul(elems[a], elems[c]));
        }
    CHECK(associative);
    CHECK(distributive);
  }
}

TEST_CASE("extended-Euclid inverse branch (q > 2^12)") {
  FieldSpec f = FieldSpec::make(2, 13);  // q = 8192
  for (uint64_t i : {1ull, 2ull, 3ull, 4097ull, 8191ull, 5000ull}) {
    FieldElem a = f.element(i);
    CHECK(f.mul(a, f.inv(a)).index == 1);
  }
  FieldSpec fp = FieldSpec::make(65521, 1);  // large prime field
  for (uint64_t i : {1ull, 2ull, 65520ull, 12345ull}) {
    FieldElem a = fp.element(i);
    CHECK(fp.mul(a, fp.inv(a)).index == 1);
  }
}

TEST_CASE("subtraction undoes addition") {
  FieldSpec f9 = FieldSpec::make(3, 2);
  for (uint64_t a = 0; a < 9; ++a)
    for (uint64_t b = 0; b < 9; ++b)
      CHECK(f9.sub(f9.add(f9.element(a), f9.element(b)), f9.element(b)).index == a);
}
