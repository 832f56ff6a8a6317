#include <set>

#include "doctest.h"
#include "rbloch/errors.hpp"
#include "rbloch/expression.hpp"
#include "rbloch/finite_field.hpp"

using namespace rbloch;

namespace {

// Multiplication in F_p[x]/(g) on coordinate vectors, schoolbook.
std::vector<std::uint32_t> poly_mulmod(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                       const std::vector<std::uint32_t>& g, std::uint32_t p) {
  std::size_t f = g.size() - 1;
  std::vector<std::uint64_t> prod(2 * f, 0);
  for (std::size_t i = 0; i < f; ++i)
    for (std::size_t j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(a[i]) * b[j]) % p;
  for (std::size_t d = 2 * f; d-- > f;) {
    std::uint64_t c = prod[d];
    if (!c) continue;
    for (std::size_t i = 0; i <= f; ++i) prod[d - f + i] = (prod[d - f + i] + (p - c) * g[i]) % p;
  }
  return {prod.begin(), prod.begin() + f};
}

bool poly_has_root_free_quadratic(std::uint32_t b, std::uint32_t c, std::uint32_t p) {
  for (std::uint32_t x = 0; x < p; ++x)
    if ((x * x + b * x + c) % p == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("prime field primitive element") {
  auto f5 = FiniteField::create(5, 1);
  CHECK(f5.primitive() == f5.from_int(2));
  for (std::uint32_t p : {5u, 7u, 11u, 13u, 17u, 23u, 97u}) {
    auto k = FiniteField::create(p, 1);
    // Oracle: least residue of multiplicative order p - 1.
    std::uint32_t least = 0;
    for (std::uint32_t g = 2; g < p && !least; ++g) {
      std::uint64_t x = 1;
      std::uint32_t ord = 0;
      do {
        x = x * g % p;
        ++ord;
      } while (x != 1);
      if (ord == p - 1) least = g;
    }
    CHECK(k.primitive() == k.from_int(least));
  }
}

TEST_CASE("F9 modulus is the least irreducible quadratic") {
  auto f9 = FiniteField::create(3, 2);
  std::vector<std::uint32_t> expected;
  // Lex order on (b, c) for x^2 + b x + c, constant term varying fastest.
  for (std::uint32_t b = 0; b < 3 && expected.empty(); ++b)
    for (std::uint32_t c = 0; c < 3 && expected.empty(); ++c)
      if (poly_has_root_free_quadratic(b, c, 3)) expected = {c, b, 1};
  CHECK(f9.modulus() == expected);
  CHECK(f9.order() == 9);
  CHECK(f9.name() == "F9");
}

TEST_CASE("dlog is exhaustive and agrees with an independent multiplication") {
  for (std::uint64_t q : {5ull, 7ull, 9ull, 13ull, 25ull, 27ull, 49ull, 81ull, 121ull, 125ull}) {
    auto k = FiniteField::with_order(q);
    auto u = k.coordinates(k.primitive());
    std::vector<std::uint32_t> x(k.degree(), 0);
    x[0] = 1;
    std::set<std::uint32_t> codes;
    for (std::uint32_t e = 0; e + 1 < q; ++e) {
      auto a = k.from_coordinates(x);
      CHECK(k.dlog(a) == e);
      CHECK(k.exp(e) == a);
      codes.insert(a.code);
      x = poly_mulmod(x, u, k.modulus(), k.characteristic());
    }
    CHECK(codes.size() == q - 1);
    CHECK(k.from_coordinates(x) == k.one());
  }
}

TEST_CASE("field axioms on F25") {
  auto k = FiniteField::create(5, 2);
  auto all = k.nonzero_elements();
  all.push_back(k.zero());
  for (auto a : all) {
    CHECK(k.add(a, k.neg(a)) == k.zero());
    if (a != k.zero()) CHECK(k.mul(a, k.inv(a)) == k.one());
    for (auto b : all) {
      CHECK(k.add(a, b) == k.add(b, a));
      CHECK(k.mul(a, b) == k.mul(b, a));
      CHECK(k.sub(k.add(a, b), b) == a);
      auto c = k.from_int(3);
      CHECK(k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c)));
    }
  }
  CHECK_THROWS_AS(k.inv(k.zero()), DomainError);
  CHECK_THROWS_AS(k.dlog(k.zero()), DomainError);
}

TEST_CASE("dlog examples in F5") {
  auto k = FiniteField::create(5, 1);
  CHECK(k.dlog(k.from_int(4)) == 2);
  CHECK(k.dlog(k.from_int(3)) == 3);
  CHECK(k.is_square(k.from_int(4)));
  CHECK_FALSE(k.is_square(k.from_int(2)));
  CHECK(k.pow(k.from_int(2), -1) == k.from_int(3));
}

TEST_CASE("squares are exactly half the units") {
  for (std::uint64_t q : {5ull, 7ull, 9ull, 27ull}) {
    auto k = FiniteField::with_order(q);
    std::set<std::uint32_t> sq;
    for (auto a : k.nonzero_elements()) sq.insert(k.mul(a, a).code);
    for (auto a : k.nonzero_elements()) CHECK(k.is_square(a) == (sq.count(a.code) == 1));
    CHECK(sq.size() == (q - 1) / 2);
  }
}

TEST_CASE("unsupported fields") {
  CHECK_THROWS_AS(FiniteField::create(2, 3), UnsupportedField);
  CHECK_THROWS_AS(FiniteField::create(3, 1), UnsupportedField);
  CHECK_THROWS_AS(FiniteField::create(9, 1), UnsupportedField);
  CHECK_THROWS_AS(FiniteField::with_order(12), UnsupportedField);
  CHECK_THROWS_AS(FiniteField::with_order(4), UnsupportedField);
  CHECK_NOTHROW(FiniteField::create_auxiliary(3, 1));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("finite element parsing") {
  auto k = FiniteField::create(5, 2);
  CHECK(parse_finite_element(k, "u") == k.primitive());
  CHECK(parse_finite_element(k, "u^2*u^-2") == k.one());
  CHECK(parse_finite_element(k, "-1") == k.from_int(4));
  CHECK(parse_finite_element(k, "(2+3)") == k.zero());
  for (auto a : k.nonzero_elements()) CHECK(parse_finite_element(k, k.to_string(a)) == a);
  CHECK_THROWS_AS(parse_finite_element(k, "1/0"), ParseError);
  try {
    parse_finite_element(k, "2 + * 3", 10);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 14);
  }
}

TEST_CASE("field headers") {
  CHECK(parse_field_header("field F25(t)").rational_function_field);
  CHECK(parse_field_header("field F_25").field.order() == 25);
  CHECK(parse_field_header("F7(t)").field.order() == 7);
  CHECK_THROWS_AS(parse_field_header("field F12"), UnsupportedField);
  CHECK_THROWS_AS(parse_field_header("ring Z"), ParseError);
}
