#include <random>

#include "doctest.h"
#include "rbloch/errors.hpp"
#include "rbloch/polynomial.hpp"

using namespace rbloch;

namespace {

Polynomial random_poly(const FiniteField& k, std::mt19937_64& rng, std::size_t deg) {
  Polynomial p;
  for (std::size_t i = 0; i <= deg; ++i) p.coeffs.push_back(k.element(rng() % k.order()));
  while (!p.coeffs.empty() && p.coeffs.back() == k.zero()) p.coeffs.pop_back();
  return p;
}

// Number of monic irreducibles of degree n over F_q via Moebius inversion.
long necklace(long q, long n) {
  auto mu = [](long m) {
    long r = 1;
    for (long p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) return 0L;
        r = -r;
      }
    return m > 1 ? -r : r;
  };
  long s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) {
      long pw = 1;
      for (long i = 0; i < n / d; ++i) pw *= q;
      s += mu(d) * pw;
    }
  return s / n;
}

}  // namespace

TEST_CASE("irreducible counts match the necklace formula") {
  auto f5 = FiniteField::create(5, 1);
  PolynomialRing r5(f5);
  auto irr = r5.irreducibles(3);
  std::size_t counts[4] = {0, 0, 0, 0};
  for (const auto& p : irr) ++counts[p.degree()];
  CHECK(counts[1] == 5);
  CHECK(counts[2] == 10);
  CHECK(counts[3] == static_cast<std::size_t>(necklace(5, 3)));
  PolynomialRing r3(FiniteField::create_auxiliary(3, 1));
  std::size_t deg3 = 0;
  for (const auto& p : r3.irreducibles(3)) deg3 += p.degree() == 3;
  CHECK(deg3 == 8);
  PolynomialRing r9(FiniteField::create(3, 2));
  std::size_t deg2 = 0;
  for (const auto& p : r9.irreducibles(2)) deg2 += p.degree() == 2;
  CHECK(deg2 == static_cast<std::size_t>(necklace(9, 2)));
}

TEST_CASE("irreducibility agrees with root search in low degree") {
  auto k = FiniteField::create(7, 1);
  PolynomialRing r(k);
  for (std::size_t d : {2u, 3u})
    for (const auto& p : r.monic_of_degree(d)) {
      bool has_root = false;
      for (std::uint32_t x = 0; x < 7; ++x) has_root |= r.evaluate(p, k.element(x)) == k.zero();
      CHECK(r.is_irreducible(p) == !has_root);
    }
}

TEST_CASE("division, gcd and degree laws") {
  auto k = FiniteField::create(3, 2);
  PolynomialRing r(k);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_poly(k, rng, rng() % 7);
    auto b = random_poly(k, rng, rng() % 5);
    if (b.is_zero()) continue;
    auto [q, m] = r.divmod(a, b);
    CHECK(r.add(r.mul(q, b), m) == a);
    CHECK(m.degree() < b.degree());
    if (!a.is_zero()) CHECK(r.mul(a, b).degree() == a.degree() + b.degree());
    auto g = r.gcd(a, b);
    CHECK(r.mod(a, g).is_zero());
    CHECK(r.mod(b, g).is_zero());
    CHECK(g.leading() == k.one());
  }
  CHECK_THROWS_AS(r.divmod(r.variable(), Polynomial{}), DomainError);
  CHECK(r.gcd(Polynomial{}, Polynomial{}).is_zero());
}

TEST_CASE("factorization agrees with trial division") {
  for (std::uint64_t q : {5ull, 9ull, 7ull}) {
    auto k = FiniteField::with_order(q);
    PolynomialRing r(k);
    std::mt19937_64 rng(q);
    for (int trial = 0; trial < 40; ++trial) {
      auto a = random_poly(k, rng, 1 + rng() % 6);
      if (a.degree() < 1) continue;
      auto f = r.factor(a);
      auto g = r.factor_by_trial_division(a);
      CHECK(f.unit == g.unit);
      CHECK(f.factors == g.factors);
      Polynomial prod = r.constant(f.unit);
      for (const auto& [p, e] : f.factors) {
        CHECK(r.is_irreducible(p));
        prod = r.mul(prod, r.pow(p, e));
      }
      CHECK(prod == a);
    }
  }
}

TEST_CASE("repeated factors and inseparable powers") {
  auto k = FiniteField::create(5, 1);
  PolynomialRing r(k);
  auto t = r.variable();
  auto p = r.mul(r.pow(r.linear(k.from_int(1)), 5), r.pow(r.add(r.mul(t, t), r.constant(k.from_int(2))), 2));
  auto f = r.factor(p);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].second == 5);
  CHECK(f.factors[1].second == 2);
  CHECK(r.multiplicity(p, r.linear(k.from_int(1))) == 5);
}

TEST_CASE("polynomial text") {
  auto k = FiniteField::create(5, 1);
  PolynomialRing r(k);
  auto t = r.variable();
  auto p = r.add(r.mul(t, t), r.add(r.scale(k.from_int(4), t), r.constant(k.one())));
  CHECK(r.to_string(p) == "t^2+4*t+1");
  CHECK(r.to_string(Polynomial{}) == "0");
  CHECK(r.derivative(p) == r.add(r.scale(k.from_int(2), t), r.constant(k.from_int(4))));
}
