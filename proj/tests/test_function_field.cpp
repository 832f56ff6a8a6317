#include "doctest.h"
#include "rbloch/errors.hpp"
#include "rbloch/expression.hpp"
#include "rbloch/function_field.hpp"

using namespace rbloch;

namespace {

FunctionFieldElement parse(const RationalFunctionField& k, const char* s) { return parse_function_element(k, s); }

}  // namespace

TEST_CASE("rational function normalization") {
  RationalFunctionField k(FiniteField::create(5, 1));
  CHECK(k.to_string(parse(k, "(t^2-1)/(t-1)")) == "t+1");
  auto a = parse(k, "(2*t+2)/(3*t)");
  CHECK(a.den.leading() == k.base().one());
  CHECK(k.is_one(k.div(a, a)));
  CHECK(k.as_constant(parse(k, "t/t*3")) == k.base().from_int(3));
  CHECK_FALSE(k.as_constant(k.t()).has_value());
  CHECK_THROWS_AS(parse(k, "1/(t-t)"), ParseError);
  CHECK_THROWS_AS(parse(k, "t+"), ParseError);
  for (const char* s : {"t", "(t+1)/(t^2+2)", "3*t^3+t", "1/t", "2"}) {
    auto x = parse(k, s);
    CHECK(parse(k, k.to_string(x).c_str()) == x);
  }
}

TEST_CASE("valuations and reductions") {
  RationalFunctionField k(FiniteField::create(5, 1));
  auto& r = k.ring();
  auto at_t = ValuedPlace::finite(k, r.variable());
  auto at_t1 = ValuedPlace::finite(k, r.linear(k.base().one()));
  CHECK(at_t1.valuation(parse(k, "(t^2-1)/(t+1)")) == 1);
  CHECK(at_t.reduce(parse(k, "(t+2)/(t+1)")) == k.base().from_int(2));
  CHECK(at_t.valuation(parse(k, "t^3/(t+1)")) == 3);
  CHECK(at_t.valuation(parse(k, "1/t^2")) == -2);
  CHECK_THROWS_AS(at_t.reduce(k.t()), DomainError);
  CHECK_THROWS_AS(at_t.valuation(k.zero()), DomainError);
  auto inf = ValuedPlace::infinite(k);
  CHECK(inf.valuation(parse(k, "(t+1)/t^3")) == 2);
  CHECK(inf.reduce(parse(k, "(3*t^2+1)/(t^2+t)")) == k.base().from_int(3));
  CHECK_THROWS_AS(ValuedPlace::finite(k, r.mul(r.variable(), r.variable())), DomainError);
}

TEST_CASE("valuation is additive and reduction multiplicative") {
  RationalFunctionField k(FiniteField::create(7, 1));
  auto& r = k.ring();
  std::vector<FunctionFieldElement> xs;
  for (const char* s : {"t+3", "(t^2+1)/(t+2)", "5*t^2+t+1", "(t+1)^2/(t^3+2)", "3"}) xs.push_back(parse(k, s));
  for (const auto& pi : r.irreducibles(2)) {
    auto v = ValuedPlace::finite(k, pi);
    for (const auto& a : xs)
      for (const auto& b : xs) {
        CHECK(v.valuation(k.mul(a, b)) == v.valuation(a) + v.valuation(b));
        if (v.valuation(a) == 0 && v.valuation(b) == 0) {
          auto& rf = v.residue_field();
          CHECK(v.reduce(k.mul(a, b)) == rf.mul(v.reduce(a), v.reduce(b)));
        }
      }
  }
}

TEST_CASE("degree-two place residue field and embedding") {
  RationalFunctionField k(FiniteField::create(5, 1));
  auto& r = k.ring();
  auto pi = r.add(r.mul(r.variable(), r.variable()), r.constant(k.base().from_int(2)));
  auto v = ValuedPlace::finite(k, pi);
  CHECK(v.degree() == 2);
  CHECK(v.residue_field().order() == 25);
  auto root = v.reduce(k.t());
  auto& rf = v.residue_field();
  CHECK(rf.add(rf.mul(root, root), v.embed(k.base().from_int(2))) == rf.zero());
  for (auto c : k.base().nonzero_elements()) CHECK(v.reduce(k.constant(c)) == v.embed(c));
}

TEST_CASE("square classes") {
  RationalFunctionField k(FiniteField::create(5, 1));
  CHECK(k.square_class(parse(k, "t^2")).is_square());
  CHECK(k.square_class(parse(k, "4*t^2/(t+1)^4")).is_square());
  auto c = k.square_class(parse(k, "2*t^3*(t+1)^2"));
  CHECK_FALSE(c.leading_square);
  CHECK(c.odd_primes.size() == 1);
  CHECK(k.to_string(k.square_class_representative(parse(k, "2*t^3*(t+1)^2"))) == "2*t");
  CHECK_THROWS_AS(k.square_class(k.zero()), DomainError);
  CHECK(k.support(parse(k, "(t^2+2)/(t*(t+1))")).size() == 3);
}
