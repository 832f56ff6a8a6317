#include "doctest.h"
#include "rbloch/bloch.hpp"
#include "rbloch/errors.hpp"
#include "rbloch/formal.hpp"

using namespace rbloch;

TEST_CASE("formal sums parse and print") {
  FiniteDomain d(FiniteField::create(5, 1));
  auto x = parse_formal(d, "2*[3] - <n>[2] + (1 - <n>)[4]");
  CHECK(format_formal(d, x) == format_formal(d, parse_formal(d, format_formal(d, x))));
  CHECK(format_formal(d, parse_formal(d, "0")) == "0");
  CHECK(format_formal(d, parse_formal(d, "[2] - [2]")) == "0");
  CHECK(parse_formal(d, "<3>[2]").terms.at(0).square_class == d.nonsquare());
  CHECK(parse_formal(d, "<4>[2]").terms.at(0).square_class == d.one());
  CHECK_THROWS_AS(parse_formal(d, "[0]"), ParseError);
  CHECK_THROWS_AS(parse_formal(d, "[2"), ParseError);
  try {
    parse_formal(d, "[2] + ?[3]");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
}

TEST_CASE("formal sums over a function field") {
  FunctionDomain d(RationalFunctionField(FiniteField::create(7, 1)));
  auto x = parse_formal(d, "<t>[t+1] + 3*[1/t] - <t^3>[t+1] - 3*[1/t]");
  CHECK(x.empty());
  auto y = parse_formal(d, "(<t> - 2*<n>)[(t^2+1)/(t+3)]");
  CHECK(format_formal(d, parse_formal(d, format_formal(d, y))) == format_formal(d, y));
  CHECK_THROWS_AS(formal_symbol(d, d.field().zero()), DomainError);
}

TEST_CASE("formal operations") {
  FiniteDomain d(FiniteField::create(7, 1));
  auto k = d.field();
  auto s = formal_symbol(d, k.from_int(3));
  auto acted = formal_act(d, k.from_int(3), s);
  CHECK(acted.terms.at(0).square_class == d.nonsquare());
  CHECK(format_formal(d, formal_act(d, k.from_int(3), acted)) == format_formal(d, s));
  auto pf = formal_pfister(d, k.from_int(2), s);
  CHECK(pf.empty());
  CHECK(formal_add(d, s, formal_scale(d, -1, s)).empty());
}

TEST_CASE("refined five-term elements vanish in RP and project into P") {
  for (auto q : {5ull, 9ull, 13ull}) {
    auto k = FiniteField::with_order(q);
    FiniteDomain d(k);
    auto rp = RefinedPreBloch::build(k);
    auto p = PreBloch::build(k);
    for (auto x : k.nonzero_elements())
      for (auto y : k.nonzero_elements()) {
        if (x == k.one() || y == k.one()) continue;
        auto r = refined_five_term(d, x, y);
        CHECK(rp.group().is_zero(evaluate(rp, r)));
        CHECK(p.group().is_zero(evaluate(p, r)));
      }
    auto tilde = quotient_tilde(rp);
    for (auto x : k.nonzero_elements()) CHECK(tilde.group.is_zero(tilde.projection.apply(evaluate(rp, formal_psi1(d, x)))));
  }
}
