#include <numeric>

#include "doctest.h"
#include "rbloch/chebotarev.hpp"
#include "rbloch/chi_module.hpp"
#include "rbloch/errors.hpp"
#include "rbloch/expression.hpp"
#include "rbloch/specialize.hpp"

using namespace rbloch;

namespace {

struct F5t {
  RationalFunctionField k{FiniteField::create(5, 1)};
  Specializer sp{k};
  FunctionDomain d{k};
  ValuedPlace at(const char* pi) const {
    auto p = parse_function_element(k, pi);
    return ValuedPlace::finite(k, p.num);
  }
  FunctionFormal formal(const char* s) const { return parse_formal(d, s); }
};

}  // namespace

TEST_CASE("twist names") {
  CHECK(parse_twist("mod2") == Twist::Parity);
  CHECK(parse_twist("0") == Twist::Trivial);
  CHECK(to_string(Twist::Parity) == "mod2");
  CHECK_THROWS_AS(parse_twist("mod3"), ParseError);
}

TEST_CASE("specialization of single symbols at t") {
  F5t f;
  auto place = f.at("t");
  auto target = f.sp.target(place.residue_field());
  const auto& g = target->tilde.group;
  auto c = target->tilde.projection.apply(target->constant);
  auto st = f.sp.apply(place, Twist::Parity, f.formal("[t]"));
  CHECK(st.normal_form == g.normal_form(c));
  CHECK(f.sp.apply(place, Twist::Parity, f.formal("[t+1]")).is_zero);
  auto s2 = f.sp.apply(place, Twist::Parity, f.formal("[2]"));
  auto expected = target->tilde.projection.apply(target->pre_bloch.symbol(place.residue_field().from_int(2)));
  CHECK(s2.normal_form == g.normal_form(expected));
  auto inv = f.sp.apply(place, Twist::Parity, f.formal("[1/t]"));
  CHECK(g.is_zero(add(g.representative(inv.normal_form), c)));
  CHECK(f.sp.apply(place, Twist::Parity, f.formal("0")).is_zero);
}

TEST_CASE("twist signs follow the valuation parity") {
  F5t f;
  auto place = f.at("t");
  auto t = f.k.t();
  CHECK(f.sp.sign(place, Twist::Parity, t) == -1);
  CHECK(f.sp.sign(place, Twist::Parity, f.k.mul(t, t)) == 1);
  CHECK(f.sp.sign(place, Twist::Trivial, t) == 1);
  auto plain = f.sp.apply(place, Twist::Parity, f.formal("[2]"));
  auto twisted = f.sp.apply(place, Twist::Parity, f.formal("<t>[2]"));
  auto target = f.sp.target(place.residue_field());
  const auto& g = target->tilde.group;
  CHECK(g.is_zero(add(g.representative(plain.normal_form), g.representative(twisted.normal_form))));
  auto trivial = f.sp.apply(place, Twist::Trivial, f.formal("<t>[2]"));
  CHECK(trivial.normal_form == plain.normal_form);
}

TEST_CASE("well-definedness suite") {
  for (std::uint32_t q : {5u, 7u})
    for (auto phi : {Twist::Parity, Twist::Trivial}) {
      WdOptions o;
      o.q = q;
      o.phi = phi;
      o.relation_trials = 60;
      o.psi_trials = 20;
      o.equivariance_trials = 20;
      auto rep = wd_suite(o);
      CHECK(rep.relations_checked > 0);
      CHECK(rep.psi_checked > 0);
      CHECK(rep.equivariance_checked > 0);
      CHECK_MESSAGE(rep.passed(), (rep.violations.empty() ? "" : rep.violations.front()));
    }
}

TEST_CASE("residues at several places and support scan") {
  F5t f;
  std::vector<ValuedPlace> places{f.at("t"), f.at("t-1")};
  auto comps = ufd_residues(f.sp, f.formal("[t]"), places, Twist::Parity);
  REQUIRE(comps.size() == 2);
  CHECK_FALSE(comps[0].is_zero);
  CHECK(comps[1].is_zero);
  for (const auto& c : ufd_residues(f.sp, f.formal("0"), places, Twist::Parity)) CHECK(c.is_zero);
  auto scan = support_scan(f.sp, f.formal("[2]"), 1, Twist::Parity);
  // [2] is a unit everywhere; its residue [2] in P~(F_5) is nonzero at each degree-one place.
  CHECK(scan.size() == 5);
  auto all = places_up_to(f.k, 2);
  CHECK(all.size() == 15);
}

TEST_CASE("Steinberg obstruction witness") {
  auto w5 = cor_val_witness(5);
  CHECK(w5.odd_order == 3);
  CHECK(w5.y_order == 3);
  CHECK(w5.valuation_pi_inverse % 2 != 0);
  CHECK(w5.valuation_one_minus_pi_inverse % 2 != 0);
  CHECK(w5.scalar == 4);
  CHECK(w5.steinberg_is_4y);
  CHECK(w5.steinberg_nonzero);
  CHECK(w5.sixteen_y);
  auto w9 = cor_val_witness(9);
  CHECK(w9.y_order == 5);
  CHECK(w9.steinberg_nonzero);
  CHECK_THROWS_WITH_AS(cor_val_witness(7), doctest::Contains("no odd witness"), DomainError);
}

TEST_CASE("kernel prediction") {
  CHECK(odd_part(Int(8)) == 1);
  CHECK(odd_part(Int(12)) == 3);
  auto p5 = predicted_kernel(5);
  CHECK(p5.group.describe() == "Z/3");
  auto p9 = predicted_kernel(9);
  CHECK(p9.group.describe() == "Z/5");
  CHECK(cross_validate(p9, PreBloch::build(FiniteField::with_order(9))));
  CHECK(predicted_kernel(7).group.is_trivial());
  CHECK_THROWS_AS(predicted_kernel(8), UnsupportedField);
  CHECK_THROWS_AS(predicted_kernel(3), UnsupportedField);
}

TEST_CASE("chi modules") {
  auto v = SquareClassGroup::abstract(2);
  GroupRing r(v);
  auto m3 = FPGroup::from_invariants(IntVector{Int(3)});
  ChiModule m(v, 0b01, m3);
  CHECK(m.chi(1) == -1);
  CHECK(m.chi(2) == 1);
  auto a = mchi_action(m, r.pfister(1));
  CHECK(a.scalar == -2);
  CHECK(a.bijective);
  auto st = mchi_action(m, r.mul(r.pfister(1), r.pfister(3)));
  CHECK(st.scalar == 4);
  CHECK(st.bijective);
  CHECK(mchi_action(m, r.pfister(2)).scalar == 0);
  CHECK_FALSE(mchi_action(m, r.pfister(2)).bijective);
  ChiModule trivial(v, 0, m3);
  for (std::size_t g = 0; g < 4; ++g) CHECK(mchi_action(trivial, r.pfister(g)).scalar == 0);
  // Localization drops 2-torsion and keeps free summands.
  ChiModule mixed(v, 1, FPGroup::from_invariants(IntVector{Int(12), Int(0)}));
  CHECK(mixed.module().describe() == "Z + Z/3");
  CHECK(mchi_action(mixed, r.pfister(1)).bijective);
  CHECK_FALSE(mchi_action(mixed, r.scale(3, r.pfister(1))).bijective);
  GroupRing other(SquareClassGroup::abstract(3));
  CHECK_THROWS_AS(mchi_action(m, other.one()), StructuralError);
}

TEST_CASE("chebotarev search") {
  auto r = chebotarev_search(3, 30);
  CHECK(r.primes == std::vector<std::uint64_t>{2, 5, 11, 17, 23, 29});
  CHECK(chebotarev_search(5, 100).primes == std::vector<std::uint64_t>{19, 29, 59, 79, 89});
  CHECK(chebotarev_search(3, 2).primes == std::vector<std::uint64_t>{2});
  CHECK(r.prime_count == 10);
  CHECK(r.expected == doctest::Approx(0.5));
  std::size_t prev = 0;
  for (std::uint64_t b = 2; b <= 400; b += 17) {
    auto s = chebotarev_search(7, b);
    CHECK(s.primes.size() >= prev);
    prev = s.primes.size();
    if (b >= 14) CHECK_FALSE(s.primes.empty());
  }
  CHECK_THROWS_AS(chebotarev_search(4, 100), DomainError);
  CHECK_THROWS_AS(chebotarev_search(2, 100), DomainError);
  CHECK_THROWS_AS(chebotarev_search(3, 1), DomainError);
}
