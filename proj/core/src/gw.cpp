#include "rbloch/gw.hpp"

#include <set>

#include "rbloch/errors.hpp"

namespace rbloch {

namespace {

FPGroup quotient_group(const IdealLattice& ideal) {
  const GroupRing& ring = ideal.ring();
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < ring.dimension(); ++v) labels.push_back(ring.group().label(v));
  return FPGroup(std::move(labels), ideal.basis().matrix());
}

}  // namespace

GWRing::GWRing(IdealLattice ideal, std::vector<GroupRingElement> steinberg)
    : ideal_(std::move(ideal)), steinberg_(std::move(steinberg)), group_(quotient_group(ideal_)) {}

GWRing GWRing::of_field(const FiniteField& k) {
  GroupRing ring(SquareClassGroup::of_field(k));
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<GroupRingElement> gens;
  for (FFElement a : k.nonzero_elements()) {
    if (a == k.one()) continue;
    std::size_t ca = ring.group().classify(a);
    std::size_t cb = ring.group().classify(k.sub(k.one(), a));
    if (!seen.insert({ca, cb}).second) continue;
    gens.push_back(ring.mul(ring.pfister(ca), ring.pfister(cb)));
  }
  IdealLattice j = IdealLattice::generated_by(ring, gens);
  return GWRing(std::move(j), std::move(gens));
}

GWRing GWRing::from_ideal(IdealLattice ideal) { return GWRing(std::move(ideal), {}); }

bool GWRing::equal(const GroupRingElement& a, const GroupRingElement& b) const {
  return group_.equal(a.coeffs, b.coeffs);
}

bool GWRing::is_zero(const GroupRingElement& a) const { return group_.is_zero(a.coeffs); }

std::vector<std::vector<std::size_t>> GWRing::multiplication_table() const {
  std::size_t n = ring().dimension();
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w) t[v][w] = v ^ w;
  return t;
}

bool GWConsistencyReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed()) return false;
  return true;
}

GWConsistencyReport gw_consistency(const GWRing& gw) {
  if (!gw.field_backed()) throw DomainError("not checkable: GW ring is not backed by a field");
  const GroupRing& r = gw.ring();
  const FiniteField& k = r.group().field();
  const auto units = k.nonzero_elements();
  auto cls = [&](FFElement a) { return r.square_class(a); };
  auto fmt = [&](FFElement a) { return k.to_string(a); };

  IdentityCheck witt{"witt", 0, 0, {}};
  IdentityCheck mult{"multiplicative", 0, 0, {}};
  IdentityCheck steinberg{"steinberg", 0, 0, {}};
  IdentityCheck hyperbolic{"eta_h", 0, 0, {}};
  auto record = [](IdentityCheck& c, bool ok, const std::string& where) {
    ++c.checked;
    if (ok) return;
    if (c.failures++ == 0) c.witness = where;
  };

  const GroupRingElement h = r.add(r.one(), cls(k.neg(k.one())));
  for (FFElement a : units) {
    for (FFElement b : units) {
      std::string where = "a=" + fmt(a) + ", b=" + fmt(b);
      FFElement s = k.add(a, b);
      if (s != k.zero()) {
        auto lhs = r.add(cls(a), cls(b));
        auto rhs = r.add(cls(s), cls(k.mul(k.mul(a, b), s)));
        record(witt, gw.equal(lhs, rhs), where);
      }
      record(mult, gw.equal(cls(k.mul(a, b)), r.mul(cls(a), cls(b))), where);
    }
    std::string where = "a=" + fmt(a);
    if (a != k.one())
      record(steinberg, gw.is_zero(r.mul(r.pfister_of(a), r.pfister_of(k.sub(k.one(), a)))), where);
    record(hyperbolic, gw.is_zero(r.mul(r.pfister_of(a), h)), where);
  }
  return {{witt, mult, steinberg, hyperbolic}};
}

}  // namespace rbloch
