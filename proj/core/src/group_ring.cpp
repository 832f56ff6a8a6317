#include "rbloch/group_ring.hpp"

#include "rbloch/errors.hpp"

namespace rbloch {

SquareClassGroup SquareClassGroup::abstract(std::size_t rank) {
  if (rank > 16) throw StructuralError("square class group rank too large");
  SquareClassGroup g;
  g.rank_ = rank;
  return g;
}

SquareClassGroup SquareClassGroup::of_field(const FiniteField& k) {
  SquareClassGroup g;
  g.rank_ = 1;
  g.field_ = k;
  return g;
}

const FiniteField& SquareClassGroup::field() const {
  if (!field_) throw DomainError("abstract square class group has no field");
  return *field_;
}

std::size_t SquareClassGroup::classify(FFElement a) const {
  return field().is_square(a) ? 0 : 1;
}

std::string SquareClassGroup::label(std::size_t v) const {
  if (v == 0) return "<1>";
  if (field_) return "<n>";
  std::string s = "<";
  for (std::size_t i = 0; i < rank_; ++i)
    if (v >> i & 1) s += "g" + std::to_string(i);
  return s + ">";
}

GroupRing::GroupRing(SquareClassGroup v) : v_(std::move(v)) {}

void GroupRing::check(const GroupRingElement& a) const {
  if (a.coeffs.size() != dimension())
    throw StructuralError("group ring element has " + std::to_string(a.coeffs.size()) +
                          " coefficients, expected " + std::to_string(dimension()));
}

GroupRingElement GroupRing::zero() const { return {IntVector(dimension())}; }
GroupRingElement GroupRing::one() const { return basis(0); }

GroupRingElement GroupRing::basis(std::size_t v) const {
  if (v >= dimension()) throw StructuralError("group element out of range");
  GroupRingElement e = zero();
  e.coeffs[v] = 1;
  return e;
}

GroupRingElement GroupRing::pfister(std::size_t v) const { return sub(basis(v), one()); }
GroupRingElement GroupRing::square_class(FFElement a) const { return basis(v_.classify(a)); }
GroupRingElement GroupRing::pfister_of(FFElement a) const { return pfister(v_.classify(a)); }

GroupRingElement GroupRing::add(const GroupRingElement& a, const GroupRingElement& b) const {
  check(a);
  check(b);
  return {rbloch::add(a.coeffs, b.coeffs)};
}

GroupRingElement GroupRing::sub(const GroupRingElement& a, const GroupRingElement& b) const {
  return add(a, scale(-1, b));
}

GroupRingElement GroupRing::scale(const Int& s, const GroupRingElement& a) const {
  check(a);
  return {rbloch::scale(s, a.coeffs)};
}

GroupRingElement GroupRing::mul(const GroupRingElement& a, const GroupRingElement& b) const {
  check(a);
  check(b);
  GroupRingElement r = zero();
  for (std::size_t v = 0; v < dimension(); ++v) {
    if (a.coeffs[v] == 0) continue;
    for (std::size_t w = 0; w < dimension(); ++w)
      if (b.coeffs[w] != 0) r.coeffs[v ^ w] += a.coeffs[v] * b.coeffs[w];
  }
  return r;
}

Int GroupRing::augmentation(const GroupRingElement& a) const {
  check(a);
  Int s = 0;
  for (const auto& c : a.coeffs) s += c;
  return s;
}

std::string GroupRing::to_string(const GroupRingElement& a) const {
  check(a);
  std::string out;
  for (std::size_t v = 0; v < dimension(); ++v) {
    const Int& c = a.coeffs[v];
    if (c == 0) continue;
    if (!out.empty()) out += c > 0 ? " + " : " - ";
    else if (c < 0) out += "-";
    Int m = abs(c);
    if (m != 1) out += m.get_str() + "*";
    out += v_.label(v);
  }
  return out.empty() ? "0" : out;
}

IdealLattice IdealLattice::generated_by(const GroupRing& ring, std::span<const GroupRingElement> generators) {
  std::vector<IntVector> rows;
  for (const auto& g : generators)
    for (std::size_t v = 0; v < ring.dimension(); ++v) rows.push_back(ring.mul(ring.basis(v), g).coeffs);
  return IdealLattice(ring, hermite_basis(rows, ring.dimension()));
}

IdealLattice IdealLattice::augmentation(const GroupRing& ring) {
  std::vector<GroupRingElement> gens;
  for (std::size_t v = 1; v < ring.dimension(); ++v) gens.push_back(ring.pfister(v));
  return generated_by(ring, gens);
}

GroupRingElement IdealLattice::basis_element(std::size_t i) const { return {basis_.rows.at(i)}; }

IdealLattice IdealLattice::product(const IdealLattice& other) const {
  std::vector<GroupRingElement> gens;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < other.rank(); ++j)
      gens.push_back(ring_.mul(basis_element(i), other.basis_element(j)));
  return generated_by(ring_, gens);
}

IdealLattice IdealLattice::power(unsigned m) const {
  if (m == 0) {
    GroupRingElement one = ring_.one();
    return generated_by(ring_, std::span<const GroupRingElement>(&one, 1));
  }
  IdealLattice acc = *this;
  for (unsigned i = 1; i < m; ++i) acc = acc.product(*this);
  return acc;
}

std::optional<IntVector> IdealLattice::coordinates(const GroupRingElement& x) const {
  return solve_in_lattice(basis_, x.coeffs);
}

bool IdealLattice::contains(const GroupRingElement& x) const { return coordinates(x).has_value(); }

bool IdealLattice::contains(const IdealLattice& other) const {
  for (std::size_t i = 0; i < other.rank(); ++i)
    if (!contains(other.basis_element(i))) return false;
  return true;
}

FPGroup IdealLattice::quotient_in(const IdealLattice& outer) const {
  IntMatrix rel(0, outer.rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    auto c = outer.coordinates(basis_element(i));
    if (!c) throw StructuralError("lattice is not contained in the outer lattice");
    rel.append_row(*c);
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < outer.rank(); ++i) labels.push_back("b" + std::to_string(i));
  return FPGroup(std::move(labels), std::move(rel));
}

}  // namespace rbloch
