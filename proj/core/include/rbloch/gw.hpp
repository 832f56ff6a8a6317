#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rbloch/finite_field.hpp"
#include "rbloch/fp_group.hpp"
#include "rbloch/group_ring.hpp"

namespace rbloch {

/// Z[V] / J presented as an abelian group on the basis <v>, v in V.
class GWRing {
 public:
  /// J = the ideal of Steinberg elements <<a>><<1-a>>, a != 0, 1.
  static GWRing of_field(const FiniteField& k);
  /// Abstract quotient by an arbitrary ideal; not checkable by gw_consistency.
  static GWRing from_ideal(IdealLattice ideal);

  const GroupRing& ring() const { return ideal_.ring(); }
  const IdealLattice& ideal() const { return ideal_; }
  const FPGroup& group() const { return group_; }
  /// Steinberg generators after deduplication by square-class pair.
  const std::vector<GroupRingElement>& steinberg_generators() const { return steinberg_; }
  bool field_backed() const { return ring().group().field_backed(); }

  bool equal(const GroupRingElement& a, const GroupRingElement& b) const;
  bool is_zero(const GroupRingElement& a) const;
  Int dim(const GroupRingElement& a) const { return ring().augmentation(a); }
  /// table[v][w] = index of <v><w> among the basis generators.
  std::vector<std::vector<std::size_t>> multiplication_table() const;

 private:
  GWRing(IdealLattice ideal, std::vector<GroupRingElement> steinberg);
  IdealLattice ideal_;
  std::vector<GroupRingElement> steinberg_;
  FPGroup group_;
};

struct IdentityCheck {
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  /// First failing instance, empty when none.
  std::string witness;
  bool passed() const { return failures == 0; }
};

struct GWConsistencyReport {
  std::vector<IdentityCheck> checks;
  bool all_passed() const;
};

/// Exhaustive check over a, b in k^x of
///   (i)   <a> + <b> = <a+b> + <ab(a+b)>   (a + b != 0)
///   (ii)  <ab> = <a><b>
///   (iii) <<a>><<1-a>> = 0                 (a != 1)
///   (iv)  <<a>>(1 + <-1>) = 0
/// in the quotient. Throws DomainError for abstract rings.
GWConsistencyReport gw_consistency(const GWRing& gw);

}  // namespace rbloch
