#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rbloch/finite_field.hpp"
#include "rbloch/fp_group.hpp"
#include "rbloch/int_matrix.hpp"
#include "rbloch/smith.hpp"

namespace rbloch {

/// Elementary abelian 2-group V of rank m; elements are bitmasks < 2^m with
/// XOR as the group law. Field-backed instances (F_q, q odd) have rank 1 and
/// classify a by whether it is a square.
class SquareClassGroup {
 public:
  static SquareClassGroup abstract(std::size_t rank);
  static SquareClassGroup of_field(const FiniteField& k);

  std::size_t rank() const { return rank_; }
  std::size_t size() const { return std::size_t{1} << rank_; }
  bool field_backed() const { return field_.has_value(); }
  const FiniteField& field() const;
  /// Throws DomainError for abstract groups or a == 0.
  std::size_t classify(FFElement a) const;
  /// Field: "<1>", "<n>". Abstract: "<1>", "<g0>", "<g0g2>", ...
  std::string label(std::size_t v) const;

 private:
  std::size_t rank_ = 0;
  std::optional<FiniteField> field_;
};

/// Z[V] element: coefficient per group element.
struct GroupRingElement {
  IntVector coeffs;
  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;
};

class GroupRing {
 public:
  explicit GroupRing(SquareClassGroup v);

  const SquareClassGroup& group() const { return v_; }
  std::size_t dimension() const { return v_.size(); }

  GroupRingElement zero() const;
  GroupRingElement one() const;
  GroupRingElement basis(std::size_t v) const;
  /// <<v>> = <v> - 1.
  GroupRingElement pfister(std::size_t v) const;
  GroupRingElement square_class(FFElement a) const;
  GroupRingElement pfister_of(FFElement a) const;

  GroupRingElement add(const GroupRingElement& a, const GroupRingElement& b) const;
  GroupRingElement sub(const GroupRingElement& a, const GroupRingElement& b) const;
  GroupRingElement scale(const Int& s, const GroupRingElement& a) const;
  GroupRingElement mul(const GroupRingElement& a, const GroupRingElement& b) const;
  Int augmentation(const GroupRingElement& a) const;

  std::string to_string(const GroupRingElement& a) const;

 private:
  void check(const GroupRingElement& a) const;
  SquareClassGroup v_;
};

/// Additive subgroup of Z[V] closed under multiplication by V, kept as a
/// Hermite basis.
class IdealLattice {
 public:
  static IdealLattice generated_by(const GroupRing& ring, std::span<const GroupRingElement> generators);
  static IdealLattice augmentation(const GroupRing& ring);

  const GroupRing& ring() const { return ring_; }
  const HermiteBasis& basis() const { return basis_; }
  std::size_t rank() const { return basis_.rank(); }
  GroupRingElement basis_element(std::size_t i) const;

  IdealLattice product(const IdealLattice& other) const;
  IdealLattice power(unsigned m) const;

  bool contains(const GroupRingElement& x) const;
  bool contains(const IdealLattice& other) const;
  /// Coordinates in basis(); nullopt when x is not in the lattice.
  std::optional<IntVector> coordinates(const GroupRingElement& x) const;
  /// outer / *this; throws StructuralError unless *this is contained in outer.
  FPGroup quotient_in(const IdealLattice& outer) const;

  friend bool operator==(const IdealLattice& a, const IdealLattice& b) { return a.basis_ == b.basis_; }

 private:
  IdealLattice(GroupRing ring, HermiteBasis basis) : ring_(std::move(ring)), basis_(std::move(basis)) {}
  GroupRing ring_;
  HermiteBasis basis_;
};

}  // namespace rbloch
