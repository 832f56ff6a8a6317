#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rbloch/int_matrix.hpp"
#include "rbloch/smith.hpp"

namespace rbloch {

/// Finitely presented abelian group Z^n / rowspace(relations).
///
/// Immutable; copies share the presentation and its cached Smith data.
/// Elements are integer vectors in generator coordinates. Canonical
/// coordinates live in the Smith basis with trivial (d = 1) factors dropped,
/// torsion coordinates reduced into [0, d).
class FPGroup {
 public:
  FPGroup();
  FPGroup(std::vector<std::string> labels, IntMatrix relations);

  /// Rebuilds from previously computed Smith data. Throws StructuralError if
  /// the transforms are inconsistent (V * V^-1 != I, wrong shapes).
  static FPGroup with_smith(std::vector<std::string> labels, IntMatrix relations, ColumnSmith smith);

  static FPGroup free(std::size_t rank, const std::string& prefix = "e");
  /// Direct sum of cyclic groups Z/d (d == 0 means Z).
  static FPGroup from_invariants(std::span<const Int> factors, const std::string& prefix = "e");

  std::size_t generator_count() const;
  const std::vector<std::string>& labels() const;
  const IntMatrix& relations() const;
  const ColumnSmith& smith() const;

  /// Nontrivial invariant factors: torsion d1 | d2 | ... then one 0 per free summand.
  const IntVector& invariant_factors() const;
  IntVector torsion_factors() const;
  std::size_t free_rank() const;
  std::optional<Int> order() const;
  bool is_trivial() const;
  bool is_finite() const { return free_rank() == 0; }
  /// "0", "Z/6", "Z^2 + Z/2 + Z/4".
  std::string describe() const;

  /// Canonical coordinates; two vectors share a normal form iff their
  /// difference lies in the relation lattice.
  IntVector normal_form(std::span<const Int> element) const;
  bool is_zero(std::span<const Int> element) const;
  bool equal(std::span<const Int> a, std::span<const Int> b) const;
  /// nullopt for elements of infinite order.
  std::optional<Int> element_order(std::span<const Int> element) const;
  /// Generator-coordinate vector whose normal form is `canonical`.
  IntVector representative(std::span<const Int> canonical) const;
  IntVector generator(std::size_t index) const;
  IntVector zero() const;

  /// Same generators, relation matrix extended by `extra` rows.
  FPGroup with_relations(const IntMatrix& extra) const;

  bool isomorphic(const FPGroup& other) const;

  /// Smith-basis coordinates of an element before reduction, restricted to
  /// the nontrivial factors.
  IntVector smith_coordinates(std::span<const Int> element) const;
  /// Smith basis vector i (nontrivial index) in generator coordinates.
  IntVector smith_generator(std::size_t i) const;

  struct Data;

 private:
  explicit FPGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// Odd part of every invariant factor; free rank unchanged. Models - (x) Z[1/2].
FPGroup localize_away_2(const FPGroup& g);

FPGroup direct_sum(const FPGroup& a, const FPGroup& b);

/// Homomorphism x -> x * matrix from source generator coordinates to target
/// generator coordinates; validated against the source relations.
class FPHom {
 public:
  /// Throws NotWellDefined naming the first source relation whose image is
  /// nonzero in the target.
  FPHom(FPGroup source, FPGroup target, IntMatrix matrix);

  const FPGroup& source() const { return source_; }
  const FPGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  IntVector apply(std::span<const Int> element) const;
  /// x -> next(this(x)).
  FPHom then(const FPHom& next) const;

  static FPHom identity(const FPGroup& g);
  static FPHom zero(const FPGroup& source, const FPGroup& target);

 private:
  FPGroup source_;
  FPGroup target_;
  IntMatrix matrix_;
};

struct KernelImageCokernel {
  FPGroup kernel;
  FPHom kernel_inclusion;
  FPGroup image;
  FPHom image_inclusion;
  FPGroup cokernel;
  FPHom cokernel_projection;
};

KernelImageCokernel kernel_image_cokernel(const FPHom& h);

/// Stable text record: labels, row-major relations, invariant factors and,
/// optionally, the Smith transforms.
void write_record(std::ostream& os, const FPGroup& g, bool include_smith);
/// Throws StructuralError on malformed input.
FPGroup read_record(std::istream& is);

}  // namespace rbloch
