#pragma once

#include <string>
#include <vector>

#include "rbloch/finite_field.hpp"
#include "rbloch/fp_group.hpp"
#include "rbloch/group_ring.hpp"

namespace rbloch {

/// P(F_q): generators [a] for a in F_q^x in code order, relations [1] = 0 and
///   [x] - [y] + [y/x] - [(1-x^-1)/(1-y^-1)] + [(1-x)/(1-y)]
/// for all x, y != 1 (x == y included).
class PreBloch {
 public:
  /// Throws UnsupportedField outside odd q >= 5.
  static PreBloch build(const FiniteField& k);
  /// Reuses a presentation (e.g. from a cache); throws StructuralError when
  /// the generator count does not match.
  static PreBloch from_group(const FiniteField& k, FPGroup group);
  static IntMatrix relation_matrix(const FiniteField& k);
  static std::vector<std::string> generator_labels(const FiniteField& k);

  const FiniteField& field() const { return field_; }
  const FPGroup& group() const { return group_; }
  std::size_t index(FFElement a) const;
  IntVector symbol(FFElement a) const;
  /// [x] + [1-x]; the no-argument form uses the least x outside {0, 1}.
  IntVector constant_element() const;
  IntVector constant_element(FFElement x) const;
  /// [x] + [x^-1].
  IntVector psi(FFElement x) const;

 private:
  PreBloch(FiniteField k, FPGroup g) : field_(std::move(k)), group_(std::move(g)) {}
  FiniteField field_;
  FPGroup group_;
};

/// RP(F_q): generators <v>[a], v in V = F_q^x / squares, a in F_q^x; the
/// relations are all V-translates of [1] = 0 and
///   [x] - [y] + <x>[y/x] - <x^-1 - 1>[(1-x^-1)/(1-y^-1)] + <1-x>[(1-x)/(1-y)].
class RefinedPreBloch {
 public:
  static RefinedPreBloch build(const FiniteField& k);
  static RefinedPreBloch from_group(const FiniteField& k, FPGroup group);
  static IntMatrix relation_matrix(const FiniteField& k);
  static std::vector<std::string> generator_labels(const FiniteField& k);

  const FiniteField& field() const { return field_; }
  const FPGroup& group() const { return group_; }
  const GroupRing& ring() const { return ring_; }
  std::size_t index(std::size_t v, FFElement a) const;
  IntVector symbol(FFElement a, std::size_t v = 0) const;
  /// Action of the basis element <v> on generator coordinates.
  IntVector act(std::size_t v, std::span<const Int> x) const;
  IntVector act(const GroupRingElement& r, std::span<const Int> x) const;
  /// <v> as an endomorphism of the presented group.
  FPHom action(std::size_t v) const;
  IntVector constant_element() const;
  IntVector constant_element(FFElement x) const;
  IntVector psi(FFElement x) const;
  /// [x] + <-1>[x^-1].
  IntVector psi1(FFElement x) const;
  /// Quotient by <v>x - x; isomorphic to P(F_q).
  FPGroup coinvariants() const;

 private:
  RefinedPreBloch(FiniteField k, FPGroup g);
  FiniteField field_;
  FPGroup group_;
  GroupRing ring_;
};

struct TildeQuotient {
  FPGroup group;
  FPHom projection;
};

/// P~ = P / <psi(x)>.
TildeQuotient quotient_tilde(const PreBloch& p);
/// RP~ = RP / Z[V]<psi1(x)>.
TildeQuotient quotient_tilde(const RefinedPreBloch& rp);

/// S_2(F_q) on the single generator u∘u with relations 2 and q - 1.
struct SymSquare {
  FiniteField field;
  FPGroup group;
  /// a∘b = dlog(a) dlog(b) (u∘u).
  IntVector circ(FFElement a, FFElement b) const;
};

SymSquare sym_square(const FiniteField& k);

struct K2Sequence {
  SymSquare s2;
  /// [a] -> a∘(1-a), [1] -> 0.
  FPHom map;
  FPGroup cokernel;
};

K2Sequence sym_square_and_k2(const PreBloch& p);

/// Lambda = (lambda_1, lambda_2): RP -> I^2 + S_2 with
/// lambda_1(<v>[a]) = <v><<a>><<1-a>> and lambda_2(<v>[a]) = a∘(1-a).
/// V acts on I^2 by multiplication and trivially on S_2.
struct LambdaMap {
  IdealLattice square_ideal;
  SymSquare s2;
  FPHom hom;

  IntVector image(std::size_t v, FFElement a) const;
  /// Action of <v> on codomain coordinates.
  IntVector act_on_codomain(std::size_t v, std::span<const Int> y) const;
};

/// Throws NotWellDefined if a relation of RP has nonzero image.
LambdaMap lambda_map(const RefinedPreBloch& rp);

struct RefinedBloch {
  FPGroup bloch;
  /// B -> RP.
  FPHom inclusion;
  /// Image of B in RP~.
  FPGroup reduced;
  /// Kernel of B -> RB~ with its inclusion into B.
  FPGroup reduction_kernel;
  FPHom reduction_kernel_inclusion;
  /// Every reduction-kernel generator times 4 is zero in B.
  bool kernel_killed_by_4 = false;
  bool odd_parts_isomorphic = false;
};

RefinedBloch refined_bloch(const LambdaMap& lambda, const TildeQuotient& tilde);
RefinedBloch refined_bloch(const FiniteField& k);

}  // namespace rbloch
