#pragma once

#include <cstdint>

#include "rbloch/fp_group.hpp"
#include "rbloch/group_ring.hpp"

namespace rbloch {

/// Z[1/2]-module M on which <g> acts as chi(g) = +-1. The character is a
/// bitmask c: chi(v) = (-1)^{popcount(v & c)}. The underlying group is
/// localized away from 2 on construction.
class ChiModule {
 public:
  ChiModule(SquareClassGroup v, std::uint32_t character, const FPGroup& module);

  const SquareClassGroup& square_classes() const { return v_; }
  std::uint32_t character() const { return character_; }
  const FPGroup& module() const { return module_; }
  int chi(std::size_t v) const;

 private:
  SquareClassGroup v_;
  std::uint32_t character_;
  FPGroup module_;
};

struct ChiAction {
  /// sum n_v chi(v).
  Int scalar;
  /// r M = M, i.e. multiplication by the scalar is onto (hence bijective).
  bool bijective = false;
};

/// Throws StructuralError when r does not live in the group ring of m's V.
ChiAction mchi_action(const ChiModule& m, const GroupRingElement& r);

}  // namespace rbloch
