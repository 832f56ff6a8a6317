#include "rbloch/chi_module.hpp"

#include <bit>

#include "rbloch/errors.hpp"

namespace rbloch {

ChiModule::ChiModule(SquareClassGroup v, std::uint32_t character, const FPGroup& module)
    : v_(std::move(v)), character_(character), module_(localize_away_2(module)) {
  if (character_ >= v_.size()) throw StructuralError("character mask exceeds the rank of V");
}

int ChiModule::chi(std::size_t v) const {
  if (v >= v_.size()) throw StructuralError("group element out of range");
  return std::popcount(static_cast<std::uint32_t>(v) & character_) % 2 == 0 ? 1 : -1;
}

ChiAction mchi_action(const ChiModule& m, const GroupRingElement& r) {
  if (r.coeffs.size() != m.square_classes().size())
    throw StructuralError("group ring element of rank mismatch: " + std::to_string(r.coeffs.size()) +
                          " coefficients for |V| = " + std::to_string(m.square_classes().size()));
  ChiAction out;
  out.scalar = 0;
  for (std::size_t v = 0; v < r.coeffs.size(); ++v) out.scalar += r.coeffs[v] * m.chi(v);

  // On the free part (a Z[1/2]-module) the scalar is a unit iff it is +-2^k.
  const FPGroup& g = m.module();
  if (g.free_rank() > 0 && (out.scalar == 0 || abs(odd_part(out.scalar)) != 1)) return out;

  IntVector torsion = g.torsion_factors();
  FPGroup t = FPGroup::from_invariants(torsion);
  std::size_t n = t.generator_count();
  IntVector diag(n, out.scalar);
  FPHom mult(t, t, IntMatrix::diagonal(diag, n, n));
  out.bijective = kernel_image_cokernel(mult).cokernel.is_trivial();
  return out;
}

}  // namespace rbloch
