#include "rbloch/formal.hpp"

namespace rbloch {

IntVector evaluate(const PreBloch& p, const FormalBlochElement<FFElement>& x) {
  IntVector out = p.group().zero();
  for (const auto& t : x.terms) out[p.index(t.argument)] += t.coefficient;
  return out;
}

IntVector evaluate(const RefinedPreBloch& rp, const FormalBlochElement<FFElement>& x) {
  const FiniteField& k = rp.field();
  IntVector out = rp.group().zero();
  for (const auto& t : x.terms) out[rp.index(k.is_square(t.square_class) ? 0 : 1, t.argument)] += t.coefficient;
  return out;
}

}  // namespace rbloch
