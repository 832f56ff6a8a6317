#include "rbloch/function_field.hpp"

#include <algorithm>

#include "rbloch/errors.hpp"

namespace rbloch {

RationalFunctionField::RationalFunctionField(FiniteField base) : ring_(std::move(base)) {}

FunctionFieldElement RationalFunctionField::zero() const { return {{}, ring_.constant(base().one())}; }
FunctionFieldElement RationalFunctionField::one() const { return constant(base().one()); }
FunctionFieldElement RationalFunctionField::t() const { return from_polynomial(ring_.variable()); }

FunctionFieldElement RationalFunctionField::constant(FFElement c) const {
  return {ring_.constant(c), ring_.constant(base().one())};
}

FunctionFieldElement RationalFunctionField::from_polynomial(Polynomial p) const {
  return {std::move(p), ring_.constant(base().one())};
}

FunctionFieldElement RationalFunctionField::fraction(Polynomial num, Polynomial den) const {
  if (den.is_zero()) throw DomainError("division by the zero polynomial");
  if (num.is_zero()) return zero();
  Polynomial g = ring_.gcd(num, den);
  if (g.degree() > 0) {
    num = ring_.quotient(num, g);
    den = ring_.quotient(den, g);
  }
  FFElement lead_inv = base().inv(den.leading());
  return {ring_.scale(lead_inv, num), ring_.scale(lead_inv, den)};
}

FunctionFieldElement RationalFunctionField::add(const FunctionFieldElement& a, const FunctionFieldElement& b) const {
  if (a.den == b.den) return fraction(ring_.add(a.num, b.num), a.den);
  return fraction(ring_.add(ring_.mul(a.num, b.den), ring_.mul(b.num, a.den)), ring_.mul(a.den, b.den));
}

FunctionFieldElement RationalFunctionField::neg(const FunctionFieldElement& a) const {
  return {ring_.neg(a.num), a.den};
}

FunctionFieldElement RationalFunctionField::sub(const FunctionFieldElement& a, const FunctionFieldElement& b) const {
  return add(a, neg(b));
}

FunctionFieldElement RationalFunctionField::mul(const FunctionFieldElement& a, const FunctionFieldElement& b) const {
  return fraction(ring_.mul(a.num, b.num), ring_.mul(a.den, b.den));
}

FunctionFieldElement RationalFunctionField::inv(const FunctionFieldElement& a) const {
  if (a.is_zero()) throw DomainError("inverse of zero in " + name());
  return fraction(a.den, a.num);
}

FunctionFieldElement RationalFunctionField::div(const FunctionFieldElement& a, const FunctionFieldElement& b) const {
  if (b.is_zero()) throw DomainError("division by zero in " + name());
  return fraction(ring_.mul(a.num, b.den), ring_.mul(a.den, b.num));
}

FunctionFieldElement RationalFunctionField::pow(const FunctionFieldElement& a, long long e) const {
  if (e < 0) return pow(inv(a), -e);
  return fraction(ring_.pow(a.num, static_cast<unsigned>(e)), ring_.pow(a.den, static_cast<unsigned>(e)));
}

bool RationalFunctionField::is_one(const FunctionFieldElement& a) const { return a == one(); }

std::optional<FFElement> RationalFunctionField::as_constant(const FunctionFieldElement& a) const {
  if (a.den.degree() != 0 || a.num.degree() > 0) return std::nullopt;
  return a.num.is_zero() ? base().zero() : a.num.coeffs[0];
}

FunctionSquareClass RationalFunctionField::square_class(const FunctionFieldElement& a) const {
  if (a.is_zero()) throw DomainError("square class of zero");
  FunctionSquareClass out;
  FFElement lead = base().div(a.num.leading(), a.den.leading());
  out.leading_square = base().is_square(lead);
  for (const auto* side : {&a.num, &a.den})
    for (auto& [p, m] : ring_.factor(*side).factors)
      if (m % 2) out.odd_primes.push_back(p);
  std::sort(out.odd_primes.begin(), out.odd_primes.end());
  return out;
}

FunctionFieldElement RationalFunctionField::square_class_representative(const FunctionFieldElement& a) const {
  FunctionSquareClass c = square_class(a);
  Polynomial rep = ring_.constant(c.leading_square ? base().one() : base().primitive());
  for (const auto& p : c.odd_primes) rep = ring_.mul(rep, p);
  return from_polynomial(std::move(rep));
}

std::vector<Polynomial> RationalFunctionField::support(const FunctionFieldElement& a) const {
  if (a.is_zero()) throw DomainError("support of zero");
  std::vector<Polynomial> out;
  for (const auto* side : {&a.num, &a.den})
    for (auto& [p, m] : ring_.factor(*side).factors) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

std::string RationalFunctionField::to_string(const FunctionFieldElement& a) const {
  auto terms = [](const Polynomial& p) {
    return std::count_if(p.coeffs.begin(), p.coeffs.end(), [](FFElement c) { return c.code != 0; });
  };
  std::string num = ring_.to_string(a.num);
  if (a.den.degree() == 0) return num;
  if (terms(a.num) > 1) num = "(" + num + ")";
  std::string den = ring_.to_string(a.den);
  if (terms(a.den) > 1) den = "(" + den + ")";
  return num + "/" + den;
}

std::string RationalFunctionField::name() const { return base().name() + "(t)"; }

ValuedPlace::ValuedPlace(const RationalFunctionField& k, Polynomial pi, bool infinite)
    : base_(k.base()),
      ring_(k.ring()),
      pi_(std::move(pi)),
      infinite_(infinite),
      residue_(infinite ? k.base()
                        : FiniteField::create(k.base().characteristic(),
                                              k.base().degree() * static_cast<std::uint32_t>(pi_.degree()))) {
  const FiniteField& big = residue_;
  embedding_.resize(base_.order());
  if (infinite_ || pi_.degree() == 1) {
    for (std::uint32_t c = 0; c < base_.order(); ++c) embedding_[c] = FFElement{c};
  } else {
    // Least root z of the base modulus in the residue field; x -> z.
    const auto& g = base_.modulus();
    auto eval_modulus = [&](FFElement z) {
      FFElement acc = big.zero();
      for (std::size_t i = g.size(); i-- > 0;) acc = big.add(big.mul(acc, z), big.from_int(g[i]));
      return acc;
    };
    FFElement z{0};
    for (std::uint32_t c = 0; c < big.order(); ++c)
      if (eval_modulus(FFElement{c}).code == 0) {
        z = FFElement{c};
        break;
      }
    for (std::uint32_t c = 0; c < base_.order(); ++c) {
      auto coords = base_.coordinates(FFElement{c});
      FFElement acc = big.zero();
      for (std::size_t i = coords.size(); i-- > 0;) acc = big.add(big.mul(acc, z), big.from_int(coords[i]));
      embedding_[c] = acc;
    }
  }
  if (!infinite_) {
    bool found = false;
    for (std::uint32_t c = 0; c < big.order() && !found; ++c) {
      FFElement acc = big.zero();
      for (std::size_t i = pi_.coeffs.size(); i-- > 0;)
        acc = big.add(big.mul(acc, FFElement{c}), embedding_[pi_.coeffs[i].code]);
      if (acc.code == 0) {
        root_ = FFElement{c};
        found = true;
      }
    }
    if (!found) throw DomainError("uniformizer has no root in its residue field");
  }
}

ValuedPlace ValuedPlace::finite(const RationalFunctionField& k, Polynomial pi) {
  if (pi.is_zero() || pi.leading() != k.base().one())
    throw DomainError("place uniformizer must be monic: " + k.ring().to_string(pi));
  if (!k.ring().is_irreducible(pi))
    throw DomainError("place uniformizer must be irreducible: " + k.ring().to_string(pi));
  return ValuedPlace(k, std::move(pi), false);
}

ValuedPlace ValuedPlace::infinite(const RationalFunctionField& k) { return ValuedPlace(k, Polynomial{}, true); }

long ValuedPlace::valuation(const FunctionFieldElement& a) const {
  if (a.is_zero()) throw DomainError("valuation of zero");
  if (infinite_) return static_cast<long>(a.den.degree()) - static_cast<long>(a.num.degree());
  return ring_.multiplicity(a.num, pi_) - ring_.multiplicity(a.den, pi_);
}

FFElement ValuedPlace::reduce_polynomial(const Polynomial& p) const {
  const FiniteField& big = residue_;
  FFElement acc = big.zero();
  for (std::size_t i = p.coeffs.size(); i-- > 0;) acc = big.add(big.mul(acc, root_), embedding_[p.coeffs[i].code]);
  return acc;
}

FFElement ValuedPlace::reduce(const FunctionFieldElement& a) const {
  if (a.is_zero() || valuation(a) != 0) throw DomainError("element is not a unit at place " + name());
  if (infinite_) return residue_.div(a.num.leading(), a.den.leading());
  return residue_.div(reduce_polynomial(a.num), reduce_polynomial(a.den));
}

FFElement ValuedPlace::embed(FFElement c) const { return embedding_.at(c.code); }

std::string ValuedPlace::name() const { return infinite_ ? std::string("1/t") : ring_.to_string(pi_); }

}  // namespace rbloch
