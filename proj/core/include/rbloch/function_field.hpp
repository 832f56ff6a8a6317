#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rbloch/finite_field.hpp"
#include "rbloch/polynomial.hpp"

namespace rbloch {

/// num / den with gcd(num, den) == 1 and den monic; zero is 0/1.
struct FunctionFieldElement {
  Polynomial num;
  Polynomial den;

  bool is_zero() const { return num.is_zero(); }
  friend bool operator==(const FunctionFieldElement&, const FunctionFieldElement&) = default;
  friend bool operator<(const FunctionFieldElement& a, const FunctionFieldElement& b) {
    if (!(a.num == b.num)) return a.num < b.num;
    return a.den < b.den;
  }
};

/// Square class of a nonzero element of F_q(t): the class of its leading
/// coefficient ratio in F_q^x / squares plus the primes of odd valuation.
struct FunctionSquareClass {
  bool leading_square = true;
  std::vector<Polynomial> odd_primes;  // sorted, monic irreducible

  bool is_square() const { return leading_square && odd_primes.empty(); }
  friend bool operator==(const FunctionSquareClass&, const FunctionSquareClass&) = default;
};

/// The rational function field F_q(t).
class RationalFunctionField {
 public:
  explicit RationalFunctionField(FiniteField base);

  const FiniteField& base() const { return ring_.field(); }
  const PolynomialRing& ring() const { return ring_; }

  FunctionFieldElement zero() const;
  FunctionFieldElement one() const;
  FunctionFieldElement t() const;
  FunctionFieldElement constant(FFElement c) const;
  FunctionFieldElement from_polynomial(Polynomial p) const;
  /// Throws DomainError when den == 0.
  FunctionFieldElement fraction(Polynomial num, Polynomial den) const;

  FunctionFieldElement add(const FunctionFieldElement& a, const FunctionFieldElement& b) const;
  FunctionFieldElement sub(const FunctionFieldElement& a, const FunctionFieldElement& b) const;
  FunctionFieldElement neg(const FunctionFieldElement& a) const;
  FunctionFieldElement mul(const FunctionFieldElement& a, const FunctionFieldElement& b) const;
  FunctionFieldElement inv(const FunctionFieldElement& a) const;
  FunctionFieldElement div(const FunctionFieldElement& a, const FunctionFieldElement& b) const;
  FunctionFieldElement pow(const FunctionFieldElement& a, long long e) const;

  bool is_one(const FunctionFieldElement& a) const;
  /// nullopt unless a lies in F_q.
  std::optional<FFElement> as_constant(const FunctionFieldElement& a) const;

  /// Throws DomainError for a == 0.
  FunctionSquareClass square_class(const FunctionFieldElement& a) const;
  /// Canonical representative of the square class: c * prod(odd primes) with
  /// c in {1, u}.
  FunctionFieldElement square_class_representative(const FunctionFieldElement& a) const;
  /// Monic irreducibles dividing num or den.
  std::vector<Polynomial> support(const FunctionFieldElement& a) const;

  /// "(t+1)/(t^2+2)"; a side is parenthesized when it has several terms.
  std::string to_string(const FunctionFieldElement& a) const;
  /// "F5(t)".
  std::string name() const;

 private:
  PolynomialRing ring_;
};

/// A place of F_q(t): a monic irreducible uniformizer pi, or the degree place
/// with uniformizer 1/t. The residue field is the canonical field of order
/// q^deg(pi); F_q embeds by the identity when deg(pi) == 1 and otherwise by
/// sending x to the least root of F_q's modulus. Reduction sends t to the
/// least root of pi in the residue field.
class ValuedPlace {
 public:
  /// Throws DomainError unless pi is monic irreducible.
  static ValuedPlace finite(const RationalFunctionField& k, Polynomial pi);
  static ValuedPlace infinite(const RationalFunctionField& k);

  bool is_infinite() const { return infinite_; }
  const Polynomial& uniformizer() const { return pi_; }
  std::size_t degree() const { return infinite_ ? 1 : static_cast<std::size_t>(pi_.degree()); }
  const FiniteField& residue_field() const { return residue_; }
  /// Throws DomainError for a == 0.
  long valuation(const FunctionFieldElement& a) const;
  /// Throws DomainError unless valuation(a) == 0.
  FFElement reduce(const FunctionFieldElement& a) const;
  /// Residue-field image of a base-field constant.
  FFElement embed(FFElement c) const;
  std::string name() const;

 private:
  ValuedPlace(const RationalFunctionField& k, Polynomial pi, bool infinite);
  FFElement reduce_polynomial(const Polynomial& p) const;

  FiniteField base_;
  PolynomialRing ring_;
  Polynomial pi_;
  bool infinite_ = false;
  FiniteField residue_;
  std::vector<FFElement> embedding_;
  FFElement root_;
};

}  // namespace rbloch
