#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rbloch/finite_field.hpp"

namespace rbloch {

/// Univariate polynomial over a finite field; coefficients low to high with
/// no trailing zeros (the zero polynomial is empty).
struct Polynomial {
  std::vector<FFElement> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  FFElement leading() const { return coeffs.empty() ? FFElement{0} : coeffs.back(); }
  FFElement coeff(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : FFElement{0}; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
  /// Degree first, then coefficients from the top down in code order.
  friend bool operator<(const Polynomial& a, const Polynomial& b);
};

struct Factorization {
  FFElement unit;
  /// Monic irreducible factors with multiplicities, sorted.
  std::vector<std::pair<Polynomial, int>> factors;
};

/// Arithmetic in F_q[t].
class PolynomialRing {
 public:
  explicit PolynomialRing(FiniteField field, std::uint64_t seed = 0x5eed'b10c'1234ULL);

  const FiniteField& field() const { return field_; }

  Polynomial constant(FFElement c) const;
  Polynomial variable() const;
  Polynomial monomial(FFElement c, std::size_t degree) const;
  Polynomial linear(FFElement root) const;  // t - root

  Polynomial add(const Polynomial& a, const Polynomial& b) const;
  Polynomial sub(const Polynomial& a, const Polynomial& b) const;
  Polynomial neg(const Polynomial& a) const;
  Polynomial mul(const Polynomial& a, const Polynomial& b) const;
  Polynomial scale(FFElement c, const Polynomial& a) const;
  /// Throws DomainError for b == 0.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) const;
  Polynomial mod(const Polynomial& a, const Polynomial& b) const { return divmod(a, b).second; }
  Polynomial quotient(const Polynomial& a, const Polynomial& b) const { return divmod(a, b).first; }
  /// Monic gcd; gcd(0, 0) == 0.
  Polynomial gcd(const Polynomial& a, const Polynomial& b) const;
  Polynomial monic(const Polynomial& a) const;
  Polynomial derivative(const Polynomial& a) const;
  Polynomial pow(const Polynomial& a, unsigned e) const;
  Polynomial powmod(const Polynomial& a, const Int& e, const Polynomial& m) const;
  FFElement evaluate(const Polynomial& a, FFElement x) const;

  bool is_irreducible(const Polynomial& a) const;
  /// All monic polynomials of the given degree in polynomial order.
  std::vector<Polynomial> monic_of_degree(std::size_t degree) const;
  /// Monic irreducibles of degree 1..max_degree in polynomial order.
  std::vector<Polynomial> irreducibles(std::size_t max_degree) const;

  /// Cantor-Zassenhaus with a fixed seed; splitting falls back to trial
  /// division when the random search stalls on degree <= 4.
  Factorization factor(const Polynomial& a) const;
  /// Deterministic factorization by trial division over enumerated
  /// irreducibles; intended for low degrees and cross-checks.
  Factorization factor_by_trial_division(const Polynomial& a) const;
  /// Multiplicity of the irreducible pi in a (a != 0).
  int multiplicity(const Polynomial& a, const Polynomial& pi) const;

  /// Canonical text: decreasing degree, '+'-joined, e.g. "t^2+4*t+1".
  std::string to_string(const Polynomial& a) const;

 private:
  std::vector<std::pair<Polynomial, int>> squarefree(const Polynomial& monic_poly) const;
  std::vector<std::pair<Polynomial, int>> distinct_degree(const Polynomial& squarefree_monic) const;
  void equal_degree(const Polynomial& f, int d, std::vector<Polynomial>& out, std::mt19937_64& rng) const;
  Polynomial pth_root(const Polynomial& a) const;

  FiniteField field_;
  std::uint64_t seed_;
};

}  // namespace rbloch
