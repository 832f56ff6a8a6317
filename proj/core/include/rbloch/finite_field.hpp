#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rbloch/int_matrix.hpp"

namespace rbloch {

/// Element of a finite field, encoded as sum c_i p^i over its coordinates
/// c_i in the polynomial basis. The code order is the fixed element order used
/// everywhere (least primitive element, least root, generator ordering).
struct FFElement {
  std::uint32_t code = 0;
  friend auto operator<=>(const FFElement&, const FFElement&) = default;
};

/// F_q for q = p^f with p odd and q >= 5, realized as F_p[x]/(g) for the
/// least monic irreducible g of degree f, with log/exp tables over the least
/// primitive element u.
class FiniteField {
 public:
  /// Throws UnsupportedField for even p, non-prime p, q < 5 or q too large
  /// for table arithmetic.
  static FiniteField create(std::uint32_t p, std::uint32_t f);
  /// Like create() but admits F_3; for polynomial arithmetic that does not
  /// touch Bloch or Witt structures.
  static FiniteField create_auxiliary(std::uint32_t p, std::uint32_t f);
  /// Parses q as a prime power.
  static FiniteField with_order(std::uint64_t q);

  static constexpr std::uint64_t kMaxOrder = 1u << 20;

  std::uint32_t characteristic() const;
  std::uint32_t degree() const;
  std::uint32_t order() const;
  /// Defining polynomial over F_p, low to high, monic of length degree()+1.
  const std::vector<std::uint32_t>& modulus() const;
  FFElement primitive() const;

  FFElement zero() const { return {0}; }
  FFElement one() const { return {1}; }
  FFElement from_int(long long n) const;
  FFElement element(std::uint32_t code) const;
  std::vector<FFElement> nonzero_elements() const;

  FFElement add(FFElement a, FFElement b) const;
  FFElement sub(FFElement a, FFElement b) const;
  FFElement neg(FFElement a) const;
  FFElement mul(FFElement a, FFElement b) const;
  /// Throws DomainError for a == 0.
  FFElement inv(FFElement a) const;
  FFElement div(FFElement a, FFElement b) const;
  FFElement pow(FFElement a, long long e) const;
  FFElement pow(FFElement a, const Int& e) const;
  /// u^k.
  FFElement exp(std::uint64_t k) const;

  /// Exponent k in [0, q-1) with u^k == a. Throws DomainError for a == 0.
  std::uint32_t dlog(FFElement a) const;
  /// Throws DomainError for a == 0.
  bool is_square(FFElement a) const;

  std::vector<std::uint32_t> coordinates(FFElement a) const;
  FFElement from_coordinates(std::span<const std::uint32_t> coords) const;

  /// Prime-field elements print as 0..p-1, others as u^k.
  std::string to_string(FFElement a) const;
  /// "F25".
  std::string name() const;

  friend bool operator==(const FiniteField& a, const FiniteField& b);

  struct Tables;

 private:
  explicit FiniteField(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}
  std::shared_ptr<const Tables> t_;
};

bool is_prime(std::uint64_t n);

}  // namespace rbloch
