#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "rbloch/bloch.hpp"
#include "rbloch/formal.hpp"
#include "rbloch/function_field.hpp"

namespace rbloch {

/// phi: Z -> Z/2, either zero or reduction mod 2.
enum class Twist { Trivial, Parity };

std::string to_string(Twist phi);
/// Accepts "0", "trivial", "mod2", "parity". Throws ParseError.
Twist parse_twist(std::string_view text);

/// P~ of a residue field together with the constant class C.
struct ResidueTarget {
  PreBloch pre_bloch;
  TildeQuotient tilde;
  IntVector constant;
};

struct TwistedValue {
  std::string place;
  std::string residue_field;
  /// Generator coordinates in P(residue field).
  IntVector raw;
  /// Canonical coordinates in P~(residue field).
  IntVector normal_form;
  bool is_zero = false;
};

using FunctionFormal = FormalBlochElement<FunctionFieldElement>;

/// S_{v,phi}: <g>[a] -> (-1)^{phi(v(g))} * ([a mod pi] if v(a) = 0, C if
/// v(a) > 0, -C if v(a) < 0) in P~(residue field). Residue targets are built
/// on first use and shared; safe to call from several threads.
class Specializer {
 public:
  explicit Specializer(RationalFunctionField k);

  const RationalFunctionField& field() const { return domain_.field(); }
  const FunctionDomain& domain() const { return domain_; }
  std::shared_ptr<const ResidueTarget> target(const FiniteField& residue) const;

  /// Throws DomainError on a zero argument.
  TwistedValue apply(const ValuedPlace& place, Twist phi, const FunctionFormal& xi) const;
  /// (-1)^{phi(v(g))}.
  int sign(const ValuedPlace& place, Twist phi, const FunctionFieldElement& g) const;

 private:
  FunctionDomain domain_;
  mutable std::mutex mutex_;
  mutable std::map<std::uint32_t, std::shared_ptr<const ResidueTarget>> cache_;
};

struct WdOptions {
  std::uint32_t q = 5;
  Twist phi = Twist::Parity;
  std::size_t relation_trials = 200;
  std::size_t psi_trials = 50;
  std::size_t equivariance_trials = 50;
  std::uint64_t seed = 20240601;
  std::size_t max_place_degree = 2;
  int max_element_degree = 3;
};

struct WdReport {
  WdOptions options;
  std::size_t relations_checked = 0;
  std::size_t psi_checked = 0;
  std::size_t equivariance_checked = 0;
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

/// Randomized well-definedness suite for S_phi over F_q(t): refined
/// five-term relations and psi1(x) must vanish, and
/// S(<g> xi) = (-1)^{phi(v(g))} S(xi).
WdReport wd_suite(const WdOptions& options);
WdReport wd_suite(const Specializer& sp, const WdOptions& options);

/// One component per place, in the given order.
std::vector<TwistedValue> ufd_residues(const Specializer& sp, const FunctionFormal& xi,
                                       const std::vector<ValuedPlace>& places, Twist phi);
/// Components at all monic irreducibles of degree <= max_degree that are nonzero.
std::vector<TwistedValue> support_scan(const Specializer& sp, const FunctionFormal& xi, std::size_t max_degree,
                                       Twist phi);
std::vector<ValuedPlace> places_up_to(const RationalFunctionField& k, std::size_t max_degree);

/// Steinberg obstruction at pi = t with phi = mod 2: xi with S(xi) = y of odd
/// order > 1, and S(<<pi^-1>><<1-pi^-1>> xi) = 4y.
struct CorValWitness {
  std::uint32_t q = 0;
  Int odd_order;
  std::string residue_field;
  std::string xi;
  IntVector y;
  Int y_order;
  long valuation_pi_inverse = 0;
  long valuation_one_minus_pi_inverse = 0;
  int sign_pi_inverse = 0;
  int sign_one_minus_pi_inverse = 0;
  /// Scalar by which the Steinberg element acts: (-2)(-2).
  Int scalar;
  IntVector steinberg_value;
  bool steinberg_is_4y = false;
  bool steinberg_nonzero = false;
  /// S(<<pi^-1>><<1-pi^-1>> 4 xi) == 16 y.
  bool sixteen_y = false;
};

/// Throws DomainError("no odd witness ...") when (q+1)' == 1.
CorValWitness cor_val_witness(std::uint32_t q);

struct KernelPrediction {
  std::uint32_t q = 0;
  /// (q+1)'.
  Int order;
  FPGroup group;
};

/// Throws UnsupportedField unless q is an odd prime power >= 5.
KernelPrediction predicted_kernel(std::uint64_t q);
/// Compares with P(F_q) (x) Z[1/2] computed from the presentation.
bool cross_validate(const KernelPrediction& prediction, const PreBloch& p);

}  // namespace rbloch
