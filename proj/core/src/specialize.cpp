#include "rbloch/specialize.hpp"

#include <random>

#include "rbloch/errors.hpp"

namespace rbloch {

std::string to_string(Twist phi) { return phi == Twist::Trivial ? "0" : "mod2"; }

Twist parse_twist(std::string_view text) {
  if (text == "0" || text == "trivial") return Twist::Trivial;
  if (text == "mod2" || text == "parity" || text == "1") return Twist::Parity;
  throw ParseError(0, "unknown twist '" + std::string(text) + "' (expected 0 or mod2)");
}

Specializer::Specializer(RationalFunctionField k) : domain_(std::move(k)) {}

std::shared_ptr<const ResidueTarget> Specializer::target(const FiniteField& residue) const {
  std::lock_guard lock(mutex_);
  auto it = cache_.find(residue.order());
  if (it != cache_.end()) return it->second;
  PreBloch p = PreBloch::build(residue);
  TildeQuotient tilde = quotient_tilde(p);
  IntVector c = p.constant_element();
  auto t = std::make_shared<const ResidueTarget>(ResidueTarget{std::move(p), std::move(tilde), std::move(c)});
  cache_.emplace(residue.order(), t);
  return t;
}

int Specializer::sign(const ValuedPlace& place, Twist phi, const FunctionFieldElement& g) const {
  if (phi == Twist::Trivial) return 1;
  return place.valuation(g) % 2 == 0 ? 1 : -1;
}

TwistedValue Specializer::apply(const ValuedPlace& place, Twist phi, const FunctionFormal& xi) const {
  auto tgt = target(place.residue_field());
  const PreBloch& p = tgt->pre_bloch;
  IntVector raw = p.group().zero();
  for (const auto& term : xi.terms) {
    if (term.argument.is_zero()) throw DomainError("specialization of a symbol with zero argument");
    Int c = term.coefficient * sign(place, phi, term.square_class);
    long v = place.valuation(term.argument);
    if (v == 0)
      raw[p.index(place.reduce(term.argument))] += c;
    else
      raw = add(raw, scale(v > 0 ? c : Int(-c), tgt->constant));
  }
  TwistedValue out;
  out.place = place.name();
  out.residue_field = place.residue_field().name();
  out.normal_form = tgt->tilde.group.normal_form(raw);
  out.is_zero = is_zero(out.normal_form);
  out.raw = std::move(raw);
  return out;
}

namespace {

class RandomElements {
 public:
  RandomElements(const RationalFunctionField& k, std::uint64_t seed, int max_degree)
      : k_(k), rng_(seed), max_degree_(max_degree) {}

  Polynomial polynomial() {
    const FiniteField& f = k_.base();
    std::uniform_int_distribution<int> deg(0, max_degree_);
    std::uniform_int_distribution<std::uint32_t> coef(0, f.order() - 1), unit(1, f.order() - 1);
    int d = deg(rng_);
    Polynomial p;
    for (int i = 0; i < d; ++i) p.coeffs.push_back(f.element(coef(rng_)));
    p.coeffs.push_back(f.element(unit(rng_)));
    return p;
  }

  FunctionFieldElement unit() { return k_.fraction(polynomial(), polynomial()); }

  FunctionFieldElement non_one() {
    while (true) {
      auto x = unit();
      if (!k_.is_one(x)) return x;
    }
  }

  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  long small() { return std::uniform_int_distribution<long>(-3, 3)(rng_); }

 private:
  const RationalFunctionField& k_;
  std::mt19937_64 rng_;
  int max_degree_;
};

}  // namespace

std::vector<ValuedPlace> places_up_to(const RationalFunctionField& k, std::size_t max_degree) {
  std::vector<ValuedPlace> out;
  for (auto& pi : k.ring().irreducibles(max_degree)) out.push_back(ValuedPlace::finite(k, std::move(pi)));
  return out;
}

WdReport wd_suite(const WdOptions& options) {
  Specializer sp(RationalFunctionField(FiniteField::with_order(options.q)));
  return wd_suite(sp, options);
}

WdReport wd_suite(const Specializer& sp, const WdOptions& o) {
  const FunctionDomain& d = sp.domain();
  const RationalFunctionField& k = sp.field();
  if (k.base().order() != o.q) throw StructuralError("specializer field does not match q");
  WdReport report{o, 0, 0, 0, {}};
  auto places = places_up_to(k, o.max_place_degree);
  RandomElements rnd(k, o.seed, o.max_element_degree);
  auto show = [&](const FunctionFieldElement& a) { return k.to_string(a); };
  auto show_vec = [](const IntVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + ")";
  };

  for (std::size_t i = 0; i < o.relation_trials; ++i) {
    auto x = rnd.non_one();
    auto y = i % 25 == 0 ? x : rnd.non_one();
    const ValuedPlace& place = places[rnd.index(places.size())];
    TwistedValue s = sp.apply(place, o.phi, refined_five_term(d, x, y));
    ++report.relations_checked;
    if (!s.is_zero)
      report.violations.push_back("five-term x=" + show(x) + " y=" + show(y) + " at " + place.name() + ": " +
                                  show_vec(s.normal_form));
  }
  for (std::size_t i = 0; i < o.psi_trials; ++i) {
    auto x = rnd.unit();
    const ValuedPlace& place = places[rnd.index(places.size())];
    TwistedValue s = sp.apply(place, o.phi, formal_psi1(d, x));
    ++report.psi_checked;
    if (!s.is_zero)
      report.violations.push_back("psi1 x=" + show(x) + " at " + place.name() + ": " + show_vec(s.normal_form));
  }
  for (std::size_t i = 0; i < o.equivariance_trials; ++i) {
    FunctionFormal xi;
    std::size_t n = 1 + rnd.index(3);
    for (std::size_t j = 0; j < n; ++j) xi.terms.push_back({Int(rnd.small()), rnd.unit(), rnd.unit()});
    xi = normalize(d, std::move(xi));
    auto g = rnd.unit();
    const ValuedPlace& place = places[rnd.index(places.size())];
    auto tgt = sp.target(place.residue_field());
    TwistedValue lhs = sp.apply(place, o.phi, formal_act(d, g, xi));
    TwistedValue rhs = sp.apply(place, o.phi, xi);
    ++report.equivariance_checked;
    if (!tgt->tilde.group.equal(lhs.raw, scale(sp.sign(place, o.phi, g), rhs.raw)))
      report.violations.push_back("equivariance g=" + show(g) + " xi=" + format_formal(d, xi) + " at " +
                                  place.name());
  }
  return report;
}

std::vector<TwistedValue> ufd_residues(const Specializer& sp, const FunctionFormal& xi,
                                       const std::vector<ValuedPlace>& places, Twist phi) {
  std::vector<TwistedValue> out;
  out.reserve(places.size());
  for (const auto& p : places) out.push_back(sp.apply(p, phi, xi));
  return out;
}

std::vector<TwistedValue> support_scan(const Specializer& sp, const FunctionFormal& xi, std::size_t max_degree,
                                       Twist phi) {
  std::vector<TwistedValue> out;
  for (const auto& p : places_up_to(sp.field(), max_degree)) {
    TwistedValue v = sp.apply(p, phi, xi);
    if (!v.is_zero) out.push_back(std::move(v));
  }
  return out;
}

CorValWitness cor_val_witness(std::uint32_t q) {
  FiniteField f = FiniteField::with_order(q);
  CorValWitness w;
  w.q = q;
  w.odd_order = odd_part(Int(q) + 1);
  if (w.odd_order == 1)
    throw DomainError("no odd witness available for this q: (" + std::to_string(q) + "+1)' = 1");

  RationalFunctionField k(f);
  Specializer sp(k);
  const FunctionDomain& d = sp.domain();
  ValuedPlace place = ValuedPlace::finite(k, k.ring().variable());
  auto tgt = sp.target(place.residue_field());
  const FPGroup& pt = tgt->tilde.group;
  w.residue_field = place.residue_field().name();

  std::optional<FunctionFormal> xi;
  for (FFElement a : f.nonzero_elements()) {
    auto sym = formal_symbol(d, k.constant(a));
    auto n = pt.element_order(sp.apply(place, Twist::Parity, sym).raw);
    if (!n || odd_part(*n) == 1) continue;
    xi = formal_scale(d, *n / odd_part(*n), sym);
    break;
  }
  if (!xi) throw DomainError("no odd witness available for this q: no symbol of odd order in P~");

  TwistedValue y = sp.apply(place, Twist::Parity, *xi);
  w.xi = format_formal(d, *xi);
  w.y = y.normal_form;
  w.y_order = *pt.element_order(y.raw);

  auto pi_inv = k.inv(k.t());
  auto other = k.sub(k.one(), pi_inv);
  w.valuation_pi_inverse = place.valuation(pi_inv);
  w.valuation_one_minus_pi_inverse = place.valuation(other);
  w.sign_pi_inverse = sp.sign(place, Twist::Parity, pi_inv);
  w.sign_one_minus_pi_inverse = sp.sign(place, Twist::Parity, other);
  w.scalar = Int(w.sign_pi_inverse - 1) * Int(w.sign_one_minus_pi_inverse - 1);

  auto steinberg = [&](const FunctionFormal& z) { return formal_pfister(d, pi_inv, formal_pfister(d, other, z)); };
  TwistedValue s = sp.apply(place, Twist::Parity, steinberg(*xi));
  w.steinberg_value = s.normal_form;
  w.steinberg_is_4y = pt.equal(s.raw, scale(4, y.raw));
  w.steinberg_nonzero = !s.is_zero;
  TwistedValue s16 = sp.apply(place, Twist::Parity, steinberg(formal_scale(d, Int(4), *xi)));
  w.sixteen_y = pt.equal(s16.raw, scale(16, y.raw));
  return w;
}

KernelPrediction predicted_kernel(std::uint64_t q) {
  FiniteField f = FiniteField::with_order(q);
  KernelPrediction k;
  k.q = f.order();
  k.order = odd_part(Int(k.q) + 1);
  IntVector factors;
  if (k.order != 1) factors.push_back(k.order);
  k.group = FPGroup::from_invariants(factors, "y");
  return k;
}

bool cross_validate(const KernelPrediction& prediction, const PreBloch& p) {
  return p.field().order() == prediction.q && localize_away_2(p.group()).isomorphic(prediction.group);
}

}  // namespace rbloch
