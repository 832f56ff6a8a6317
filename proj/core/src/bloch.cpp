#include "rbloch/bloch.hpp"

#include "rbloch/errors.hpp"

namespace rbloch {

namespace {

void require_supported(const FiniteField& k) {
  if (k.order() < 5) throw UnsupportedField(k.name() + ": pre-Bloch groups need q >= 5");
}

struct Term {
  long sign;
  FFElement klass;
  FFElement arg;
};

// Terms of the five-term relation in x, y with their square-class coefficients.
std::vector<Term> five_term(const FiniteField& k, FFElement x, FFElement y) {
  FFElement one = k.one();
  FFElement xi = k.inv(x), yi = k.inv(y);
  FFElement c1 = k.sub(xi, one);
  return {
      {1, one, x},
      {-1, one, y},
      {1, x, k.div(y, x)},
      {-1, c1, k.div(k.sub(one, xi), k.sub(one, yi))},
      {1, k.sub(one, x), k.div(k.sub(one, x), k.sub(one, y))},
  };
}

std::vector<std::string> symbol_labels(const FiniteField& k, const std::string& prefix) {
  std::vector<std::string> labels;
  for (FFElement a : k.nonzero_elements()) labels.push_back(prefix + "[" + k.to_string(a) + "]");
  return labels;
}

}  // namespace

IntMatrix PreBloch::relation_matrix(const FiniteField& k) {
  std::size_t n = k.order() - 1;
  IntMatrix rel(0, n);
  IntVector row(n);
  row[0] = 1;
  rel.append_row(row);
  for (FFElement x : k.nonzero_elements()) {
    if (x == k.one()) continue;
    for (FFElement y : k.nonzero_elements()) {
      if (y == k.one()) continue;
      std::fill(row.begin(), row.end(), Int(0));
      for (const Term& t : five_term(k, x, y)) row[t.arg.code - 1] += t.sign;
      rel.append_row(row);
    }
  }
  rel.compact();
  return rel;
}

std::vector<std::string> PreBloch::generator_labels(const FiniteField& k) { return symbol_labels(k, ""); }

PreBloch PreBloch::build(const FiniteField& k) {
  require_supported(k);
  return PreBloch(k, FPGroup(generator_labels(k), relation_matrix(k)));
}

PreBloch PreBloch::from_group(const FiniteField& k, FPGroup group) {
  require_supported(k);
  if (group.generator_count() != k.order() - 1) throw StructuralError("pre-Bloch presentation has wrong generator count");
  return PreBloch(k, std::move(group));
}

std::size_t PreBloch::index(FFElement a) const {
  if (a == field_.zero()) throw DomainError("[0] is not a symbol");
  return a.code - 1;
}

IntVector PreBloch::symbol(FFElement a) const { return group_.generator(index(a)); }

IntVector PreBloch::constant_element() const { return constant_element(field_.element(2)); }

IntVector PreBloch::constant_element(FFElement x) const {
  if (x == field_.zero() || x == field_.one()) throw DomainError("C needs x outside {0, 1}");
  return add(symbol(x), symbol(field_.sub(field_.one(), x)));
}

IntVector PreBloch::psi(FFElement x) const { return add(symbol(x), symbol(field_.inv(x))); }

RefinedPreBloch::RefinedPreBloch(FiniteField k, FPGroup g)
    : field_(k), group_(std::move(g)), ring_(SquareClassGroup::of_field(k)) {}

IntMatrix RefinedPreBloch::relation_matrix(const FiniteField& k) {
  std::size_t n = k.order() - 1;
  IntMatrix rel(0, 2 * n);
  IntVector row(2 * n);
  auto cls = [&](FFElement a) -> std::size_t { return k.is_square(a) ? 0 : 1; };
  for (std::size_t v = 0; v < 2; ++v) {
    std::fill(row.begin(), row.end(), Int(0));
    row[v * n] = 1;
    rel.append_row(row);
  }
  for (FFElement x : k.nonzero_elements()) {
    if (x == k.one()) continue;
    for (FFElement y : k.nonzero_elements()) {
      if (y == k.one()) continue;
      auto terms = five_term(k, x, y);
      for (std::size_t v = 0; v < 2; ++v) {
        std::fill(row.begin(), row.end(), Int(0));
        for (const Term& t : terms) row[(v ^ cls(t.klass)) * n + t.arg.code - 1] += t.sign;
        rel.append_row(row);
      }
    }
  }
  rel.compact();
  return rel;
}

std::vector<std::string> RefinedPreBloch::generator_labels(const FiniteField& k) {
  auto labels = symbol_labels(k, "<1>");
  for (auto& l : symbol_labels(k, "<n>")) labels.push_back(std::move(l));
  return labels;
}

RefinedPreBloch RefinedPreBloch::build(const FiniteField& k) {
  require_supported(k);
  return RefinedPreBloch(k, FPGroup(generator_labels(k), relation_matrix(k)));
}

RefinedPreBloch RefinedPreBloch::from_group(const FiniteField& k, FPGroup group) {
  require_supported(k);
  if (group.generator_count() != 2 * (k.order() - 1))
    throw StructuralError("refined pre-Bloch presentation has wrong generator count");
  return RefinedPreBloch(k, std::move(group));
}

std::size_t RefinedPreBloch::index(std::size_t v, FFElement a) const {
  if (a == field_.zero()) throw DomainError("[0] is not a symbol");
  if (v > 1) throw StructuralError("square class out of range");
  return v * (field_.order() - 1) + a.code - 1;
}

IntVector RefinedPreBloch::symbol(FFElement a, std::size_t v) const { return group_.generator(index(v, a)); }

IntVector RefinedPreBloch::act(std::size_t v, std::span<const Int> x) const {
  std::size_t n = field_.order() - 1;
  if (x.size() != 2 * n) throw StructuralError("element has wrong length");
  IntVector out(2 * n);
  for (std::size_t w = 0; w < 2; ++w)
    for (std::size_t i = 0; i < n; ++i) out[(w ^ v) * n + i] = x[w * n + i];
  return out;
}

IntVector RefinedPreBloch::act(const GroupRingElement& r, std::span<const Int> x) const {
  IntVector out(x.size());
  for (std::size_t v = 0; v < ring_.dimension(); ++v)
    if (r.coeffs.at(v) != 0) out = add(out, scale(r.coeffs[v], act(v, x)));
  return out;
}

FPHom RefinedPreBloch::action(std::size_t v) const {
  std::size_t m = group_.generator_count();
  IntMatrix mat(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    IntVector e = group_.generator(i);
    IntVector img = act(v, e);
    for (std::size_t j = 0; j < m; ++j)
      if (img[j] != 0) mat.set(i, j, img[j]);
  }
  return FPHom(group_, group_, std::move(mat));
}

IntVector RefinedPreBloch::constant_element() const { return constant_element(field_.element(2)); }

IntVector RefinedPreBloch::constant_element(FFElement x) const {
  if (x == field_.zero() || x == field_.one()) throw DomainError("C needs x outside {0, 1}");
  return add(symbol(x), symbol(field_.sub(field_.one(), x)));
}

IntVector RefinedPreBloch::psi(FFElement x) const { return add(symbol(x), symbol(field_.inv(x))); }

IntVector RefinedPreBloch::psi1(FFElement x) const {
  std::size_t minus_one = field_.is_square(field_.neg(field_.one())) ? 0 : 1;
  return add(symbol(x), symbol(field_.inv(x), minus_one));
}

FPGroup RefinedPreBloch::coinvariants() const {
  std::size_t n = field_.order() - 1;
  IntMatrix extra(0, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    IntVector row(2 * n);
    row[i] = -1;
    row[n + i] = 1;
    extra.append_row(row);
  }
  return group_.with_relations(extra);
}

namespace {

TildeQuotient quotient_by(const FPGroup& g, const IntMatrix& extra) {
  FPGroup q = g.with_relations(extra);
  FPHom proj(g, q, IntMatrix::identity(g.generator_count()));
  return {std::move(q), std::move(proj)};
}

}  // namespace

TildeQuotient quotient_tilde(const PreBloch& p) {
  IntMatrix extra(0, p.group().generator_count());
  for (FFElement x : p.field().nonzero_elements()) extra.append_row(p.psi(x));
  return quotient_by(p.group(), extra);
}

TildeQuotient quotient_tilde(const RefinedPreBloch& rp) {
  IntMatrix extra(0, rp.group().generator_count());
  for (FFElement x : rp.field().nonzero_elements()) {
    IntVector s = rp.psi1(x);
    extra.append_row(s);
    extra.append_row(rp.act(1, s));
  }
  return quotient_by(rp.group(), extra);
}

IntVector SymSquare::circ(FFElement a, FFElement b) const {
  return {Int(field.dlog(a)) * Int(field.dlog(b))};
}

SymSquare sym_square(const FiniteField& k) {
  IntMatrix rel = IntMatrix::from_rows({{2}, {static_cast<long>(k.order()) - 1}});
  return {k, FPGroup({"u∘u"}, std::move(rel))};
}

K2Sequence sym_square_and_k2(const PreBloch& p) {
  const FiniteField& k = p.field();
  SymSquare s2 = sym_square(k);
  IntMatrix m(p.group().generator_count(), 1);
  for (FFElement a : k.nonzero_elements())
    if (a != k.one()) m.set(p.index(a), 0, s2.circ(a, k.sub(k.one(), a))[0]);
  FPHom map(p.group(), s2.group, std::move(m));
  FPGroup coker = kernel_image_cokernel(map).cokernel;
  return {std::move(s2), std::move(map), std::move(coker)};
}

IntVector LambdaMap::image(std::size_t v, FFElement a) const {
  const GroupRing& r = square_ideal.ring();
  const FiniteField& k = r.group().field();
  IntVector out(square_ideal.rank() + 1);
  if (a == k.one()) return out;
  FFElement b = k.sub(k.one(), a);
  GroupRingElement l1 = r.mul(r.basis(v), r.mul(r.pfister_of(a), r.pfister_of(b)));
  auto c = square_ideal.coordinates(l1);
  if (!c) throw StructuralError("Steinberg element outside I^2");
  std::copy(c->begin(), c->end(), out.begin());
  out.back() = s2.circ(a, b)[0];
  return out;
}

IntVector LambdaMap::act_on_codomain(std::size_t v, std::span<const Int> y) const {
  std::size_t r = square_ideal.rank();
  if (y.size() != r + 1) throw StructuralError("codomain element has wrong length");
  const GroupRing& ring = square_ideal.ring();
  GroupRingElement x = ring.zero();
  for (std::size_t i = 0; i < r; ++i) x = ring.add(x, ring.scale(y[i], square_ideal.basis_element(i)));
  auto c = square_ideal.coordinates(ring.mul(ring.basis(v), x));
  IntVector out(c->begin(), c->end());
  out.push_back(y[r]);
  return out;
}

LambdaMap lambda_map(const RefinedPreBloch& rp) {
  const GroupRing& ring = rp.ring();
  IdealLattice i2 = IdealLattice::augmentation(ring).power(2);
  SymSquare s2 = sym_square(rp.field());
  FPGroup codomain = direct_sum(FPGroup::free(i2.rank(), "I2_"), s2.group);
  LambdaMap lam{i2, s2, FPHom::zero(rp.group(), codomain)};
  IntMatrix m(rp.group().generator_count(), codomain.generator_count());
  for (std::size_t v = 0; v < ring.dimension(); ++v)
    for (FFElement a : rp.field().nonzero_elements()) {
      IntVector img = lam.image(v, a);
      for (std::size_t j = 0; j < img.size(); ++j)
        if (img[j] != 0) m.set(rp.index(v, a), j, img[j]);
    }
  lam.hom = FPHom(rp.group(), codomain, std::move(m));
  return lam;
}

RefinedBloch refined_bloch(const LambdaMap& lambda, const TildeQuotient& tilde) {
  KernelImageCokernel ker = kernel_image_cokernel(lambda.hom);
  FPHom to_tilde = ker.kernel_inclusion.then(tilde.projection);
  KernelImageCokernel red = kernel_image_cokernel(to_tilde);
  RefinedBloch out{ker.kernel, ker.kernel_inclusion, red.image, red.kernel, red.kernel_inclusion, false, false};
  out.kernel_killed_by_4 = true;
  for (std::size_t i = 0; i < red.kernel.generator_count(); ++i) {
    IntVector g = red.kernel_inclusion.apply(red.kernel.generator(i));
    if (!out.bloch.is_zero(scale(4, g))) out.kernel_killed_by_4 = false;
  }
  out.odd_parts_isomorphic = localize_away_2(out.bloch).isomorphic(localize_away_2(out.reduced));
  return out;
}

RefinedBloch refined_bloch(const FiniteField& k) {
  RefinedPreBloch rp = RefinedPreBloch::build(k);
  return refined_bloch(lambda_map(rp), quotient_tilde(rp));
}

}  // namespace rbloch
