#include "rbloch/polynomial.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "rbloch/errors.hpp"

namespace rbloch {

bool operator<(const Polynomial& a, const Polynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.coeffs.size(); i-- > 0;)
    if (a.coeffs[i] != b.coeffs[i]) return a.coeffs[i] < b.coeffs[i];
  return false;
}

namespace {

void trim(Polynomial& a) {
  while (!a.coeffs.empty() && a.coeffs.back().code == 0) a.coeffs.pop_back();
}

}  // namespace

PolynomialRing::PolynomialRing(FiniteField field, std::uint64_t seed) : field_(std::move(field)), seed_(seed) {}

Polynomial PolynomialRing::constant(FFElement c) const {
  Polynomial p;
  if (c.code != 0) p.coeffs.push_back(c);
  return p;
}

Polynomial PolynomialRing::variable() const { return Polynomial{{field_.zero(), field_.one()}}; }

Polynomial PolynomialRing::monomial(FFElement c, std::size_t degree) const {
  if (c.code == 0) return {};
  Polynomial p;
  p.coeffs.assign(degree + 1, field_.zero());
  p.coeffs[degree] = c;
  return p;
}

Polynomial PolynomialRing::linear(FFElement root) const { return Polynomial{{field_.neg(root), field_.one()}}; }

Polynomial PolynomialRing::add(const Polynomial& a, const Polynomial& b) const {
  Polynomial r;
  r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = field_.add(a.coeff(i), b.coeff(i));
  trim(r);
  return r;
}

Polynomial PolynomialRing::neg(const Polynomial& a) const {
  Polynomial r = a;
  for (auto& c : r.coeffs) c = field_.neg(c);
  return r;
}

Polynomial PolynomialRing::sub(const Polynomial& a, const Polynomial& b) const { return add(a, neg(b)); }

Polynomial PolynomialRing::mul(const Polynomial& a, const Polynomial& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  Polynomial r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, field_.zero());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i].code == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      r.coeffs[i + j] = field_.add(r.coeffs[i + j], field_.mul(a.coeffs[i], b.coeffs[j]));
  }
  trim(r);
  return r;
}

Polynomial PolynomialRing::scale(FFElement c, const Polynomial& a) const {
  if (c.code == 0) return {};
  Polynomial r = a;
  for (auto& x : r.coeffs) x = field_.mul(c, x);
  return r;
}

std::pair<Polynomial, Polynomial> PolynomialRing::divmod(const Polynomial& a, const Polynomial& b) const {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  Polynomial rem = a;
  if (a.degree() < b.degree()) return {Polynomial{}, rem};
  Polynomial quo;
  quo.coeffs.assign(static_cast<std::size_t>(a.degree() - b.degree() + 1), field_.zero());
  FFElement lead_inv = field_.inv(b.leading());
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    std::size_t shift = static_cast<std::size_t>(rem.degree() - b.degree());
    FFElement c = field_.mul(rem.leading(), lead_inv);
    quo.coeffs[shift] = c;
    for (std::size_t i = 0; i < b.coeffs.size(); ++i)
      rem.coeffs[shift + i] = field_.sub(rem.coeffs[shift + i], field_.mul(c, b.coeffs[i]));
    trim(rem);
  }
  trim(quo);
  return {quo, rem};
}

Polynomial PolynomialRing::monic(const Polynomial& a) const {
  if (a.is_zero()) return a;
  return scale(field_.inv(a.leading()), a);
}

Polynomial PolynomialRing::gcd(const Polynomial& a, const Polynomial& b) const {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

Polynomial PolynomialRing::derivative(const Polynomial& a) const {
  Polynomial r;
  for (std::size_t i = 1; i < a.coeffs.size(); ++i)
    r.coeffs.push_back(field_.mul(field_.from_int(static_cast<long long>(i)), a.coeffs[i]));
  trim(r);
  return r;
}

Polynomial PolynomialRing::pow(const Polynomial& a, unsigned e) const {
  Polynomial r = constant(field_.one()), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

Polynomial PolynomialRing::powmod(const Polynomial& a, const Int& e, const Polynomial& m) const {
  if (e < 0) throw DomainError("negative exponent in powmod");
  Polynomial r = mod(constant(field_.one()), m);
  Polynomial b = mod(a, m);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mod(mul(r, r), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mod(mul(r, b), m);
  }
  return r;
}

FFElement PolynomialRing::evaluate(const Polynomial& a, FFElement x) const {
  FFElement acc = field_.zero();
  for (std::size_t i = a.coeffs.size(); i-- > 0;) acc = field_.add(field_.mul(acc, x), a.coeffs[i]);
  return acc;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool PolynomialRing::is_irreducible(const Polynomial& a) const {
  int n = a.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  Polynomial f = monic(a);
  Int q = field_.order();
  Polynomial x = variable();
  auto frob = [&](std::uint64_t k) {
    Polynomial h = mod(x, f);
    for (std::uint64_t i = 0; i < k; ++i) h = powmod(h, q, f);
    return h;
  };
  for (std::uint64_t r : prime_factors(static_cast<std::uint64_t>(n))) {
    Polynomial h = sub(frob(static_cast<std::uint64_t>(n) / r), x);
    if (gcd(f, h).degree() != 0) return false;
  }
  return mod(sub(frob(static_cast<std::uint64_t>(n)), x), f).is_zero();
}

std::vector<Polynomial> PolynomialRing::monic_of_degree(std::size_t degree) const {
  std::uint64_t q = field_.order();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < degree; ++i) count *= q;
  std::vector<Polynomial> out;
  out.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Polynomial p;
    p.coeffs.resize(degree + 1);
    std::uint64_t x = idx;
    for (std::size_t i = 0; i < degree; ++i) {
      p.coeffs[i] = FFElement{static_cast<std::uint32_t>(x % q)};
      x /= q;
    }
    p.coeffs[degree] = field_.one();
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Polynomial> PolynomialRing::irreducibles(std::size_t max_degree) const {
  std::vector<Polynomial> out;
  for (std::size_t d = 1; d <= max_degree; ++d)
    for (auto& p : monic_of_degree(d))
      if (is_irreducible(p)) out.push_back(std::move(p));
  return out;
}

Polynomial PolynomialRing::pth_root(const Polynomial& a) const {
  std::uint32_t p = field_.characteristic();
  Int root_exp = 1;
  for (std::uint32_t i = 1; i < field_.degree(); ++i) root_exp *= p;  // c^(q/p) is the p-th root
  Polynomial r;
  for (std::size_t i = 0; i < a.coeffs.size(); i += p) r.coeffs.push_back(field_.pow(a.coeffs[i], root_exp));
  trim(r);
  return r;
}

std::vector<std::pair<Polynomial, int>> PolynomialRing::squarefree(const Polynomial& f) const {
  std::vector<std::pair<Polynomial, int>> out;
  if (f.degree() <= 0) return out;
  int p = static_cast<int>(field_.characteristic());
  Polynomial fp = derivative(f);
  if (fp.is_zero()) {
    for (auto& [g, m] : squarefree(pth_root(f))) out.emplace_back(g, m * p);
    return out;
  }
  Polynomial c = gcd(f, fp);
  Polynomial w = quotient(f, c);
  int i = 1;
  while (w.degree() > 0) {
    Polynomial y = gcd(w, c);
    Polynomial fac = quotient(w, y);
    if (fac.degree() > 0) out.emplace_back(fac, i);
    w = y;
    c = quotient(c, y);
    ++i;
  }
  if (c.degree() > 0)
    for (auto& [g, m] : squarefree(pth_root(c))) out.emplace_back(g, m * p);
  return out;
}

std::vector<std::pair<Polynomial, int>> PolynomialRing::distinct_degree(const Polynomial& f) const {
  std::vector<std::pair<Polynomial, int>> out;
  Polynomial rest = f;
  Polynomial x = variable();
  Polynomial h = x;
  Int q = field_.order();
  int i = 1;
  while (rest.degree() >= 2 * i) {
    h = powmod(h, q, rest);
    Polynomial g = gcd(sub(h, x), rest);
    if (g.degree() > 0) {
      out.emplace_back(g, i);
      rest = quotient(rest, g);
      h = mod(h, rest);
    }
    ++i;
  }
  if (rest.degree() > 0) out.emplace_back(rest, rest.degree());
  return out;
}

void PolynomialRing::equal_degree(const Polynomial& f, int d, std::vector<Polynomial>& out,
                                  std::mt19937_64& rng) const {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  Int q = field_.order();
  Int qd = 1;
  for (int i = 0; i < d; ++i) qd *= q;
  Int e = (qd - 1) / 2;
  std::uniform_int_distribution<std::uint32_t> coeff(0, field_.order() - 1);
  constexpr int kMaxTries = 64;
  for (int attempt = 0; attempt < kMaxTries; ++attempt) {
    Polynomial a;
    a.coeffs.resize(static_cast<std::size_t>(f.degree()));
    for (auto& c : a.coeffs) c = FFElement{coeff(rng)};
    trim(a);
    if (a.degree() <= 0) continue;
    Polynomial g = gcd(a, f);
    if (g.degree() <= 0 || g.degree() >= f.degree()) {
      Polynomial b = powmod(a, e, f);
      g = gcd(sub(b, constant(field_.one())), f);
    }
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, out, rng);
      equal_degree(quotient(f, g), d, out, rng);
      return;
    }
  }
  if (f.degree() <= 4) {
    for (auto& [g, m] : factor_by_trial_division(f).factors)
      for (int k = 0; k < m; ++k) out.push_back(g);
    return;
  }
  throw std::runtime_error("equal-degree splitting failed for " + to_string(f));
}

Factorization PolynomialRing::factor(const Polynomial& a) const {
  if (a.is_zero()) throw DomainError("factorization of the zero polynomial");
  Factorization out;
  out.unit = a.leading();
  std::mt19937_64 rng(seed_);
  std::map<Polynomial, int> merged;
  for (auto& [s, mult] : squarefree(monic(a))) {
    for (auto& [g, d] : distinct_degree(s)) {
      std::vector<Polynomial> pieces;
      equal_degree(g, d, pieces, rng);
      for (auto& piece : pieces) merged[monic(piece)] += mult;
    }
  }
  out.factors.assign(merged.begin(), merged.end());
  return out;
}

Factorization PolynomialRing::factor_by_trial_division(const Polynomial& a) const {
  if (a.is_zero()) throw DomainError("factorization of the zero polynomial");
  Factorization out;
  out.unit = a.leading();
  Polynomial rest = monic(a);
  for (std::size_t d = 1; rest.degree() >= static_cast<int>(2 * d); ++d) {
    for (const auto& p : monic_of_degree(d)) {
      if (!is_irreducible(p)) continue;
      int m = 0;
      for (;;) {
        auto [quo, rem] = divmod(rest, p);
        if (!rem.is_zero()) break;
        rest = std::move(quo);
        ++m;
      }
      if (m) out.factors.emplace_back(p, m);
    }
  }
  if (rest.degree() > 0) {
    auto it = std::find_if(out.factors.begin(), out.factors.end(), [&](auto& e) { return e.first == rest; });
    if (it != out.factors.end())
      ++it->second;
    else
      out.factors.emplace_back(rest, 1);
  }
  std::sort(out.factors.begin(), out.factors.end());
  return out;
}

int PolynomialRing::multiplicity(const Polynomial& a, const Polynomial& pi) const {
  if (a.is_zero()) throw DomainError("multiplicity in the zero polynomial");
  int m = 0;
  Polynomial rest = a;
  for (;;) {
    auto [quo, rem] = divmod(rest, pi);
    if (!rem.is_zero()) return m;
    rest = std::move(quo);
    ++m;
  }
}

std::string PolynomialRing::to_string(const Polynomial& a) const {
  if (a.is_zero()) return "0";
  std::string out;
  for (std::size_t i = a.coeffs.size(); i-- > 0;) {
    FFElement c = a.coeffs[i];
    if (c.code == 0) continue;
    if (!out.empty()) out += '+';
    std::string cs = field_.to_string(c);
    if (i == 0) {
      out += cs;
      continue;
    }
    if (c != field_.one()) out += cs + "*";
    out += 't';
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace rbloch
