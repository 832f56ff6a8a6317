#include "rbloch/finite_field.hpp"

#include "rbloch/errors.hpp"

namespace rbloch {

struct FiniteField::Tables {
  std::uint32_t p = 0;
  std::uint32_t f = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;
  std::uint32_t primitive = 0;
  std::vector<std::uint32_t> exp;  // exp[k] = u^k, k < q-1
  std::vector<std::uint32_t> log;  // log[a], a != 0
  std::vector<std::uint32_t> neg;
  std::vector<std::uint16_t> add;  // q*q table when q is small
};

namespace {

constexpr std::uint32_t kAddTableLimit = 1024;

using PrimePoly = std::vector<std::uint32_t>;

void trim(PrimePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

PrimePoly pmod(PrimePoly a, const PrimePoly& m, std::uint32_t p) {
  trim(a);
  std::size_t dm = m.size() - 1;
  std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * m[i]) % p);
    trim(a);
  }
  return a;
}

PrimePoly pmulmod(const PrimePoly& a, const PrimePoly& b, const PrimePoly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PrimePoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  return pmod(std::move(r), m, p);
}

PrimePoly ppowmod(PrimePoly base, std::uint64_t e, const PrimePoly& m, std::uint32_t p) {
  PrimePoly r{1};
  base = pmod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = pmulmod(r, base, m, p);
    base = pmulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

PrimePoly pgcd(PrimePoly a, PrimePoly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = pmod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Rabin's test over F_p.
bool irreducible_over_prime(const PrimePoly& g, std::uint32_t p) {
  std::size_t n = g.size() - 1;
  if (n == 1) return true;
  PrimePoly x{0, 1};
  auto frob_power = [&](std::size_t k) {
    PrimePoly h = x;
    for (std::size_t i = 0; i < k; ++i) h = ppowmod(h, p, g, p);
    return h;
  };
  for (std::uint64_t r : prime_divisors(n)) {
    PrimePoly h = frob_power(n / r);
    h.resize(std::max<std::size_t>(h.size(), 2));
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    if (pgcd(g, h, p).size() != 1) return false;
  }
  PrimePoly h = frob_power(n);
  h.resize(std::max<std::size_t>(h.size(), 2));
  h[1] = (h[1] + p - 1) % p;
  trim(h);
  return h.empty();
}

PrimePoly code_to_poly(std::uint32_t code, std::uint32_t p, std::uint32_t f) {
  PrimePoly c(f);
  for (std::uint32_t i = 0; i < f; ++i) {
    c[i] = code % p;
    code /= p;
  }
  trim(c);
  return c;
}

std::uint32_t poly_to_code(const PrimePoly& c, std::uint32_t p) {
  std::uint32_t code = 0;
  for (std::size_t i = c.size(); i-- > 0;) code = code * p + c[i];
  return code;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::shared_ptr<FiniteField::Tables> build_tables(std::uint32_t p, std::uint32_t f, std::uint64_t min_order);

}  // namespace

FiniteField FiniteField::create(std::uint32_t p, std::uint32_t f) { return FiniteField(build_tables(p, f, 5)); }

FiniteField FiniteField::create_auxiliary(std::uint32_t p, std::uint32_t f) {
  return FiniteField(build_tables(p, f, 3));
}

namespace {

std::shared_ptr<FiniteField::Tables> build_tables(std::uint32_t p, std::uint32_t f, std::uint64_t min_order) {
  if (p == 2) throw UnsupportedField("characteristic 2 is not supported (odd characteristic required)");
  if (!is_prime(p)) throw UnsupportedField("characteristic " + std::to_string(p) + " is not prime");
  if (f == 0) throw UnsupportedField("extension degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < f; ++i) {
    q *= p;
    if (q > FiniteField::kMaxOrder) throw UnsupportedField("field order exceeds the table limit");
  }
  if (q < min_order) throw UnsupportedField("fields with fewer than 5 elements are not supported (q >= 5 required)");

  auto t = std::make_shared<FiniteField::Tables>();
  t->p = p;
  t->f = f;
  t->q = static_cast<std::uint32_t>(q);

  // Least monic irreducible of degree f: lower coefficients in code order.
  for (std::uint32_t low = 0; low < t->q; ++low) {
    PrimePoly g = code_to_poly(low, p, f);
    g.resize(f + 1);
    g[f] = 1;
    if (irreducible_over_prime(g, p)) {
      t->modulus = g;
      break;
    }
  }

  std::uint64_t group = q - 1;
  auto divisors = prime_divisors(group);
  for (std::uint32_t code = 1; code < t->q; ++code) {
    PrimePoly a = code_to_poly(code, p, f);
    bool generator = true;
    for (std::uint64_t r : divisors) {
      PrimePoly h = ppowmod(a, group / r, t->modulus, p);
      if (h.size() == 1 && h[0] == 1) {
        generator = false;
        break;
      }
    }
    if (generator) {
      t->primitive = code;
      break;
    }
  }

  t->exp.resize(group);
  t->log.assign(t->q, 0);
  PrimePoly u = code_to_poly(t->primitive, p, f);
  PrimePoly cur{1};
  for (std::uint64_t k = 0; k < group; ++k) {
    std::uint32_t c = poly_to_code(cur, p);
    t->exp[k] = c;
    t->log[c] = static_cast<std::uint32_t>(k);
    cur = pmulmod(cur, u, t->modulus, p);
  }

  t->neg.resize(t->q);
  for (std::uint32_t a = 0; a < t->q; ++a) {
    std::uint32_t out = 0, pw = 1, x = a;
    for (std::uint32_t i = 0; i < f; ++i) {
      std::uint32_t d = x % p;
      x /= p;
      out += ((p - d) % p) * pw;
      pw *= p;
    }
    t->neg[a] = out;
  }
  if (t->q <= kAddTableLimit) {
    t->add.resize(static_cast<std::size_t>(t->q) * t->q);
    for (std::uint32_t a = 0; a < t->q; ++a)
      for (std::uint32_t b = 0; b < t->q; ++b) {
        std::uint32_t out = 0, pw = 1, x = a, y = b;
        for (std::uint32_t i = 0; i < f; ++i) {
          out += ((x % p + y % p) % p) * pw;
          x /= p;
          y /= p;
          pw *= p;
        }
        t->add[static_cast<std::size_t>(a) * t->q + b] = static_cast<std::uint16_t>(out);
      }
  }
  return t;
}

}  // namespace

FiniteField FiniteField::with_order(std::uint64_t q) {
  if (q < 2) throw UnsupportedField("field order must be a prime power >= 5");
  std::uint64_t p = 2;
  while (q % p) ++p;
  std::uint32_t f = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++f;
  }
  if (r != 1) throw UnsupportedField(std::to_string(q) + " is not a prime power");
  if (p > UINT32_MAX) throw UnsupportedField("characteristic too large");
  return create(static_cast<std::uint32_t>(p), f);
}

std::uint32_t FiniteField::characteristic() const { return t_->p; }
std::uint32_t FiniteField::degree() const { return t_->f; }
std::uint32_t FiniteField::order() const { return t_->q; }
const std::vector<std::uint32_t>& FiniteField::modulus() const { return t_->modulus; }
FFElement FiniteField::primitive() const { return {t_->primitive}; }

FFElement FiniteField::from_int(long long n) const {
  long long p = t_->p;
  long long r = ((n % p) + p) % p;
  return {static_cast<std::uint32_t>(r)};
}

FFElement FiniteField::element(std::uint32_t code) const {
  if (code >= t_->q) throw DomainError("element code out of range");
  return {code};
}

std::vector<FFElement> FiniteField::nonzero_elements() const {
  std::vector<FFElement> out;
  for (std::uint32_t c = 1; c < t_->q; ++c) out.push_back({c});
  return out;
}

FFElement FiniteField::add(FFElement a, FFElement b) const {
  if (!t_->add.empty()) return {t_->add[static_cast<std::size_t>(a.code) * t_->q + b.code]};
  std::uint32_t p = t_->p, out = 0, pw = 1, x = a.code, y = b.code;
  for (std::uint32_t i = 0; i < t_->f; ++i) {
    out += ((x % p + y % p) % p) * pw;
    x /= p;
    y /= p;
    pw *= p;
  }
  return {out};
}

FFElement FiniteField::neg(FFElement a) const { return {t_->neg[a.code]}; }
FFElement FiniteField::sub(FFElement a, FFElement b) const { return add(a, neg(b)); }

FFElement FiniteField::mul(FFElement a, FFElement b) const {
  if (a.code == 0 || b.code == 0) return {0};
  std::uint64_t k = static_cast<std::uint64_t>(t_->log[a.code]) + t_->log[b.code];
  return {t_->exp[k % (t_->q - 1)]};
}

FFElement FiniteField::inv(FFElement a) const {
  if (a.code == 0) throw DomainError("inverse of zero");
  std::uint32_t n = t_->q - 1;
  return {t_->exp[(n - t_->log[a.code]) % n]};
}

FFElement FiniteField::div(FFElement a, FFElement b) const { return mul(a, inv(b)); }

FFElement FiniteField::pow(FFElement a, long long e) const {
  if (a.code == 0) {
    if (e < 0) throw DomainError("negative power of zero");
    return e == 0 ? one() : zero();
  }
  long long n = t_->q - 1;
  long long k = (static_cast<long long>(t_->log[a.code]) * (((e % n) + n) % n)) % n;
  return {t_->exp[static_cast<std::size_t>(k)]};
}

FFElement FiniteField::pow(FFElement a, const Int& e) const {
  Int n = t_->q - 1;
  if (a.code == 0) {
    if (e < 0) throw DomainError("negative power of zero");
    return e == 0 ? one() : zero();
  }
  Int r = floor_mod(e, n);
  return pow(a, static_cast<long long>(r.get_si()));
}

FFElement FiniteField::exp(std::uint64_t k) const { return {t_->exp[k % (t_->q - 1)]}; }

std::uint32_t FiniteField::dlog(FFElement a) const {
  if (a.code == 0) throw DomainError("discrete logarithm of zero");
  return t_->log[a.code];
}

bool FiniteField::is_square(FFElement a) const {
  if (a.code == 0) throw DomainError("square class of zero");
  return t_->log[a.code] % 2 == 0;
}

std::vector<std::uint32_t> FiniteField::coordinates(FFElement a) const {
  std::vector<std::uint32_t> c(t_->f);
  std::uint32_t x = a.code;
  for (auto& d : c) {
    d = x % t_->p;
    x /= t_->p;
  }
  return c;
}

FFElement FiniteField::from_coordinates(std::span<const std::uint32_t> coords) const {
  if (coords.size() != t_->f) throw StructuralError("coordinate vector has wrong length");
  std::uint32_t code = 0;
  for (std::size_t i = coords.size(); i-- > 0;) code = code * t_->p + coords[i] % t_->p;
  return {code};
}

std::string FiniteField::to_string(FFElement a) const {
  if (a.code < t_->p) return std::to_string(a.code);
  std::uint32_t k = dlog(a);
  return k == 1 ? std::string("u") : "u^" + std::to_string(k);
}

std::string FiniteField::name() const { return "F" + std::to_string(t_->q); }

bool operator==(const FiniteField& a, const FiniteField& b) {
  return a.t_ == b.t_ || (a.t_->p == b.t_->p && a.t_->f == b.t_->f);
}

}  // namespace rbloch
