#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rbloch/bloch.hpp"
#include "rbloch/errors.hpp"
#include "rbloch/expression.hpp"
#include "rbloch/finite_field.hpp"
#include "rbloch/function_field.hpp"

namespace rbloch {

/// coefficient * <square_class>[argument]; square_class is a canonical
/// representative of its class.
template <class Elem>
struct FormalTerm {
  Int coefficient;
  Elem square_class;
  Elem argument;
};

/// Finite formal sum of symbols <g>[a]. Normalized: terms sorted by
/// (argument, class), like terms merged, zero coefficients dropped.
template <class Elem>
struct FormalBlochElement {
  std::vector<FormalTerm<Elem>> terms;
  bool empty() const { return terms.empty(); }
};

/// Field adaptor for formal sums over F_q.
class FiniteDomain {
 public:
  using Element = FFElement;
  explicit FiniteDomain(FiniteField k) : k_(std::move(k)) {}
  const FiniteField& field() const { return k_; }

  Element one() const { return k_.one(); }
  Element nonsquare() const { return k_.primitive(); }
  bool is_zero(Element a) const { return a == k_.zero(); }
  Element add(Element a, Element b) const { return k_.add(a, b); }
  Element sub(Element a, Element b) const { return k_.sub(a, b); }
  Element mul(Element a, Element b) const { return k_.mul(a, b); }
  Element div(Element a, Element b) const { return k_.div(a, b); }
  Element inv(Element a) const { return k_.inv(a); }
  Element neg(Element a) const { return k_.neg(a); }
  Element canonical_class(Element a) const { return k_.is_square(a) ? one() : nonsquare(); }
  Element parse(std::string_view text, std::size_t offset) const { return parse_finite_element(k_, text, offset); }
  std::string format(Element a) const { return k_.to_string(a); }

 private:
  FiniteField k_;
};

/// Field adaptor for formal sums over F_q(t).
class FunctionDomain {
 public:
  using Element = FunctionFieldElement;
  explicit FunctionDomain(RationalFunctionField k) : k_(std::move(k)) {}
  const RationalFunctionField& field() const { return k_; }

  Element one() const { return k_.one(); }
  Element nonsquare() const { return k_.constant(k_.base().primitive()); }
  bool is_zero(const Element& a) const { return a.is_zero(); }
  Element add(const Element& a, const Element& b) const { return k_.add(a, b); }
  Element sub(const Element& a, const Element& b) const { return k_.sub(a, b); }
  Element mul(const Element& a, const Element& b) const { return k_.mul(a, b); }
  Element div(const Element& a, const Element& b) const { return k_.div(a, b); }
  Element inv(const Element& a) const { return k_.inv(a); }
  Element neg(const Element& a) const { return k_.neg(a); }
  Element canonical_class(const Element& a) const { return k_.square_class_representative(a); }
  Element parse(std::string_view text, std::size_t offset) const { return parse_function_element(k_, text, offset); }
  std::string format(const Element& a) const { return k_.to_string(a); }

 private:
  RationalFunctionField k_;
};

template <class Domain>
using FormalOf = FormalBlochElement<typename Domain::Element>;

template <class Domain>
FormalOf<Domain> normalize(const Domain& d, FormalOf<Domain> x) {
  for (auto& t : x.terms) {
    if (d.is_zero(t.argument)) throw DomainError("formal symbol with zero argument");
    t.square_class = d.canonical_class(t.square_class);
  }
  std::sort(x.terms.begin(), x.terms.end(), [](const auto& a, const auto& b) {
    if (a.argument < b.argument) return true;
    if (b.argument < a.argument) return false;
    return a.square_class < b.square_class;
  });
  FormalOf<Domain> out;
  for (auto& t : x.terms) {
    if (!out.terms.empty() && out.terms.back().argument == t.argument &&
        out.terms.back().square_class == t.square_class)
      out.terms.back().coefficient += t.coefficient;
    else
      out.terms.push_back(std::move(t));
  }
  std::erase_if(out.terms, [](const auto& t) { return t.coefficient == 0; });
  return out;
}

template <class Domain>
FormalOf<Domain> formal_symbol(const Domain& d, const typename Domain::Element& a, Int coefficient = 1) {
  return normalize(d, FormalOf<Domain>{{{std::move(coefficient), d.one(), a}}});
}

template <class Domain>
FormalOf<Domain> formal_add(const Domain& d, FormalOf<Domain> a, const FormalOf<Domain>& b) {
  a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
  return normalize(d, std::move(a));
}

template <class Domain>
FormalOf<Domain> formal_scale(const Domain& d, const Int& s, FormalOf<Domain> a) {
  for (auto& t : a.terms) t.coefficient *= s;
  return normalize(d, std::move(a));
}

/// <g> * a.
template <class Domain>
FormalOf<Domain> formal_act(const Domain& d, const typename Domain::Element& g, FormalOf<Domain> a) {
  for (auto& t : a.terms) t.square_class = d.mul(g, t.square_class);
  return normalize(d, std::move(a));
}

/// <<g>> * a = <g> a - a.
template <class Domain>
FormalOf<Domain> formal_pfister(const Domain& d, const typename Domain::Element& g, const FormalOf<Domain>& a) {
  return formal_add(d, formal_act(d, g, a), formal_scale(d, Int(-1), a));
}

/// [x] - [y] + <x>[y/x] - <x^-1 - 1>[(1-x^-1)/(1-y^-1)] + <1-x>[(1-x)/(1-y)].
template <class Domain>
FormalOf<Domain> refined_five_term(const Domain& d, const typename Domain::Element& x,
                                   const typename Domain::Element& y) {
  auto one = d.one();
  auto xi = d.inv(x), yi = d.inv(y);
  FormalOf<Domain> r;
  r.terms.push_back({1, one, x});
  r.terms.push_back({-1, one, y});
  r.terms.push_back({1, x, d.div(y, x)});
  r.terms.push_back({-1, d.sub(xi, one), d.div(d.sub(one, xi), d.sub(one, yi))});
  r.terms.push_back({1, d.sub(one, x), d.div(d.sub(one, x), d.sub(one, y))});
  return normalize(d, std::move(r));
}

/// [x] + <-1>[x^-1].
template <class Domain>
FormalOf<Domain> formal_psi1(const Domain& d, const typename Domain::Element& x) {
  FormalOf<Domain> r;
  r.terms.push_back({1, d.one(), x});
  r.terms.push_back({1, d.neg(d.one()), d.inv(x)});
  return normalize(d, std::move(r));
}

namespace formal_detail {

inline void skip_ws(std::string_view s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline Int read_int(std::string_view s, std::size_t& i) {
  std::size_t start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  return Int(std::string(s.substr(start, i - start)));
}

inline std::size_t find_close(std::string_view s, std::size_t i, char close, std::size_t offset) {
  std::size_t j = s.find(close, i);
  if (j == std::string_view::npos) throw ParseError(offset + i, std::string("missing '") + close + "'");
  return j;
}

// cls := '1' | 'n' | '<' ('n' | expr) '>'
template <class Domain>
typename Domain::Element parse_class(const Domain& d, std::string_view s, std::size_t& i, std::size_t offset) {
  skip_ws(s, i);
  if (i >= s.size()) throw ParseError(offset + i, "expected square class");
  if (s[i] == '1') {
    ++i;
    return d.one();
  }
  if (s[i] == 'n') {
    ++i;
    return d.nonsquare();
  }
  if (s[i] == '<') {
    std::size_t j = find_close(s, i + 1, '>', offset);
    std::string_view inner = s.substr(i + 1, j - i - 1);
    std::size_t lead = 0;
    skip_ws(inner, lead);
    std::size_t end = inner.size();
    while (end > lead && std::isspace(static_cast<unsigned char>(inner[end - 1]))) --end;
    auto g = inner.substr(lead, end - lead) == "n" ? d.nonsquare() : d.parse(inner, offset + i + 1);
    if (d.is_zero(g)) throw ParseError(offset + i, "square class of zero");
    i = j + 1;
    return g;
  }
  throw ParseError(offset + i, "expected square class");
}

}  // namespace formal_detail

/// Formal sums:
///   sum   := ['+'|'-'] term (('+'|'-') term)* | '0'
///   term  := [int '*'] coeff '[' expr ']' | int '[' expr ']'
///   coeff := empty | cls | '(' [sign] [int '*'] cls ((sign) [int '*'] cls)* ')'
///   cls   := '1' | 'n' | '<n>' | '<' expr '>'
template <class Domain>
FormalOf<Domain> parse_formal(const Domain& d, std::string_view s, std::size_t offset = 0) {
  using namespace formal_detail;
  using Elem = typename Domain::Element;
  FormalOf<Domain> out;
  std::size_t i = 0;
  skip_ws(s, i);
  std::size_t end = s.size();
  while (end > i && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  if (s.substr(i, end - i) == "0") return out;
  bool first = true;
  while (true) {
    skip_ws(s, i);
    if (i >= s.size()) {
      if (first) throw ParseError(offset + i, "empty formal sum");
      break;
    }
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
      skip_ws(s, i);
    } else if (!first) {
      throw ParseError(offset + i, "expected '+' or '-'");
    }
    first = false;

    Int coef = 1;
    std::vector<std::pair<Int, Elem>> combo;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t at = i;
      Int n = read_int(s, i);
      skip_ws(s, i);
      if (i < s.size() && s[i] == '*') {
        ++i;
        coef = n;
      } else if (i < s.size() && s[i] == '[') {
        coef = n;
        combo.push_back({1, d.one()});
      } else {
        throw ParseError(offset + at, "expected '*' or '[' after coefficient");
      }
    }
    skip_ws(s, i);
    if (combo.empty()) {
      if (i < s.size() && s[i] == '[') {
        combo.push_back({1, d.one()});
      } else if (i < s.size() && s[i] == '(') {
        ++i;
        bool first_class = true;
        while (true) {
          skip_ws(s, i);
          if (i < s.size() && s[i] == ')') {
            if (first_class) throw ParseError(offset + i, "empty group ring coefficient");
            ++i;
            break;
          }
          int csign = 1;
          if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            csign = s[i] == '-' ? -1 : 1;
            ++i;
            skip_ws(s, i);
          } else if (!first_class) {
            throw ParseError(offset + i, "expected '+', '-' or ')'");
          }
          first_class = false;
          Int c = 1;
          std::size_t save = i;
          if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            Int n = read_int(s, i);
            skip_ws(s, i);
            if (i < s.size() && s[i] == '*') {
              ++i;
              c = n;
            } else {
              i = save;
            }
          }
          combo.push_back({c * csign, parse_class(d, s, i, offset)});
        }
      } else {
        combo.push_back({1, parse_class(d, s, i, offset)});
      }
    }
    skip_ws(s, i);
    if (i >= s.size() || s[i] != '[') throw ParseError(offset + i, "expected '['");
    std::size_t close = find_close(s, i + 1, ']', offset);
    Elem arg = d.parse(s.substr(i + 1, close - i - 1), offset + i + 1);
    if (d.is_zero(arg)) throw ParseError(offset + i + 1, "symbol argument is zero");
    i = close + 1;
    for (auto& [c, g] : combo) out.terms.push_back({c * coef * sign, g, arg});
  }
  return normalize(d, std::move(out));
}

template <class Domain>
std::string format_class(const Domain& d, const typename Domain::Element& g) {
  if (g == d.one()) return "1";
  if (g == d.nonsquare()) return "<n>";
  return "<" + d.format(g) + ">";
}

/// Inverse of parse_formal on normalized input; "0" for the empty sum.
template <class Domain>
std::string format_formal(const Domain& d, const FormalOf<Domain>& x) {
  if (x.terms.empty()) return "0";
  std::string out;
  for (const auto& t : x.terms) {
    bool neg = t.coefficient < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    Int m = abs(t.coefficient);
    bool unit_class = t.square_class == d.one();
    if (m != 1) out += m.get_str() + "*";
    if (!unit_class) out += format_class(d, t.square_class);
    out += "[" + d.format(t.argument) + "]";
  }
  return out;
}

/// Image in P(F_q) (square classes forgotten).
IntVector evaluate(const PreBloch& p, const FormalBlochElement<FFElement>& x);
/// Image in RP(F_q).
IntVector evaluate(const RefinedPreBloch& rp, const FormalBlochElement<FFElement>& x);

}  // namespace rbloch
