#include "rbloch/expression.hpp"

#include <cctype>
#include <string>

#include "rbloch/errors.hpp"

namespace rbloch {
namespace {

class Parser {
 public:
  Parser(const RationalFunctionField& k, std::string_view text, std::size_t offset, bool allow_t)
      : k_(k), text_(text), offset_(offset), allow_t_(allow_t) {}

  FunctionFieldElement parse() {
    FunctionFieldElement value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(offset_ + pos_, message); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  FunctionFieldElement expr() {
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    FunctionFieldElement acc = term();
    if (negate) acc = k_.neg(acc);
    for (;;) {
      if (accept('+'))
        acc = k_.add(acc, term());
      else if (accept('-'))
        acc = k_.sub(acc, term());
      else
        return acc;
    }
  }

  FunctionFieldElement term() {
    FunctionFieldElement acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = k_.mul(acc, factor());
      } else if (accept('/')) {
        std::size_t at = pos_;
        FunctionFieldElement d = factor();
        if (d.is_zero()) throw ParseError(offset_ + at, "division by zero");
        acc = k_.div(acc, d);
      } else {
        return acc;
      }
    }
  }

  FunctionFieldElement factor() {
    FunctionFieldElement base = primary();
    while (accept('^')) {
      skip_space();
      bool negative = false;
      if (pos_ < text_.size() && text_[pos_] == '-') {
        negative = true;
        ++pos_;
      }
      std::size_t at = pos_;
      std::string digits = read_digits();
      if (digits.empty()) fail("expected an integer exponent");
      if (digits.size() > 9) throw ParseError(offset_ + at, "exponent too large");
      long long e = std::stoll(digits);
      if (negative) {
        if (base.is_zero()) throw ParseError(offset_ + at, "negative power of zero");
        e = -e;
      }
      base = k_.pow(base, e);
    }
    return base;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  FunctionFieldElement primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits = read_digits();
      Int v(digits);
      Int r = floor_mod(v, Int(k_.base().characteristic()));
      return k_.constant(k_.base().from_int(r.get_si()));
    }
    if (c == 't') {
      if (!allow_t_) fail("'t' is not an element of " + k_.base().name());
      ++pos_;
      return k_.t();
    }
    if (c == 'u') {
      ++pos_;
      return k_.constant(k_.base().primitive());
    }
    if (c == '(') {
      ++pos_;
      FunctionFieldElement inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const RationalFunctionField& k_;
  std::string_view text_;
  std::size_t offset_;
  bool allow_t_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldHeader parse_field_header(std::string_view line) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
  };
  skip();
  if (line.substr(pos, 5) == "field") {
    pos += 5;
    skip();
  }
  if (pos >= line.size() || line[pos] != 'F') throw ParseError(pos, "expected a field name like F5 or F25(t)");
  ++pos;
  if (pos < line.size() && line[pos] == '_') ++pos;
  std::size_t start = pos;
  while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) ++pos;
  if (start == pos) throw ParseError(pos, "expected the field order");
  if (pos - start > 9) throw ParseError(start, "field order too large");
  std::uint64_t q = std::stoull(std::string(line.substr(start, pos - start)));
  bool rational = false;
  skip();
  if (line.substr(pos, 3) == "(t)") {
    rational = true;
    pos += 3;
  }
  skip();
  if (pos != line.size()) throw ParseError(pos, "trailing characters after field header");
  return FieldHeader{FiniteField::with_order(q), rational};
}

FunctionFieldElement parse_function_element(const RationalFunctionField& k, std::string_view text,
                                            std::size_t offset) {
  return Parser(k, text, offset, true).parse();
}

FFElement parse_finite_element(const FiniteField& k, std::string_view text, std::size_t offset) {
  RationalFunctionField kt(k);
  FunctionFieldElement v = Parser(kt, text, offset, false).parse();
  return *kt.as_constant(v);
}

}  // namespace rbloch
