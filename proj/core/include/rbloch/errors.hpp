#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbloch {

/// Shape or dimension mismatch between arguments.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a mathematical operation (zero divisor,
/// non-unit at a place, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Field parameters outside the supported range: odd characteristic, q >= 5.
class UnsupportedField : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A proposed homomorphism does not respect the source relations.
class NotWellDefined : public std::runtime_error {
 public:
  NotWellDefined(std::size_t relation_index, const std::string& what)
      : std::runtime_error(what), relation_index_(relation_index) {}
  std::size_t relation_index() const noexcept { return relation_index_; }

 private:
  std::size_t relation_index_;
};

/// Syntax error in an element or formal-sum expression.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace rbloch
