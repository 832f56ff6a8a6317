#pragma once

#include <cstddef>
#include <string_view>

#include "rbloch/finite_field.hpp"
#include "rbloch/function_field.hpp"

namespace rbloch {

/// Parsed `field F<q>(t)` / `field F<q>` header line.
struct FieldHeader {
  FiniteField field;
  bool rational_function_field = false;
};

/// Accepts "field F25(t)", "field F_25", "F7(t)". Throws ParseError.
FieldHeader parse_field_header(std::string_view line);

/// Element expressions:
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := primary ('^' ['-'] int)*
///   primary:= int | 't' | 'u' | '(' expr ')'
/// Integers reduce mod p; 'u' is the fixed primitive element of F_q.
/// Error positions are reported relative to the text plus `offset`.
FunctionFieldElement parse_function_element(const RationalFunctionField& k, std::string_view text,
                                            std::size_t offset = 0);
/// Same grammar without 't'.
FFElement parse_finite_element(const FiniteField& k, std::string_view text, std::size_t offset = 0);

}  // namespace rbloch
