#pragma once

#include <string_view>

namespace creutz::cli {

/// Evaluates a scalar arithmetic expression: numbers, `pi`, + - * / ^,
/// parentheses and sqrt/sin/cos/tan/exp/log/abs. Throws
/// std::invalid_argument naming the offending column.
double evaluate_expression(std::string_view text);

}  // namespace creutz::cli
