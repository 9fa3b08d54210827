#pragma once

#include <string>

#include "selfadjoint/context.hpp"
#include "selfadjoint/expression.hpp"

namespace selfadjoint {

// Parses one expression in the equation grammar against the declared symbols.
// `line_offset` shifts reported positions so fragments of a larger file keep
// file-level coordinates.
Expression parse_expression(const std::string& text, const Context& ctx, int line_offset = 1);

// Parses a block of declaration statements ("depvar u;", "func f(t,u);",
// "const a;", "link F' = f;") into ctx.
void parse_declarations(const std::string& text, Context& ctx, int line_offset = 1);

} // namespace selfadjoint
