#pragma once

#include <string>

#include "ross/ast.hpp"

namespace ross::star {

/// Canonical Star text for an AST. Law: parse(pretty_print(a)) == a up to
/// source spans.
std::string pretty_print(const StarAst& ast);

std::string pretty_print(const Item& item);

} // namespace ross::star
