#pragma once

#include <string>
#include <vector>

#include "ross/ast.hpp"
#include "ross/lexer.hpp"

namespace ross::star {

struct ParseResult {
    StarAst ast;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return diagnostics.empty(); }
};

/// Parses Star source text. On failure the result carries one or more
/// diagnostics with line/column positions; the parser recovers at statement
/// boundaries so several errors can be reported in one pass.
ParseResult parse(const std::string& source);

/// Convenience: parse and keep only attach/assert statements, in order.
std::vector<Item> parse_statements(const std::string& source,
                                   std::vector<Diagnostic>& diagnostics);

} // namespace ross::star
