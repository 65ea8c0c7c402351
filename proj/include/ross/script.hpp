#pragma once

#include <string>
#include <vector>

#include "ross/infopedia.hpp"
#include "ross/parser.hpp"

namespace ross {

/// Result of loading a set of Star sources: parse diagnostics (file-tagged),
/// the populated knowledge base, its registration findings, and the
/// attach/assert statements in source order.
struct LoadResult {
    Infopedia kb;
    ValidationReport report;
    std::vector<star::Item> statements;
    std::vector<std::string> parse_errors;  // formatted "file:line:col: message"

    bool ok() const { return parse_errors.empty() && report.ok(); }
};

/// Parses and registers each file in order. Missing files become parse
/// errors, not exceptions.
LoadResult load_knowledge_base(const std::vector<std::string>& paths);

/// Same, for already-read source text (tests, stdin).
LoadResult load_knowledge_base_text(const std::string& source, const std::string& name = "<input>");

} // namespace ross
