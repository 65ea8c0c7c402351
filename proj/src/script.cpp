#include "ross/script.hpp"

#include <fstream>
#include <sstream>

namespace ross {

static void load_source(LoadResult& out, const std::string& source, const std::string& name) {
    star::ParseResult parsed = star::parse(source);
    for (const auto& d : parsed.diagnostics) out.parse_errors.push_back(d.format(name));
    if (!parsed.diagnostics.empty()) return;

    ValidationReport report = out.kb.register_ast(parsed.ast);
    for (auto& f : report.findings) out.report.findings.push_back(std::move(f));
    for (auto& item : parsed.ast.items) {
        if (std::holds_alternative<star::AttachStmt>(item) ||
            std::holds_alternative<star::AssertStmt>(item))
            out.statements.push_back(std::move(item));
    }
}

LoadResult load_knowledge_base(const std::vector<std::string>& paths) {
    LoadResult out;
    for (const auto& path : paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            out.parse_errors.push_back(path + ": cannot open file");
            continue;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        load_source(out, buffer.str(), path);
    }
    return out;
}

LoadResult load_knowledge_base_text(const std::string& source, const std::string& name) {
    LoadResult out;
    load_source(out, source, name);
    return out;
}

} // namespace ross
