#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ross/behavior.hpp"
#include "ross/engine.hpp"
#include "ross/printer.hpp"
#include "ross/script.hpp"
#include "ross/xml_io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kUsageError = 2;

int report_load(const ross::LoadResult& loaded) {
    for (const auto& e : loaded.parse_errors) std::cerr << e << "\n";
    const std::string text = loaded.report.to_text();
    if (!text.empty()) std::cerr << text;
    return loaded.ok() ? kOk : kValidationFailure;
}

struct Session {
    ross::LoadResult loaded;
    ross::InstanceModel model;
    std::unique_ptr<ross::Engine> engine;

    int start(const std::vector<std::string>& files) {
        loaded = ross::load_knowledge_base(files);
        int rc = report_load(loaded);
        if (rc != kOk) return rc;
        engine = std::make_unique<ross::Engine>(loaded.kb, model);
        ross::ValidationReport run = engine->run_statements(loaded.statements);
        const std::string text = run.to_text();
        if (!text.empty()) std::cerr << text;
        return run.ok() ? kOk : kValidationFailure;
    }
};

bool write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << path << ": cannot open for writing\n";
        return false;
    }
    out << content;
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ROSS knowledge-base and fact-repository tool"};
    app.require_subcommand(1);

    std::vector<std::string> files;
    std::string out_path = "-";
    std::string cells_path;
    int steps = 1;
    std::vector<std::string> attr_query;
    std::vector<std::int64_t> cell_query;
    std::string word_query;
    std::string language = "English";
    bool in_place = false;

    auto* check = app.add_subcommand("check", "Parse and validate knowledge-base files");
    check->add_option("files", files, "Star source files")->required();

    auto* run = app.add_subcommand("run", "Execute attach/assert statements");
    run->add_option("files", files, "Star source files")->required();
    run->add_option("--export-xml", out_path, "Write the instance model XML to a file");
    run->add_option("--export-cells", cells_path, "Write the explicit cell entries as CSV");

    auto* step = app.add_subcommand("step", "Run behavior steps over the situation");
    step->add_option("files", files, "Star source files")->required();
    step->add_option("-n,--steps", steps, "Number of simulation steps")->check(CLI::PositiveNumber);
    step->add_option("--export-cells", cells_path, "Write the explicit cell entries as CSV");

    auto* query = app.add_subcommand("query", "Query the situation after running statements");
    query->add_option("files", files, "Star source files")->required();
    query->add_option("--attr", attr_query, "INSTANCE TYPE: read an instance attribute")
        ->expected(2);
    query->add_option("--cell", cell_query, "X Y Z T: read one cell")->expected(4);
    query->add_option("--word", word_query, "Look a word up in the dictionaries");
    query->add_option("--lang", language, "Dictionary language (default English)");

    auto* export_cmd = app.add_subcommand("export", "Export the instance model XML");
    export_cmd->add_option("files", files, "Star source files")->required();
    export_cmd->add_option("-o,--output", out_path, "Output path, - for stdout");

    auto* fmt = app.add_subcommand("fmt", "Reprint sources in canonical form");
    fmt->add_option("files", files, "Star source files")->required();
    fmt->add_flag("-i,--in-place", in_place, "Rewrite the files instead of printing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsageError;
    }

    try {
        if (check->parsed()) {
            ross::LoadResult loaded = ross::load_knowledge_base(files);
            int rc = report_load(loaded);
            if (rc != kOk) return rc;
            ross::ValidationReport report = loaded.kb.validate_kb();
            const std::string text = report.to_text();
            if (!text.empty()) std::cerr << text;
            if (!report.ok()) return kValidationFailure;
            std::cout << "ok\n";
            return kOk;
        }
        if (run->parsed()) {
            Session session;
            int rc = session.start(files);
            if (rc != kOk) return rc;
            if (out_path != "-")
                if (!write_output(out_path, ross::export_xml(session.model)))
                    return kUsageError;
            if (!cells_path.empty())
                for (auto& context : session.model.contexts)
                    if (!write_output(cells_path, ross::dump_cells_csv(context.situation)))
                        return kUsageError;
            std::cout << "ok\n";
            return kOk;
        }
        if (step->parsed()) {
            Session session;
            int rc = session.start(files);
            if (rc != kOk) return rc;
            std::vector<ross::CompiledBehavior> behaviors;
            for (const auto& name : session.loaded.kb.behavior_class_names())
                behaviors.push_back(ross::compile_behavior(
                    session.loaded.kb, *session.loaded.kb.find_behavior_class(name)));
            ross::Situation& s = session.engine->situation();
            for (int i = 0; i < steps; ++i) {
                ross::StepResult result =
                    ross::step_simulation(session.loaded.kb, s, behaviors, i + 1);
                std::cout << "step " << (i + 1) << ": " << result.bindings << " bindings, "
                          << result.writes << " writes\n";
            }
            if (!cells_path.empty())
                if (!write_output(cells_path, ross::dump_cells_csv(s))) return kUsageError;
            return kOk;
        }
        if (query->parsed()) {
            Session session;
            int rc = session.start(files);
            if (rc != kOk) return rc;
            if (!word_query.empty()) {
                for (const auto& hit : session.loaded.kb.lookup_word(word_query, language))
                    std::cout << hit << "\n";
                return kOk;
            }
            if (attr_query.size() == 2) {
                ross::Situation& s = session.engine->situation();
                const ross::ObjectFrameInstance* inst = s.find_instance(attr_query[0]);
                if (!inst) {
                    std::cerr << "instance \"" << attr_query[0] << "\" does not exist\n";
                    return kValidationFailure;
                }
                const ross::Attribute* attr = inst->find_attribute(attr_query[1]);
                if (!attr) {
                    std::cerr << "instance \"" << attr_query[0] << "\" has no \""
                              << attr_query[1] << "\" attribute\n";
                    return kValidationFailure;
                }
                if (attr->value.kind == ross::AttrValue::Kind::Single)
                    std::cout << attr->value.single.display() << "\n";
                else if (attr->value.kind == ross::AttrValue::Kind::Range)
                    std::cout << attr->value.range.lo.display() << ".."
                              << attr->value.range.hi.display() << "\n";
                else
                    std::cout << attr->value.text << "\n";
                return kOk;
            }
            if (cell_query.size() == 4) {
                ross::Situation& s = session.engine->situation();
                auto v = ross::read_cell(
                    s, ross::Coord{cell_query[0], cell_query[1], cell_query[2]},
                    static_cast<int>(cell_query[3]));
                std::cout << (v ? v->display() : std::string("<unset>")) << "\n";
                return kOk;
            }
            std::cerr << "query needs one of --attr, --cell, --word\n";
            return kUsageError;
        }
        if (export_cmd->parsed()) {
            Session session;
            int rc = session.start(files);
            if (rc != kOk) return rc;
            return write_output(out_path, ross::export_xml(session.model)) ? kOk : kUsageError;
        }
        if (fmt->parsed()) {
            for (const auto& path : files) {
                std::ifstream in(path, std::ios::binary);
                if (!in) {
                    std::cerr << path << ": cannot open file\n";
                    return kUsageError;
                }
                std::ostringstream buffer;
                buffer << in.rdbuf();
                ross::star::ParseResult parsed = ross::star::parse(buffer.str());
                if (!parsed.ok()) {
                    for (const auto& d : parsed.diagnostics)
                        std::cerr << d.format(path) << "\n";
                    return kValidationFailure;
                }
                std::string printed = ross::star::pretty_print(parsed.ast);
                if (in_place) {
                    if (!write_output(path, printed)) return kUsageError;
                } else {
                    std::cout << printed;
                }
            }
            return kOk;
        }
    } catch (const ross::Error& e) {
        std::cerr << ross::to_string(e.code()) << ": " << e.what() << "\n";
        return kValidationFailure;
    }
    return kUsageError;
}
