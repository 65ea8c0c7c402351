// Acceptance gate: ten criteria, one pass/fail line each. Run the binary
// with -s to see every line; any failed criterion fails the ctest run.
#include <chrono>
#include <iostream>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "ross/behavior.hpp"
#include "ross/engine.hpp"
#include "ross/printer.hpp"
#include "ross/script.hpp"
#include "ross/secondary.hpp"
#include "ross/xml_io.hpp"

using namespace ross;

namespace {

/// Collects expectations for one criterion and prints its verdict line.
struct Criterion {
    int number;
    std::string title;
    bool passed = true;
    std::vector<std::string> failures;

    Criterion(int n, std::string t) : number(n), title(std::move(t)) {}

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            passed = false;
            if (failures.size() < 8) failures.push_back(what);
        }
    }

    ~Criterion() {
        std::cout << (passed ? "PASS" : "FAIL") << "  criterion " << number << ": " << title
                  << "\n";
        for (const auto& f : failures) std::cout << "      - " << f << "\n";
        std::cout.flush();
    }
};

#define CRITERION_VERDICT(crit)                                                 \
    do {                                                                        \
        for (const auto& f : (crit).failures) { INFO(f); }                      \
        CHECK((crit).passed);                                                   \
    } while (0)

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

InstanceModel build_cat_model(Engine** engine_out = nullptr, LoadResult* loaded_out = nullptr) {
    LoadResult loaded = load_knowledge_base(
        fixture_files({"golden/support/everyday_parent.star", "cat/cat.star"}));
    REQUIRE(loaded.ok());
    InstanceModel model;
    Engine engine(loaded.kb, model);
    REQUIRE(engine.run_statements(loaded.statements).ok());
    if (loaded_out) *loaded_out = loaded;
    (void)engine_out;
    return model;
}

Value solid_v() { return Value::enumerated("Solid"); }
Value space_v() { return Value::enumerated("Space"); }

/// 8x8x8 spatial grid with a 16-point timeline and a three-member essential
/// value set; assumptions as requested.
Situation make_grid16(bool empty_space, bool perpetuation) {
    Situation s;
    s.extents = {{1, 1, 1}, {8, 8, 8}};
    s.essential_set.name = "Grid.Values";
    s.essential_set.members = {{"Solid", {}, ValueCategory::NonSpaceValue},
                               {"Liquid", {}, ValueCategory::NonSpaceValue},
                               {"EmptySpace", {}, ValueCategory::SpaceValue}};
    s.ensure_time_point(16);
    s.empty_space = empty_space;
    s.perpetuation = perpetuation;
    return s;
}

/// Backward-scan oracle, written independently of CellStore: latest explicit
/// write at or before t, else perpetuation/empty-space fallbacks.
std::optional<Value> oracle_read(const std::vector<std::tuple<Coord, int, Value>>& writes,
                                 const Situation& s, const Coord& c, int t) {
    std::optional<Value> best;
    int best_t = 0;
    for (const auto& [wc, wt, wv] : writes) {
        if (wc == c && wt <= t && wt >= best_t) {
            best = wv;
            best_t = wt;
        }
    }
    if (best && best_t == t) return best;
    if (best) return s.perpetuation ? best : (s.empty_space ? std::optional<Value>(space_default())
                                                            : std::nullopt);
    return s.empty_space ? std::optional<Value>(space_default()) : std::nullopt;
}

ShapePattern random_pattern(std::mt19937& rng) {
    std::uniform_int_distribution<std::int64_t> ext(1, 16);
    ShapePattern p;
    p.ex = ext(rng);
    p.ey = ext(rng);
    p.ez = ext(rng);
    std::uniform_int_distribution<std::int64_t> cx(1, p.ex), cy(1, p.ey), cz(1, p.ez);
    std::uniform_int_distribution<int> count(1, 24), coin(0, 3);
    int n = count(rng);
    for (int i = 0; i < n; ++i)
        p.cells[{cx(rng), cy(rng), cz(rng)}] =
            coin(rng) == 0 ? ValueCategory::SpaceValue : ValueCategory::NonSpaceValue;
    return p;
}

} // namespace

TEST_CASE("criterion 1: golden corpus parses, registers and round-trips") {
    Criterion crit(1, "golden corpus parse, registration, fmt round-trip (< 1 s)");
    auto start = std::chrono::steady_clock::now();

    const std::vector<std::vector<std::string>> listings = {
        {"golden/01_two_part_cluster.star"},
        {"golden/02_dictionary.star"},
        {"golden/03_value_sets.star"},
        {"golden/support/units.star", "golden/04_mapping.star"},
        {"golden/support/millimeter.star", "golden/05_dimension_system.star"},
        {"golden/support/millimeter.star", "golden/05_dimension_system.star",
         "golden/support/material.star", "golden/06_specification_system.star"},
        {"golden/support/everyday_parent.star", "golden/07_object_frame_class.star"},
        {"golden/08_attribute_type.star"},
    };

    for (const auto& combo : listings) {
        // The listing under test is the last file of its combo.
        const std::string& rel = combo.back();
        std::string source = read_file(fixture_path(rel));
        star::ParseResult parsed = star::parse(source);
        crit.expect(parsed.ok(), rel + ": parse diagnostics");
        if (!parsed.ok()) continue;

        star::ParseResult again = star::parse(star::pretty_print(parsed.ast));
        crit.expect(again.ok(), rel + ": pretty-printed form fails to parse");
        crit.expect(again.ast == parsed.ast, rel + ": fmt round-trip changed the AST");

        LoadResult loaded = load_knowledge_base(fixture_files(combo));
        crit.expect(loaded.ok(), rel + ": registration findings: " + loaded.report.to_text());
        if (loaded.ok())
            crit.expect(loaded.kb.validate_kb().ok(), rel + ": knowledge base not valid");
    }

    double elapsed = seconds_since(start);
    crit.expect(elapsed < 1.0, "corpus took " + std::to_string(elapsed) + " s");
    CRITERION_VERDICT(crit);
}

TEST_CASE("criterion 2: one behavior step reproduces the motion table") {
    Criterion crit(2, "motion reproduction, four explicit cells, zero tolerance");

    LoadResult loaded = load_knowledge_base(fixture_files({"motion/motion.star"}));
    REQUIRE(loaded.ok());
    InstanceModel model;
    Engine engine(loaded.kb, model);
    REQUIRE(engine.run_statements(loaded.statements).ok());
    Situation& s = engine.situation();

    write_cell(s, {1, 1, 1}, 1, solid_v());
    write_cell(s, {2, 1, 1}, 1, space_v());

    CompiledBehavior move =
        compile_behavior(loaded.kb, *loaded.kb.find_behavior_class("MoveRight"));
    StepResult r = step_simulation(loaded.kb, s, {move}, 1);

    crit.expect(r.bindings == 1, "expected exactly one binding");
    crit.expect(s.cells.size() == 4, "explicit cell-store entries != 4 (frame problem)");
    auto cell = [&](std::int64_t x, int t) {
        auto v = read_cell(s, {x, 1, 1}, t);
        return v ? v->symbol : std::string("<unset>");
    };
    crit.expect(cell(1, 1) == "Solid", "(x1,t1) != Solid");
    crit.expect(cell(2, 1) == "Space", "(x2,t1) != Space");
    crit.expect(cell(1, 2) == "Space", "(x1,t2) != Space");
    crit.expect(cell(2, 2) == "Solid", "(x2,t2) != Solid");
    CRITERION_VERDICT(crit);
}

TEST_CASE("criterion 3: meter-to-foot mapping is exact") {
    Criterion crit(3, "apply_mapping(MeterToFoot, 1) == 32808/10000 exactly");

    LoadResult loaded = load_knowledge_base(
        fixture_files({"golden/support/units.star", "golden/04_mapping.star"}));
    REQUIRE(loaded.ok());
    const Mapping& m = loaded.kb.mapping("MeterToFoot");
    MappingResult r = apply_mapping(m, loaded.kb.value_set("Meter"), loaded.kb.value_set("Foot"),
                                    Value::integer(1));

    crit.expect(r.exact == Rational(32808, 10000), "exact image is not 32808/10000");
    crit.expect(r.exact.numerator() == 4101 && r.exact.denominator() == 1250,
                "rational not in lowest terms 4101/1250");
    crit.expect(r.rounded == 3, "rounded image is not 3");
    crit.expect(apply_mapping(m, loaded.kb.value_set("Meter"), loaded.kb.value_set("Foot"),
                              Value::integer(10))
                        .exact == Rational(328080, 10000),
                "exact image scales wrongly at x = 10");
    CRITERION_VERDICT(crit);
}

TEST_CASE("criterion 4: two-part cluster attach+assert and its failure mode") {
    Criterion crit(4, "Carl has SpatialLocation=Driveway, Color=Blue; no locational -> fail");

    LoadResult loaded = load_knowledge_base(fixture_files({"golden/01_two_part_cluster.star"}));
    REQUIRE(loaded.ok());
    InstanceModel model;
    Engine engine(loaded.kb, model);
    crit.expect(engine.run_statements(loaded.statements).ok(), "script reported findings");

    const ObjectFrameInstance* carl = engine.situation().find_instance("Carl");
    crit.expect(carl != nullptr, "no instance named Carl");
    if (carl) {
        const Attribute* loc = carl->find_attribute("SpatialLocation");
        const Attribute* color = carl->find_attribute("Color");
        crit.expect(loc && loc->value.single == Value::enumerated("Driveway"),
                    "SpatialLocation != Driveway");
        crit.expect(color && color->value.single == Value::enumerated("Blue"), "Color != Blue");
    }

    // Re-run the assert with the locational attribute removed.
    InstanceModel model2;
    Engine engine2(loaded.kb, model2);
    for (const auto& item : loaded.statements) {
        if (const auto* attach = std::get_if<star::AttachStmt>(&item)) {
            crit.expect(engine2.run_statements({*attach}).ok(), "attach alone failed");
        } else if (const auto* assert_stmt = std::get_if<star::AssertStmt>(&item)) {
            star::AssertStmt qualitative_only = *assert_stmt;
            qualitative_only.cluster.erase(qualitative_only.cluster.begin());
            ValidationReport report;
            engine2.assert_cluster(qualitative_only.instance_name, qualitative_only.cluster,
                                   report);
            crit.expect(!report.ok(), "cluster without locational passed validation");
            bool found = false;
            for (const auto& f : report.findings)
                if (f.check == "MissingLocational") found = true;
            crit.expect(found, "no MissingLocational finding");
        }
    }
    CRITERION_VERDICT(crit);
}

TEST_CASE("criterion 5: XML export matches the appendix skeleton, import is lossless") {
    Criterion crit(5, "XML element/attribute names and nesting; import . export byte-identical");

    InstanceModel model = build_cat_model();
    std::string xml = export_xml(model);

    crit.expect(xml.rfind("<?xml version=\"1.0\" encoding=\"us-ascii\" standalone=\"yes\"?>\n",
                          0) == 0,
                "missing XML declaration");

    // Skeleton order: each marker must appear after the previous one.
    const std::vector<std::string> skeleton = {
        "<InstanceModel>",
        "<ConceptualModel>",
        "<GlobalAssumptions>",
        "<EmptySpaceAssumption value = \"true\" />",
        "<PermanentAttachmentsAssumption value = \"true\" />",
        "<PerpetuationAssumption value = \"true\" />",
        "</GlobalAssumptions>",
        "<StructuralParent class=\"EverydayObjectStructuralParentClass\"",
        "name=\"EverydayObjectStructuralParentInstance-1\"",
        "type=\"Range\"",
        "timeline=\"EverydayObjectStructuralParentClass.EverydayObjectBasicDimensionSystem\"",
        "<TimePoint value = \"T01\">",
        "<InstanceStructure>",
        "<Component class=\"MatObjectFrameClass\"",
        "<RelationshipToParent>",
        "<At ref=\"AttributeTypeX\"",
        "<Component class=\"HouseCatObjectFrameClass\"",
        "name=\"CatObjectFrameClass-Instance1\"",
        "type=\"Aggregate\"",
        "<Attributes>",
        "<Attribute ref=\"FurColor\" val=\"grey\" />",
        "<Component class=\"CatLegObjectFrameClass\"",
        "type=\"Unit\"",
        "</TimePoint>",
        "</StructuralParent>",
        "</ConceptualModel>",
        "</InstanceModel>",
    };
    std::size_t cursor = 0;
    for (const auto& marker : skeleton) {
        std::size_t at = xml.find(marker, cursor);
        crit.expect(at != std::string::npos, "skeleton marker missing or misordered: " + marker);
        if (at == std::string::npos) break;
        cursor = at;
    }

    std::string second = export_xml(import_xml(xml));
    crit.expect(second == xml, "import . export is not byte-identical");
    CRITERION_VERDICT(crit);
}

TEST_CASE("criterion 6: assumption semantics over 1000 randomized schedules") {
    Criterion crit(6, "read_cell vs backward-scan oracle, 8x8x8x16, 1000 schedules (< 10 s)");
    auto start = std::chrono::steady_clock::now();

    std::mt19937 rng(0x5EED6);
    std::uniform_int_distribution<std::int64_t> axis(1, 8);
    std::uniform_int_distribution<int> time_dist(1, 16), count_dist(5, 40), value_pick(0, 2);
    const Value values[3] = {Value::enumerated("Solid"), Value::enumerated("Liquid"),
                             Value::enumerated("EmptySpace")};

    long mismatches = 0;
    long unset_violations = 0;
    for (int round = 0; round < 1000 && crit.passed; ++round) {
        bool empty_space = round % 2 == 0;
        bool perpetuation = round % 4 < 2;
        Situation s = make_grid16(empty_space, perpetuation);

        std::vector<std::tuple<Coord, int, Value>> writes;
        int n = count_dist(rng);
        for (int i = 0; i < n; ++i) {
            Coord c{axis(rng), axis(rng), axis(rng)};
            int t = time_dist(rng);
            Value v = values[value_pick(rng)];
            write_cell(s, c, t, v);
            writes.emplace_back(c, t, v);
        }

        // Exhaustive sweep: every cell of the 8x8x8x16 grid.
        for (std::int64_t x = 1; x <= 8; ++x)
            for (std::int64_t y = 1; y <= 8; ++y)
                for (std::int64_t z = 1; z <= 8; ++z) {
                    Coord c{x, y, z};
                    for (int t = 1; t <= 16; ++t)
                        if (read_cell(s, c, t) != oracle_read(writes, s, c, t)) ++mismatches;
                }

        if (!empty_space) {
            // Pre-first-write cells must read unset with empty space off.
            const auto& [c, wt, wv] = writes.front();
            int first = 17;
            for (const auto& [wc, t2, v2] : writes)
                if (wc == c && t2 < first) first = t2;
            for (int t = 1; t < first; ++t)
                if (read_cell(s, c, t).has_value()) ++unset_violations;
        }
        crit.expect(mismatches == 0, "oracle mismatch in round " + std::to_string(round));
        crit.expect(unset_violations == 0,
                    "pre-first-write cell not unset in round " + std::to_string(round));
    }

    double elapsed = seconds_since(start);
    crit.expect(elapsed < 10.0, "schedules took " + std::to_string(elapsed) + " s");
    CRITERION_VERDICT(crit);
}

TEST_CASE("criterion 7: magnification scales non-space counts and composes") {
    Criterion crit(7, "200 random patterns: count x prod(factors); composition law (< 5 s)");
    auto start = std::chrono::steady_clock::now();

    std::mt19937 rng(0x5EED7);
    std::uniform_int_distribution<std::int64_t> factor(1, 4);
    for (int round = 0; round < 200 && crit.passed; ++round) {
        ShapePattern p = random_pattern(rng);
        std::int64_t fx = factor(rng), fy = factor(rng), fz = factor(rng);

        ShapePattern big = magnify_shape_pattern(p, fx, fy, fz);
        crit.expect(big.non_space_count() ==
                        p.non_space_count() * static_cast<std::size_t>(fx * fy * fz),
                    "non-space count does not scale by the factor product");
        crit.expect(big.ex == p.ex * fx && big.ey == p.ey * fy && big.ez == p.ez * fz,
                    "extents do not scale");

        std::int64_t gx = factor(rng), gy = factor(rng), gz = factor(rng);
        ShapePattern twice = magnify_shape_pattern(big, gx, gy, gz);
        ShapePattern once = magnify_shape_pattern(p, fx * gx, fy * gy, fz * gz);
        crit.expect(twice == once, "composition law violated");
    }

    double elapsed = seconds_since(start);
    crit.expect(elapsed < 5.0, "magnification took " + std::to_string(elapsed) + " s");
    CRITERION_VERDICT(crit);
}

TEST_CASE("criterion 8: negation stratum complement properties; cat not on mat") {
    Criterion crit(8, "complement partition/involution over 100 sets; 482-cell location set");

    std::mt19937 rng(0x5EED8);
    std::uniform_int_distribution<int> size_dist(1, 20);
    for (int round = 0; round < 100 && crit.passed; ++round) {
        int n = size_dist(rng);
        AttributeValueSet set;
        set.name = "S";
        for (int i = 0; i < n; ++i) set.members.push_back({"m" + std::to_string(i), {}, {}});

        std::uniform_int_distribution<int> pick(0, n - 1);
        Value chosen = Value::enumerated("m" + std::to_string(pick(rng)));
        std::vector<Value> rest = complement_values(set, {chosen});

        // Partition: rest + chosen covers the set with no overlap.
        crit.expect(rest.size() == static_cast<std::size_t>(n - 1), "complement size wrong");
        std::set<std::string> seen;
        for (const auto& v : rest) {
            seen.insert(v.symbol);
            crit.expect(!(v == chosen), "chosen value inside its own complement");
        }
        crit.expect(seen.size() == rest.size(), "duplicate values in complement");

        // Involution on singletons.
        if (rest.size() == 1) {
            std::vector<Value> back = complement_values(set, rest);
            crit.expect(back.size() == 1 && back[0] == chosen,
                        "double complement of a singleton is not the original");
        }
    }

    // "The cat is not on the mat": its location ranges over every grid cell
    // outside the mat's cuboid.
    InstanceModel model = build_cat_model();
    const Situation& s = model.contexts.at(0).situation;
    const ObjectFrameInstance* mat = s.find_instance("MatObjectFrameClass-Instance1");
    crit.expect(mat && mat->region.has_value(), "mat has no region");
    if (mat && mat->region) {
        std::vector<Coord> not_on_mat = complement_region(s.extents, *mat->region);
        crit.expect(s.extents.volume() == 512, "grid volume != 512");
        crit.expect(mat->region->volume() == 30, "mat volume != 30");
        crit.expect(not_on_mat.size() == 482, "location set != 482 cells");
        for (const auto& c : not_on_mat)
            if (mat->region->contains(c)) {
                crit.expect(false, "complement contains a mat cell");
                break;
            }
    }
    CRITERION_VERDICT(crit);
}

TEST_CASE("criterion 9: secondary derivations match their oracles") {
    Criterion crit(9, "3-4-5 distance == 5; cat has 4 legs; part_of_closure == BFS oracle");

    Cuboid a{{1, 1, 1}, {1, 1, 1}};
    Cuboid b{{4, 5, 1}, {4, 5, 1}};
    crit.expect(distance_squared(a, b) == Rational(25), "squared distance != 25");
    crit.expect(derive_distance(a, b) == 5, "derived distance != 5");

    InstanceModel model = build_cat_model();
    const Situation& s = model.contexts.at(0).situation;
    const ObjectFrameInstance* cat = s.find_instance("CatObjectFrameClass-Instance1");
    crit.expect(cat != nullptr, "no cat instance");
    if (cat) {
        auto legs = collect(*cat, [](const ObjectFrameInstance& n) {
            return n.class_name == "CatLegObjectFrameClass";
        });
        crit.expect(count_components(*cat) == 4, "cat component count != 4");
        crit.expect(legs.size() == 4, "leg census != 4");
    }

    std::mt19937 rng(0x5EED9);
    for (int round = 0; round < 20 && crit.passed; ++round) {
        // Random 20-node tree, then an independent breadth-first expansion.
        auto root = std::make_unique<ObjectFrameInstance>();
        root->id = "N0";
        std::vector<ObjectFrameInstance*> all{root.get()};
        for (int i = 1; i < 20; ++i) {
            std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
            auto node = std::make_unique<ObjectFrameInstance>();
            node->id = "N" + std::to_string(i);
            ObjectFrameInstance* parent = all[pick(rng)];
            node->parent = parent;
            all.push_back(node.get());
            parent->children.push_back(std::move(node));
        }
        std::vector<std::string> expected;
        std::queue<const ObjectFrameInstance*> frontier;
        frontier.push(root.get());
        while (!frontier.empty()) {
            const ObjectFrameInstance* n = frontier.front();
            frontier.pop();
            if (n != root.get()) expected.push_back(n->id);
            for (const auto& child : n->children) frontier.push(child.get());
        }
        crit.expect(part_of_closure(*root) == expected,
                    "closure != BFS oracle in round " + std::to_string(round));
    }
    CRITERION_VERDICT(crit);
}

TEST_CASE("criterion 10: evaluate_rule equals the truth table over 2^6 combinations") {
    Criterion crit(10, "exhaustive implication sweep on a 16-cell fixture");

    // 4x4x1 grid, one time point: 16 cells, well under the 64-cell bound.
    Situation s;
    s.extents = {{1, 1, 1}, {4, 4, 1}};
    s.essential_set.name = "Grid.Values";
    s.essential_set.members = {{"Solid", {}, ValueCategory::NonSpaceValue},
                               {"EmptySpace", {}, ValueCategory::SpaceValue}};
    s.ensure_time_point(1);
    for (std::int64_t i = 1; i <= 4; ++i) write_cell(s, {i, i, 1}, 1, Value::enumerated("Solid"));

    // Six independent assertions; bit k of the sweep decides whether
    // assertion k is forced true (allowed == actual) or false.
    auto assertion = [&](int index, bool make_true) {
        RuleAssertion a;
        std::int64_t i = 1 + index % 4;
        a.locations = {{i, i, 1}};
        a.t = 1;
        a.allowed = {make_true ? Value::enumerated("Solid") : Value::enumerated("EmptySpace")};
        return a;
    };

    for (unsigned mask = 0; mask < 64; ++mask) {
        Rule r;
        r.name = "sweep-" + std::to_string(mask);
        for (int k = 0; k < 3; ++k) r.antecedent.push_back(assertion(k, mask & (1u << k)));
        for (int k = 3; k < 6; ++k) r.consequent.push_back(assertion(k, mask & (1u << k)));

        // Truth-table oracle: conjunction on both sides, material implication.
        bool ant = (mask & 1u) && (mask & 2u) && (mask & 4u);
        bool cons = (mask & 8u) && (mask & 16u) && (mask & 32u);
        bool expected = !ant || cons;

        RuleEvaluation e = evaluate_rule(s, r);
        crit.expect(e.antecedent_true == ant,
                    "antecedent truth differs at mask " + std::to_string(mask));
        crit.expect(e.consequent_true == cons,
                    "consequent truth differs at mask " + std::to_string(mask));
        crit.expect(e.satisfied == expected,
                    "implication verdict differs at mask " + std::to_string(mask));
    }
    CRITERION_VERDICT(crit);
}
