#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "ross/behavior.hpp"
#include "ross/engine.hpp"
#include "ross/script.hpp"

using namespace ross;

namespace {

struct MotionWorld {
    LoadResult loaded;
    InstanceModel model;
    std::unique_ptr<Engine> engine;
    CompiledBehavior move_right;

    MotionWorld() {
        loaded = load_knowledge_base(fixture_files({"motion/motion.star"}));
        for (const auto& e : loaded.parse_errors) MESSAGE(e);
        REQUIRE(loaded.ok());
        engine = std::make_unique<Engine>(loaded.kb, model);
        REQUIRE(engine->run_statements(loaded.statements).ok());
        const star::BehaviorClassDef* def = loaded.kb.find_behavior_class("MoveRight");
        REQUIRE(def);
        move_right = compile_behavior(loaded.kb, *def);
    }

    Situation& situation() { return engine->situation(); }
};

const BehaviorEntity* entity(const std::vector<BehaviorEntity>& list, const std::string& name) {
    for (const auto& e : list)
        if (e.name == name) return &e;
    return nullptr;
}

Value solid_value() { return Value::enumerated("Solid"); }
Value space_value() { return Value::enumerated("Space"); }

/// Minimal hand-built behavior: one prior cell requiring `pre` at the anchor,
/// one post writing `post` at the anchor one tick later.
CompiledBehavior stamp_behavior(const std::string& name, Value pre, Value post,
                                std::int64_t post_dx = 0) {
    CompiledBehavior b;
    b.name = name;
    b.bridge = "MotionStructuralParentClass";
    BehaviorEntity prior;
    prior.name = "P";
    prior.values = {std::move(pre)};
    b.priors.push_back(prior);
    BehaviorEntity out;
    out.name = "Q";
    out.dx = post_dx;
    out.dt = 1;
    out.values = {std::move(post)};
    b.posts.push_back(out);
    return b;
}

} // namespace

TEST_CASE("compile_behavior solves the binder into anchor offsets") {
    MotionWorld w;
    const CompiledBehavior& b = w.move_right;

    CHECK(b.name == "MoveRight");
    CHECK(b.bridge == "MotionStructuralParentClass");
    REQUIRE(b.priors.size() == 2);
    REQUIRE(b.posts.size() == 2);

    // The first prior is the anchor at offset zero.
    CHECK(b.priors[0].name == "Entity-1-t1");
    CHECK(b.priors[0].dx == 0);
    CHECK(b.priors[0].dt == 0);
    REQUIRE(b.priors[0].values.size() == 1);
    CHECK(b.priors[0].values[0].symbol == "Solid");

    const BehaviorEntity* right = entity(b.priors, "Entity-2-t1");
    REQUIRE(right);
    CHECK(right->dx == 1);
    CHECK(right->dt == 0);
    CHECK(right->values[0].symbol == "Space");

    const BehaviorEntity* vacated = entity(b.posts, "Entity-1-t2");
    REQUIRE(vacated);
    CHECK(vacated->dx == 0);
    CHECK(vacated->dt == 1);
    CHECK(vacated->values[0].symbol == "Space");

    const BehaviorEntity* arrived = entity(b.posts, "Entity-2-t2");
    REQUIRE(arrived);
    CHECK(arrived->dx == 1);
    CHECK(arrived->dt == 1);
    CHECK(arrived->values[0].symbol == "Solid");
}

TEST_CASE("compile_behavior rejects broken binders") {
    MotionWorld w;
    const star::BehaviorClassDef* def = w.loaded.kb.find_behavior_class("MoveRight");
    REQUIRE(def);

    SUBCASE("unconstrained entity") {
        star::BehaviorClassDef broken = *def;
        broken.binder.erase(broken.binder.begin());  // Entity-2-t1 now floats
        try {
            compile_behavior(w.loaded.kb, broken);
            FAIL("expected BridgeMismatch");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::BridgeMismatch);
        }
    }
    SUBCASE("contradictory constraints") {
        star::BehaviorClassDef broken = *def;
        star::BinderConstraintAst dup = broken.binder[0];
        dup.dx += 1;  // same pair, different offset
        broken.binder.push_back(dup);
        try {
            compile_behavior(w.loaded.kb, broken);
            FAIL("expected BridgeMismatch");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::BridgeMismatch);
        }
    }
    SUBCASE("post state in the present") {
        star::BehaviorClassDef broken = *def;
        for (auto& c : broken.binder)
            if (c.to == "Entity-1-t2") c.dt = 0;
        try {
            compile_behavior(w.loaded.kb, broken);
            FAIL("expected BridgeMismatch");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::BridgeMismatch);
        }
    }
}

TEST_CASE("cell_matches: exact symbols and category wildcards") {
    Value solid = solid_value();
    solid.category = ValueCategory::NonSpaceValue;

    CHECK(cell_matches(solid, solid_value()));
    CHECK_FALSE(cell_matches(solid, Value::enumerated("Liquid")));

    // Category names act as wildcards over the cell's category.
    CHECK(cell_matches(solid, Value::enumerated("NonSpace")));
    CHECK_FALSE(cell_matches(solid, space_value()));
    CHECK(cell_matches(space_default(), space_value()));
    CHECK(cell_matches(space_default(), Value::enumerated("EmptySpace")));
    CHECK_FALSE(cell_matches(space_default(), Value::enumerated("NonSpace")));

    CHECK(cell_matches(Value::integer(4), Value::integer(4)));
    CHECK_FALSE(cell_matches(Value::integer(4), Value::integer(5)));
}

TEST_CASE("match_prior_states finds the one seeded anchor") {
    MotionWorld w;
    Situation& s = w.situation();
    write_cell(s, {1, 1, 1}, 1, solid_value());
    write_cell(s, {2, 1, 1}, 1, space_value());

    std::vector<Binding> found = match_prior_states(s, w.move_right, 1);
    REQUIRE(found.size() == 1);
    CHECK(found[0] == Binding{{1, 1, 1}, 1});

    // A second solid block with empty space ahead adds a second anchor,
    // reported in lexicographic order.
    write_cell(s, {3, 1, 1}, 1, solid_value());
    found = match_prior_states(s, w.move_right, 1);
    REQUIRE(found.size() == 2);
    CHECK(found[0].anchor == Coord{1, 1, 1});
    CHECK(found[1].anchor == Coord{3, 1, 1});

    CHECK(match_prior_states(s, w.move_right, 2).empty());  // nothing written at t2 yet
}

TEST_CASE("one step reproduces the four-cell motion table") {
    MotionWorld w;
    Situation& s = w.situation();
    write_cell(s, {1, 1, 1}, 1, solid_value());
    write_cell(s, {2, 1, 1}, 1, space_value());

    StepResult r = step_simulation(w.loaded.kb, s, {w.move_right}, 1);
    CHECK(r.bindings == 1);
    CHECK(r.writes == 2);

    // Exactly four explicit entries: the two seeds and the two post writes.
    CHECK(s.cells.size() == 4);
    CHECK(read_cell(s, {1, 1, 1}, 1)->symbol == "Solid");
    CHECK(read_cell(s, {2, 1, 1}, 1)->symbol == "Space");
    CHECK(read_cell(s, {1, 1, 1}, 2)->symbol == "Space");
    CHECK(read_cell(s, {2, 1, 1}, 2)->symbol == "Solid");

    // The solid keeps moving on the next step.
    StepResult r2 = step_simulation(w.loaded.kb, s, {w.move_right}, 2);
    CHECK(r2.bindings == 1);
    CHECK(s.cells.size() == 6);
    CHECK(read_cell(s, {2, 1, 1}, 3)->symbol == "Space");
    CHECK(read_cell(s, {3, 1, 1}, 3)->symbol == "Solid");
}

TEST_CASE("apply_behavior guards the grid edge and the bridge class") {
    MotionWorld w;
    Situation& s = w.situation();

    SUBCASE("post cell off the grid") {
        try {
            apply_behavior(w.loaded.kb, s, w.move_right, Binding{{4, 1, 1}, 1});
            FAIL("expected ExtentOverflow");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ExtentOverflow);
        }
        CHECK(s.cells.size() == 0);  // nothing was half-written
    }
    SUBCASE("foreign bridge class") {
        CompiledBehavior foreign = w.move_right;
        foreign.bridge = "SomeOtherStructuralParentClass";
        try {
            apply_behavior(w.loaded.kb, s, foreign, Binding{{1, 1, 1}, 1});
            FAIL("expected BridgeMismatch");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::BridgeMismatch);
        }
    }
}

TEST_CASE("conflicting staged writes abort the whole step") {
    MotionWorld w;
    Situation& s = w.situation();
    write_cell(s, {1, 1, 1}, 1, solid_value());

    CompiledBehavior a = stamp_behavior("PaintSpace", solid_value(), space_value());
    CompiledBehavior b = stamp_behavior("KeepSolid", solid_value(), solid_value());
    try {
        step_simulation(w.loaded.kb, s, {a, b}, 1);
        FAIL("expected WriteConflict");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WriteConflict);
        CHECK(std::string(e.what()).find("(1,1,1,T2)") != std::string::npos);
    }
    CHECK(s.cells.size() == 1);  // the staged writes never landed

    // Two behaviors agreeing on the value is not a conflict.
    CompiledBehavior c = stamp_behavior("AlsoSpace", solid_value(), space_value());
    StepResult r = step_simulation(w.loaded.kb, s, {a, c}, 1);
    CHECK(r.bindings == 2);
    CHECK(s.cells.size() == 2);
}

TEST_CASE("evaluate_assertion: some candidate location carries an allowed value") {
    MotionWorld w;
    Situation& s = w.situation();
    write_cell(s, {2, 1, 1}, 1, solid_value());

    RuleAssertion here;
    here.locations = {{2, 1, 1}};
    here.t = 1;
    here.allowed = {solid_value()};
    CHECK(evaluate_assertion(s, here));

    here.allowed = {space_value()};
    CHECK_FALSE(evaluate_assertion(s, here));

    // Disjunction over locations: one hit among misses is enough.
    RuleAssertion somewhere;
    somewhere.stratum = Stratum::Disjunction;
    somewhere.locations = {{1, 1, 1}, {2, 1, 1}, {3, 1, 1}};
    somewhere.t = 1;
    somewhere.allowed = {solid_value()};
    CHECK(evaluate_assertion(s, somewhere));

    // Unwritten cells read as empty space, matching the category wildcard.
    RuleAssertion empty;
    empty.locations = {{4, 1, 1}};
    empty.t = 1;
    empty.allowed = {space_value()};
    CHECK(evaluate_assertion(s, empty));

    RuleAssertion nowhere;
    nowhere.t = 1;
    nowhere.allowed = {solid_value()};
    CHECK_FALSE(evaluate_assertion(s, nowhere));  // no candidate locations
}

TEST_CASE("evaluate_rule implements material implication") {
    MotionWorld w;
    Situation& s = w.situation();
    write_cell(s, {1, 1, 1}, 1, solid_value());

    auto assertion = [&](Coord c, Value v) {
        RuleAssertion a;
        a.locations = {c};
        a.t = 1;
        a.allowed = {v};
        return a;
    };
    RuleAssertion truth = assertion({1, 1, 1}, solid_value());
    RuleAssertion falsity = assertion({1, 1, 1}, space_value());

    Rule r;
    r.name = "solid-implies-solid";
    r.antecedent = {truth};
    r.consequent = {truth};
    RuleEvaluation e = evaluate_rule(s, r);
    CHECK(e.antecedent_true);
    CHECK(e.consequent_true);
    CHECK(e.satisfied);

    r.consequent = {falsity};
    e = evaluate_rule(s, r);
    CHECK(e.antecedent_true);
    CHECK_FALSE(e.consequent_true);
    CHECK_FALSE(e.satisfied);

    r.antecedent = {falsity};
    e = evaluate_rule(s, r);
    CHECK_FALSE(e.antecedent_true);
    CHECK(e.satisfied);  // vacuous truth

    // Conjunction inside each side: one false antecedent member clears it.
    r.antecedent = {truth, falsity};
    r.consequent = {falsity};
    e = evaluate_rule(s, r);
    CHECK_FALSE(e.antecedent_true);
    CHECK(e.satisfied);

    // An empty antecedent is true, an empty consequent is true.
    Rule bare;
    e = evaluate_rule(s, bare);
    CHECK(e.antecedent_true);
    CHECK(e.consequent_true);
    CHECK(e.satisfied);
}
