#include <cstdlib>
#include <optional>

#include "doctest.h"
#include "ross/repository.hpp"

using namespace ross;

namespace {

Situation make_grid(std::int64_t n = 8, int time_points = 16) {
    Situation s;
    s.extents.lo = {1, 1, 1};
    s.extents.hi = {n, n, n};
    AttributeValueSet essential;
    essential.name = "Essential";
    essential.members.push_back({"Solid", {}, ValueCategory::NonSpaceValue});
    essential.members.push_back({"Liquid", {}, ValueCategory::NonSpaceValue});
    essential.members.push_back({"EmptySpace", {}, ValueCategory::SpaceValue});
    s.essential_set = essential;
    s.ensure_time_point(time_points);
    return s;
}

Value solid() { return Value::enumerated("Solid"); }
Value liquid() { return Value::enumerated("Liquid"); }

// Independent oracle: scan the raw write list backwards under the situation's
// assumptions.
std::optional<Value> oracle_read(const Situation& s,
                                 const std::vector<std::tuple<Coord, int, Value>>& writes,
                                 const Coord& c, int t) {
    std::optional<Value> exact;
    std::optional<Value> best;
    int best_t = 0;
    for (const auto& [wc, wt, wv] : writes) {
        if (!(wc == c)) continue;
        if (wt == t) exact = wv;  // later writes overwrite earlier ones
        if (s.perpetuation && wt < t && wt >= best_t) {
            best = wv;
            best_t = wt;
        }
    }
    if (exact) return exact;
    if (best) return best;
    if (s.empty_space) return space_default();
    return std::nullopt;
}

} // namespace

TEST_CASE("cuboid geometry") {
    Cuboid c{{2, 3, 1}, {4, 6, 1}};
    CHECK(c.volume() == 3 * 4 * 1);
    CHECK(c.contains(Coord{2, 3, 1}));
    CHECK(c.contains(Coord{4, 6, 1}));
    CHECK_FALSE(c.contains(Coord{5, 3, 1}));
    CHECK(c.contains(Cuboid{{2, 3, 1}, {3, 4, 1}}));
    CHECK_FALSE(c.contains(Cuboid{{2, 3, 1}, {5, 4, 1}}));
    CHECK(c.center_x() == Rational(3));
    CHECK(c.center_y() == Rational(9, 2));  // even extent, half coordinate
}

TEST_CASE("time point labels") {
    CHECK(TimePoint::default_label(1) == "T01");
    CHECK(TimePoint::default_label(9) == "T09");
    CHECK(TimePoint::default_label(16) == "T16");

    Situation s = make_grid(2, 3);
    CHECK(s.timeline.size() == 3);
    CHECK(s.time_point(2).label == "T02");
    CHECK(s.find_time_point("T03") == 3);
    CHECK_THROWS_AS((void)s.find_time_point("T99"), Error);
    CHECK_THROWS_AS((void)s.time_point(0), Error);
    CHECK(s.ensure_time_point(2) == 2);      // no shrink
    CHECK(s.timeline.size() == 3);
    CHECK(s.ensure_time_point(5) == 5);
    CHECK(s.timeline.size() == 5);
}

TEST_CASE("write_cell validates, read_cell returns explicit values") {
    Situation s = make_grid();
    write_cell(s, {1, 1, 1}, 1, solid());
    CHECK(s.cells.size() == 1);
    auto v = read_cell(s, {1, 1, 1}, 1);
    REQUIRE(v);
    CHECK(*v == solid());
    CHECK(v->category == ValueCategory::NonSpaceValue);

    CHECK_THROWS_AS(write_cell(s, {0, 1, 1}, 1, solid()), Error);
    CHECK_THROWS_AS(write_cell(s, {9, 1, 1}, 1, solid()), Error);
    CHECK_THROWS_AS(write_cell(s, {1, 1, 1}, 0, solid()), Error);
    CHECK_THROWS_AS(write_cell(s, {1, 1, 1}, 17, solid()), Error);
    CHECK_THROWS_AS(write_cell(s, {1, 1, 1}, 1, Value::enumerated("Cheese")), Error);
    CHECK_THROWS_AS((void)read_cell(s, {0, 1, 1}, 1), Error);
    CHECK_THROWS_AS((void)read_cell(s, {1, 1, 1}, 17), Error);
    CHECK(s.cells.size() == 1);  // failed writes leave no entries

    // Label-addressed read.
    auto by_label = read_cell(s, {1, 1, 1}, "T01");
    REQUIRE(by_label);
    CHECK(*by_label == solid());
}

TEST_CASE("empty-space assumption supplies the default for unwritten cells") {
    Situation s = make_grid();
    auto v = read_cell(s, {5, 5, 5}, 3);
    REQUIRE(v);
    CHECK(*v == space_default());
    CHECK(v->category == ValueCategory::SpaceValue);

    s.empty_space = false;
    CHECK_FALSE(read_cell(s, {5, 5, 5}, 3).has_value());
}

TEST_CASE("perpetuation carries the latest earlier write forward") {
    Situation s = make_grid();
    write_cell(s, {2, 2, 2}, 3, solid());
    write_cell(s, {2, 2, 2}, 7, liquid());

    CHECK(*read_cell(s, {2, 2, 2}, 3) == solid());
    CHECK(*read_cell(s, {2, 2, 2}, 5) == solid());   // perpetuated
    CHECK(*read_cell(s, {2, 2, 2}, 7) == liquid());
    CHECK(*read_cell(s, {2, 2, 2}, 16) == liquid());
    CHECK(*read_cell(s, {2, 2, 2}, 2) == space_default());  // before the first write

    s.empty_space = false;
    CHECK_FALSE(read_cell(s, {2, 2, 2}, 2).has_value());  // unset before first write
    CHECK(*read_cell(s, {2, 2, 2}, 5) == solid());

    s.perpetuation = false;
    CHECK_FALSE(read_cell(s, {2, 2, 2}, 5).has_value());
    CHECK(*read_cell(s, {2, 2, 2}, 7) == liquid());  // explicit entries still read

    s.empty_space = true;
    CHECK(*read_cell(s, {2, 2, 2}, 5) == space_default());  // no perpetuation, default only
}

TEST_CASE("explicit-write-only store: reads never add entries") {
    Situation s = make_grid();
    write_cell(s, {1, 2, 3}, 2, solid());
    CHECK(s.cells.size() == 1);
    for (int t = 1; t <= 16; ++t) (void)read_cell(s, {1, 2, 3}, t);
    (void)read_cell(s, {4, 4, 4}, 9);
    CHECK(s.cells.size() == 1);
}

TEST_CASE("overwrites keep store size and append an audit note") {
    Situation s = make_grid();
    write_cell(s, {1, 1, 1}, 1, solid());
    write_cell(s, {1, 1, 1}, 1, solid());  // same value, no note
    CHECK(s.cells.audit().empty());
    write_cell(s, {1, 1, 1}, 1, liquid());
    CHECK(s.cells.size() == 1);
    REQUIRE(s.cells.audit().size() == 1);
    CHECK(s.cells.audit()[0].find("Solid") != std::string::npos);
    CHECK(s.cells.audit()[0].find("Liquid") != std::string::npos);
}

TEST_CASE("randomized schedules agree with the backward-scan oracle") {
    std::srand(424242);
    for (int round = 0; round < 40; ++round) {
        Situation s = make_grid(4, 6);
        s.empty_space = round % 2 == 0;
        s.perpetuation = round % 4 < 2;
        std::vector<std::tuple<Coord, int, Value>> writes;
        int n_writes = std::rand() % 30;
        for (int i = 0; i < n_writes; ++i) {
            Coord c{std::rand() % 4 + 1, std::rand() % 4 + 1, std::rand() % 4 + 1};
            int t = std::rand() % 6 + 1;
            Value v = std::rand() % 2 ? solid() : liquid();
            write_cell(s, c, t, v);
            writes.push_back({c, t, v});
        }
        for (std::int64_t x = 1; x <= 4; ++x)
            for (std::int64_t y = 1; y <= 4; ++y)
                for (std::int64_t z = 1; z <= 4; ++z)
                    for (int t = 1; t <= 6; ++t) {
                        auto got = read_cell(s, {x, y, z}, t);
                        auto want = oracle_read(s, writes, {x, y, z}, t);
                        CHECK(got.has_value() == want.has_value());
                        if (got && want) {
                            CAPTURE(x);
                            CAPTURE(y);
                            CAPTURE(z);
                            CAPTURE(t);
                            CHECK(*got == *want);
                        }
                    }
    }
}

TEST_CASE("cell CSV dump is deterministic and label-addressed") {
    Situation s = make_grid(2, 2);
    write_cell(s, {2, 1, 1}, 2, liquid());
    write_cell(s, {1, 1, 1}, 1, solid());
    CHECK(dump_cells_csv(s) ==
          "x,y,z,t,value\n"
          "1,1,1,T01,Solid\n"
          "2,1,1,T02,Liquid\n");
}

TEST_CASE("instance tree lookups") {
    Situation s = make_grid();
    auto root = std::make_unique<ObjectFrameInstance>();
    root->id = "Root";
    auto child = std::make_unique<ObjectFrameInstance>();
    child->id = "Child";
    child->set_attribute("Color", AttrValue::of(Value::enumerated("Blue")));
    child->set_attribute("Color", AttrValue::of(Value::enumerated("Red")));  // replaces
    root->children.push_back(std::move(child));
    s.root = std::move(root);

    CHECK(s.find_instance("Root"));
    ObjectFrameInstance* c = s.find_instance("Child");
    REQUIRE(c);
    REQUIRE(c->attributes.size() == 1);
    CHECK(c->find_attribute("Color")->value.single == Value::enumerated("Red"));
    CHECK(c->find_attribute("Weight") == nullptr);
    CHECK(s.find_instance("Nobody") == nullptr);
}

TEST_CASE("shape pattern validation") {
    ShapePattern p;
    p.ex = 2;
    p.ey = 1;
    p.ez = 1;
    p.cells[{1, 1, 1}] = ValueCategory::NonSpaceValue;
    p.cells[{2, 1, 1}] = ValueCategory::SpaceValue;
    CHECK_NOTHROW(p.validate());
    CHECK(p.non_space_count() == 1);

    ShapePattern out_of_extent = p;
    out_of_extent.cells[{3, 1, 1}] = ValueCategory::NonSpaceValue;
    CHECK_THROWS_AS(out_of_extent.validate(), Error);

    ShapePattern all_space;
    all_space.cells[{1, 1, 1}] = ValueCategory::SpaceValue;
    CHECK_THROWS_AS(all_space.validate(), Error);
}

TEST_CASE("magnification scales extents and counts exactly") {
    ShapePattern p;
    p.ex = 2;
    p.ey = 2;
    p.ez = 1;
    p.cells[{1, 1, 1}] = ValueCategory::NonSpaceValue;
    p.cells[{2, 2, 1}] = ValueCategory::NonSpaceValue;

    ShapePattern m = magnify_shape_pattern(p, 3, 2, 1);
    CHECK(m.ex == 6);
    CHECK(m.ey == 4);
    CHECK(m.ez == 1);
    CHECK(m.non_space_count() == p.non_space_count() * 3 * 2 * 1);
    // Source cell (1,1,1) becomes the full 3x2x1 block at the origin.
    for (std::int64_t x = 1; x <= 3; ++x)
        for (std::int64_t y = 1; y <= 2; ++y)
            CHECK(m.cells.at({x, y, 1}) == ValueCategory::NonSpaceValue);

    CHECK(magnify_shape_pattern(p, 1, 1, 1) == p);
    CHECK_THROWS_AS((void)magnify_shape_pattern(p, 0, 1, 1), Error);
    CHECK_THROWS_AS((void)magnify_shape_pattern(p, 1, -2, 1), Error);
}

TEST_CASE("magnification composes: magnify(magnify(p,a),b) == magnify(p,ab)") {
    std::srand(777);
    for (int i = 0; i < 30; ++i) {
        ShapePattern p;
        p.ex = std::rand() % 3 + 1;
        p.ey = std::rand() % 3 + 1;
        p.ez = std::rand() % 3 + 1;
        for (std::int64_t x = 1; x <= p.ex; ++x)
            for (std::int64_t y = 1; y <= p.ey; ++y)
                for (std::int64_t z = 1; z <= p.ez; ++z)
                    if (std::rand() % 2)
                        p.cells[{x, y, z}] = std::rand() % 4 ? ValueCategory::NonSpaceValue
                                                             : ValueCategory::SpaceValue;
        std::int64_t a1 = std::rand() % 3 + 1, a2 = std::rand() % 3 + 1, a3 = std::rand() % 3 + 1;
        std::int64_t b1 = std::rand() % 3 + 1, b2 = std::rand() % 3 + 1, b3 = std::rand() % 3 + 1;
        ShapePattern two_step = magnify_shape_pattern(magnify_shape_pattern(p, a1, a2, a3), b1, b2, b3);
        ShapePattern one_step = magnify_shape_pattern(p, a1 * b1, a2 * b2, a3 * b3);
        CHECK(two_step == one_step);
    }
}

TEST_CASE("instance model contexts") {
    InstanceModel m;
    m.perpetuation = false;
    Context& c = m.ensure_context();
    CHECK(c.id == "Context-1");
    CHECK_FALSE(c.situation.perpetuation);  // assumptions copied at creation
    CHECK(&m.ensure_context() == &c);
    CHECK(m.contexts.size() == 1);
    Context& past = m.ensure_context("Context-2", ContextKind::Past);
    CHECK(m.contexts.size() == 2);
    CHECK(past.kind == ContextKind::Past);

    CHECK(context_kind_from_name("Hypothetical") == ContextKind::Hypothetical);
    CHECK(std::string(to_string(ContextKind::CommunicatedContent)) == "CommunicatedContent");
}
