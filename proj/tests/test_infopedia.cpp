#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "ross/infopedia.hpp"
#include "ross/script.hpp"

using namespace ross;

namespace {

Infopedia load(const std::vector<std::string>& rels) {
    LoadResult r = load_knowledge_base(fixture_files(rels));
    for (const auto& e : r.parse_errors) MESSAGE(e);
    if (!r.report.findings.empty()) MESSAGE(r.report.to_text());
    REQUIRE(r.ok());
    return std::move(r.kb);
}

Infopedia load_text(const std::string& source) {
    LoadResult r = load_knowledge_base_text(source);
    for (const auto& e : r.parse_errors) MESSAGE(e);
    REQUIRE(r.parse_errors.empty());
    return std::move(r.kb);
}

} // namespace

TEST_CASE("registration: value sets, constants, mappings") {
    Infopedia kb = load({"golden/support/units.star", "golden/03_value_sets.star",
                         "golden/04_mapping.star"});

    const AttributeValueSet* mm = kb.find_value_set("Millimeter");
    REQUIRE(mm);
    CHECK_FALSE(mm->is_enumerated());
    CHECK_FALSE(mm->is_interval());

    CHECK(kb.find_constant("lenMaxVehiclePhysicalDimension") == 12000);
    CHECK_FALSE(kb.find_constant("nope").has_value());

    const AttributeValueSet* vpd = kb.find_value_set("VehiclePhysicalDimension");
    REQUIRE(vpd);
    CHECK(vpd->base == "Millimeter");
    CHECK(vpd->usage == Usage::Locational);
    REQUIRE(vpd->is_interval());
    CHECK(vpd->interval->first == 1);
    CHECK(vpd->interval->second == 12000);  // constant bound resolved

    const Mapping* m = kb.find_mapping("MeterToFoot");
    REQUIRE(m);
    CHECK(m->a == Rational(32808, 10000));
    CHECK(apply_mapping(*m, kb.value_set("Meter"), kb.value_set("Foot"), Value::integer(1)).exact ==
          Rational(32808, 10000));

    CHECK_THROWS_AS((void)kb.value_set("Missing"), Error);
    CHECK_THROWS_AS((void)kb.mapping("Missing"), Error);
}

TEST_CASE("registration: attribute type with dictionaries feeds the word index") {
    Infopedia kb = load({"golden/02_dictionary.star"});
    const AttributeType* t = kb.find_attribute_type("VehicleExteriorColor");
    REQUIRE(t);
    CHECK(t->super_type == Usage::Qualitative);
    REQUIRE(t->values.members.size() == 4);
    CHECK(t->values.find_member("Silver"));

    auto grey = kb.lookup_word("grey", "English");
    REQUIRE(grey.size() == 1);
    CHECK(grey[0] == "VehicleExteriorColor.Silver");
    auto opal = kb.lookup_word("opal", "English");
    REQUIRE(opal.size() == 1);
    CHECK(opal[0] == "VehicleExteriorColor.White");
    CHECK(kb.lookup_word("grey", "French").empty());
    CHECK(kb.lookup_word("unheard", "English").empty());
}

TEST_CASE("registration: dimension system axes are locational and globally resolvable") {
    Infopedia kb = load({"golden/support/millimeter.star", "golden/05_dimension_system.star"});
    const DimensionSystem* ds = kb.find_dimension_system("MillimeterCoordinates");
    REQUIRE(ds);
    REQUIRE(ds->spatial.size() == 3);
    CHECK(ds->temporal.empty());
    for (const auto& axis : ds->spatial) {
        CHECK(axis.super_type == Usage::Locational);
        REQUIRE(axis.values.is_interval());
        CHECK(axis.values.interval->first == 1);
        CHECK(axis.values.interval->second == 1000);
    }
    // Axis types resolve on their own, for cluster checks.
    CHECK(kb.find_attribute_type("AttributeTypeX"));
    CHECK(kb.find_attribute_type("AttributeTypeZ"));
}

TEST_CASE("registration: specification system binds a dimension system") {
    Infopedia kb =
        load({"golden/support/millimeter.star", "golden/05_dimension_system.star",
              "golden/support/material.star", "golden/06_specification_system.star"});
    const SpecificationSystem* ss = kb.find_specification_system("VehiclePartPhysicalComposition");
    REQUIRE(ss);
    CHECK(ss->dimension_system == "MillimeterCoordinates");
    REQUIRE(ss->inner_content.size() == 1);
    CHECK(ss->inner_content[0].name == "MaterialCompositionAttributeType");

    CHECK(kb.specification_for_dimension("MillimeterCoordinates") == ss);
    CHECK(kb.specification_for_dimension("NoSuchSystem") == nullptr);
}

TEST_CASE("resolve_class: ignition key flattens against its structural parent") {
    Infopedia kb =
        load({"golden/support/everyday_parent.star", "golden/07_object_frame_class.star"});
    ResolvedClass cls = kb.resolve_class("IgnitionKeyObjectFrameClass");
    CHECK(cls.name == "IgnitionKeyObjectFrameClass");
    REQUIRE(cls.structural_parents.size() == 1);
    CHECK(cls.structural_parents[0] == "EverydayObjectStructuralParentClass");
    REQUIRE(cls.attributes.size() == 1);
    CHECK(cls.attributes[0].name == "MaterialComposition");
    const AttributeType* mat = cls.find_attribute_type("MaterialCompositionAttributeType");
    REQUIRE(mat);
    CHECK(mat->super_type == Usage::Qualitative);
    CHECK(value_in_set(mat->values, Value::enumerated("Steel")));
    CHECK(cls.kind == FrameKind::Unit);  // no own frame, no components

    ResolvedClass sp = kb.resolve_class("EverydayObjectStructuralParentClass");
    CHECK(sp.kind == FrameKind::Range);
    REQUIRE(sp.dimension_systems.size() == 1);
    CHECK(sp.dimension_systems[0] == "EverydayObjectBasicDimensionSystem");
}

TEST_CASE("resolve_class: inheritance precedence, closest definition wins") {
    Infopedia kb = load_text(
        "ObjectFrameClass \"Base\"\n"
        "(\n"
        "  AttributeTypes\n"
        "  (\n"
        "    AttributeType \"Color\" ( <SuperType val = \"Qualitative\"/> \"Values\" ( \"Red\" ); );\n"
        "    AttributeType \"Size\" ( <SuperType val = \"Qualitative\"/> \"Values\" ( { 1, .. 9 } ); );\n"
        "  );\n"
        "  StructuralParentClassesBase ( { \"SP\" } );\n"
        ");\n"
        "ObjectFrameClass \"Derived\"\n"
        "(\n"
        "  HigherClasses ( Base );\n"
        "  AttributeTypes\n"
        "  (\n"
        "    AttributeType \"Color\" ( <SuperType val = \"Qualitative\"/> \"Values\" ( \"Blue\" ); );\n"
        "  );\n"
        ");\n"
        "ObjectFrameClass \"SP\"\n"
        "(\n"
        "  FrameKind ( Range );\n"
        "  DimensionSystems\n"
        "  (\n"
        "    DimensionSystem \"SPGrid\"\n"
        "    (\n"
        "      SpatialAttributeTypes\n"
        "      (\n"
        "        \"GX\" ( \"ValueSet\" ( { 1, .. 4 } ); );\n"
        "      );\n"
        "    );\n"
        "  );\n"
        ");\n");
    ResolvedClass d = kb.resolve_class("Derived");
    REQUIRE(d.ancestry.size() == 2);
    CHECK(d.ancestry[0] == "Derived");
    CHECK(d.ancestry[1] == "Base");
    const AttributeType* color = d.find_attribute_type("Color");
    REQUIRE(color);
    CHECK(color->values.find_member("Blue"));      // own definition shadows the base
    CHECK_FALSE(color->values.find_member("Red"));
    CHECK(d.find_attribute_type("Size"));           // inherited
    CHECK(d.provenance.at("Color") == "Derived");
    CHECK(d.provenance.at("Size") == "Base");
    REQUIRE(d.structural_parents.size() == 1);      // inherited structural parent
    CHECK(d.structural_parents[0] == "SP");
}

TEST_CASE("resolve_class: typical-immediate structural parents shadow base ones") {
    Infopedia kb = load_text(
        "ObjectFrameClass \"C\"\n"
        "(\n"
        "  StructuralParentClassesBase ( { \"BaseSP\" } );\n"
        "  StructuralParentClassesTypicalImmediate ( { \"NearSP\" } );\n"
        "  AttributeTypes\n"
        "  (\n"
        "    AttributeType \"P\" ( <SuperType val = \"Locational\"/> \"Values\" ( \"Here\" ); );\n"
        "  );\n"
        ");\n");
    ResolvedClass c = kb.resolve_class("C");
    REQUIRE(c.structural_parents.size() == 1);
    CHECK(c.structural_parents[0] == "NearSP");
}

TEST_CASE("resolve_class failure modes") {
    Infopedia cyc = load_text(
        "ObjectFrameClass \"A\" ( HigherClasses ( B ); );\n"
        "ObjectFrameClass \"B\" ( HigherClasses ( A ); );\n");
    CHECK_THROWS_AS((void)cyc.resolve_class("A"), Error);
    try {
        (void)cyc.resolve_class("A");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InheritanceCycle);
    }

    Infopedia dangling = load_text("ObjectFrameClass \"A\" ( HigherClasses ( Ghost ); );\n");
    try {
        (void)dangling.resolve_class("A");
        FAIL("expected UnresolvedRef");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnresolvedRef);
    }

    // No dimension info anywhere: nothing to instantiate against.
    Infopedia bare = load_text("ObjectFrameClass \"A\" ( HigherClasses (); );\n");
    try {
        (void)bare.resolve_class("A");
        FAIL("expected NotInstantiable");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotInstantiable);
    }

    Infopedia none;
    CHECK_THROWS_AS((void)none.resolve_class("Missing"), Error);
}

TEST_CASE("duplicate definitions are findings, first registration survives") {
    LoadResult r = load_knowledge_base_text(
        "ValueSet \"S\" ( \"A\" );\n"
        "ValueSet \"S\" ( \"B\" );\n");
    CHECK_FALSE(r.ok());
    REQUIRE_FALSE(r.report.findings.empty());
    CHECK(r.report.findings[0].check == "DuplicateName");
    const AttributeValueSet* s = r.kb.find_value_set("S");
    REQUIRE(s);
    CHECK(s->find_member("A"));
    CHECK_FALSE(s->find_member("B"));
}

TEST_CASE("super type contradictions are findings") {
    LoadResult r = load_knowledge_base_text(
        "AttributeType \"T\"\n"
        "(\n"
        "  <SuperType val = \"Locational\"/>\n"
        "  \"Values\" ( <SuperTypeUsage val = \"Qualitative\" /> { 1, .. 5 } );\n"
        ");\n");
    CHECK_FALSE(r.ok());
    bool found = false;
    for (const auto& f : r.report.findings) found |= f.check == "SuperTypeMismatch";
    CHECK(found);
}

TEST_CASE("validate_kb: clean corpus, deterministic order") {
    Infopedia kb = load({"golden/support/everyday_parent.star", "golden/07_object_frame_class.star",
                         "cat/cat.star"});
    ValidationReport r = kb.validate_kb();
    if (!r.ok()) MESSAGE(r.to_text());
    CHECK(r.ok());

    ValidationReport again = kb.validate_kb();
    CHECK(r.to_text() == again.to_text());
}

TEST_CASE("validate_kb: dangling references are reported") {
    Infopedia kb = load_text(
        "ObjectFrameClass \"C\"\n"
        "(\n"
        "  StructuralParentClassesBase ( { \"GhostParent\" } );\n"
        "  BehaviorClasses ( GhostBehavior );\n"
        "  AttributeTypes\n"
        "  (\n"
        "    AttributeType \"P\" ( <SuperType val = \"Locational\"/> \"Values\" ( \"Here\" ); );\n"
        "  );\n"
        ");\n");
    ValidationReport r = kb.validate_kb();
    CHECK_FALSE(r.ok());
    bool ghost_parent = false, ghost_behavior = false;
    for (const auto& f : r.findings) {
        ghost_parent |= f.message.find("GhostParent") != std::string::npos;
        ghost_behavior |= f.message.find("GhostBehavior") != std::string::npos;
    }
    CHECK(ghost_parent);
    CHECK(ghost_behavior);
}

TEST_CASE("validate_kb: class attribute values must live in their type's set") {
    Infopedia kb = load_text(
        "ObjectFrameClass \"C\"\n"
        "(\n"
        "  AttributeTypes\n"
        "  (\n"
        "    AttributeType \"Material\" ( <SuperType val = \"Qualitative\"/> \"Values\" ( \"Steel\" ); );\n"
        "    AttributeType \"P\" ( <SuperType val = \"Locational\"/> \"Values\" ( \"Here\" ); );\n"
        "  );\n"
        "  Attributes\n"
        "  (\n"
        "    Attribute \"M\" ( <Attribute ref = Material val = \"Wood\" /> );\n"
        "  );\n"
        ");\n");
    ValidationReport r = kb.validate_kb();
    CHECK_FALSE(r.ok());
    bool out_of_set = false;
    for (const auto& f : r.findings) out_of_set |= f.check == "OutOfSet";
    CHECK(out_of_set);
}

TEST_CASE("class and behavior name listings are sorted") {
    Infopedia kb = load({"golden/support/everyday_parent.star", "cat/cat.star",
                         "motion/motion.star"});
    auto classes = kb.class_names();
    REQUIRE(classes.size() == 5);
    CHECK(std::is_sorted(classes.begin(), classes.end()));
    auto behaviors = kb.behavior_class_names();
    REQUIRE(behaviors.size() == 1);
    CHECK(behaviors[0] == "MoveRight");
}

TEST_CASE("template classes expand draw instructions into cells") {
    Infopedia kb = load_text(
        "TemplateClass \"Tmpl\"\n"
        "(\n"
        "  TargetClass ( Target );\n"
        "  Instructions\n"
        "  (\n"
        "    <FillCuboid x1 = 1 y1 = 1 z1 = 1 x2 = 2 y2 = 2 z2 = 1 val = \"Solid\" />\n"
        "    <SetCell x = 2 y = 2 z = 1 val = \"Glass\" />\n"
        "  );\n"
        ");\n");
    const TemplateContent* t = kb.find_template("Tmpl");
    REQUIRE(t);
    CHECK(t->target_class == "Target");
    CHECK(t->ex == 2);
    CHECK(t->ey == 2);
    CHECK(t->ez == 1);
    REQUIRE(t->cells.size() == 4);
    CHECK(t->cells.at({1, 1, 1}) == "Solid");
    CHECK(t->cells.at({2, 2, 1}) == "Glass");  // later instruction wins
}

TEST_CASE("shape patterns hold categories and reject junk") {
    Infopedia kb = load_text(
        "ShapePattern \"L\"\n"
        "(\n"
        "  <Extent x = 2 y = 2 z = 1 />\n"
        "  Cells\n"
        "  (\n"
        "    <Cell x = 1 y = 1 z = 1 val = \"NonSpace\" />\n"
        "    <Cell x = 1 y = 2 z = 1 val = \"NonSpace\" />\n"
        "    <Cell x = 2 y = 1 z = 1 val = \"Space\" />\n"
        "  );\n"
        ");\n");
    const ShapePattern* p = kb.find_shape_pattern("L");
    REQUIRE(p);
    CHECK(p->ex == 2);
    CHECK(p->non_space_count() == 2);

    LoadResult bad = load_knowledge_base_text(
        "ShapePattern \"B\"\n"
        "(\n"
        "  <Extent x = 1 y = 1 z = 1 />\n"
        "  Cells ( <Cell x = 1 y = 1 z = 1 val = \"Marble\" /> );\n"
        ");\n");
    CHECK_FALSE(bad.ok());
}
