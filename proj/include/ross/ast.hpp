#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ross/lexer.hpp"
#include "ross/value.hpp"

namespace ross::star {

/// Interval bound: a literal integer or a named Integer constant.
struct IntOrRef {
    bool is_ref = false;
    std::int64_t value = 0;
    std::string ref;

    static IntOrRef literal(std::int64_t v) { return {false, v, {}}; }
    static IntOrRef reference(std::string name) { return {true, 0, std::move(name)}; }
    bool operator==(const IntOrRef&) const = default;
};

struct EnumMemberAst {
    std::string symbol;
    Dictionary dictionary;
    std::optional<std::string> category_raw;  // "Name": Category ( Space );
    bool operator==(const EnumMemberAst&) const = default;
};

/// Body of a value set, shared between ValueSet statements and the inline
/// Values/ValueSet sections of attribute types.
struct ValueSetBody {
    bool integer_constant = false;  // bare IntegerConstant member
    std::optional<std::string> base_ref;
    std::optional<std::string> usage_raw;  // SuperTypeUsage tag, verbatim
    std::vector<EnumMemberAst> members;
    std::optional<std::pair<IntOrRef, IntOrRef>> interval;
    bool operator==(const ValueSetBody&) const = default;
};

struct ValueSetDef {
    std::string name;
    ValueSetBody body;
    SourcePos pos;
    bool operator==(const ValueSetDef& o) const { return name == o.name && body == o.body; }
};

struct ConstantDecl {
    std::string name;
    std::int64_t value = 0;
    SourcePos pos;
    bool operator==(const ConstantDecl& o) const { return name == o.name && value == o.value; }
};

struct AttributeTypeDef {
    std::string name;
    std::optional<std::string> super_raw;  // SuperType tag, verbatim
    std::optional<std::string> values_ref;  // <Values ref = Name />
    std::optional<ValueSetBody> inline_values;
    SourcePos pos;
    bool operator==(const AttributeTypeDef& o) const {
        return name == o.name && super_raw == o.super_raw && values_ref == o.values_ref &&
               inline_values == o.inline_values;
    }
};

struct MappingDef {
    std::string name;
    std::string source;
    std::string dest;
    std::string expr_text;  // canonical source form, e.g. "(x$ * 3.2808)"
    Rational a{1};
    Rational b{0};
    SourcePos pos;
    bool operator==(const MappingDef& o) const {
        return name == o.name && source == o.source && dest == o.dest && a == o.a && b == o.b;
    }
};

struct DimensionSystemDef {
    std::string name;
    std::vector<AttributeTypeDef> spatial;
    std::vector<AttributeTypeDef> temporal;
    SourcePos pos;
    bool operator==(const DimensionSystemDef& o) const {
        return name == o.name && spatial == o.spatial && temporal == o.temporal;
    }
};

struct SpecificationSystemDef {
    std::string name;
    std::string dimension_section_name;  // e.g. "VehiclePartCoordinates"
    std::string dimension_system_ref;
    // inner content: (essential value type name, attribute type ref)
    std::vector<std::pair<std::string, std::string>> inner_content;
    SourcePos pos;
    bool operator==(const SpecificationSystemDef& o) const {
        return name == o.name && dimension_section_name == o.dimension_section_name &&
               dimension_system_ref == o.dimension_system_ref && inner_content == o.inner_content;
    }
};

/// Parsed value payload of an XML-ish attribute element.
struct AttrValueAst {
    enum class Kind { Single, Range, TemplateRef, FunctionRef };
    Kind kind = Kind::Single;
    Value single;
    std::optional<std::pair<Value, Value>> range;  // lo, hi
    std::string ref_name;                          // template / function name
    bool operator==(const AttrValueAst&) const = default;
};

/// <Attribute ref = TypeName val = "..." />, and its At/Extent/Assign kin.
struct AttrElement {
    std::string type_ref;
    AttrValueAst value;
    std::string path;  // Assign only: component path, "" = whole instance
    bool operator==(const AttrElement&) const = default;
};

struct RelationshipToParentAst {
    bool present = false;
    std::optional<std::string> parent_ref;  // <Parent ref = Name />
    std::vector<AttrElement> at_locations;
    std::vector<AttrElement> orientation_specifiers;
    std::vector<AttrElement> outer_extents;
    bool operator==(const RelationshipToParentAst&) const = default;
};

/// Attribute "Name" ( <Attribute ref = ... val = ... /> );
struct AttributeEntryAst {
    std::string name;
    AttrElement attr;
    bool operator==(const AttributeEntryAst&) const = default;
};

/// Reserved named-item list sections (RelationshipTypes).
struct NamedItemAst {
    std::string name;
    std::vector<std::string> items;
    bool operator==(const NamedItemAst&) const = default;
};

struct ObjectFrameClassDef;

/// Structure section entry: Component "Name" ( ClassRef ); or an inline
/// nested class definition.
struct StructureEntryAst {
    std::string component_name;
    std::string class_ref;                           // empty when inline
    std::vector<ObjectFrameClassDef> inline_class;   // 0 or 1
    RelationshipToParentAst rel_to_parent;
    bool operator==(const StructureEntryAst&) const;
};

struct ObjectFrameClassDef {
    std::string name;
    std::optional<bool> mass_substance;
    Dictionary dictionary_prior_word;
    Dictionary dictionary;
    std::vector<std::string> higher_classes;
    std::vector<std::string> structural_parent_classes_base;
    std::vector<std::string> structural_parent_classes_typical_immediate;
    RelationshipToParentAst rel_to_parent;
    std::vector<AttributeTypeDef> attribute_types;
    std::vector<AttributeEntryAst> attributes;
    std::vector<std::string> templates;
    std::vector<NamedItemAst> relationship_types;
    std::vector<std::string> dimension_system_refs;
    std::vector<DimensionSystemDef> inline_dimension_systems;
    std::vector<StructureEntryAst> structure;
    std::vector<std::string> behavior_classes;
    std::optional<std::string> frame_kind_raw;  // FrameKind ( Unit|Aggregate|Range );
    SourcePos pos;
    bool operator==(const ObjectFrameClassDef& o) const;
};

struct CellEntryAst {
    std::int64_t x = 1, y = 1, z = 1;
    std::string value;  // symbol (template) or category name (shape pattern)
    bool operator==(const CellEntryAst&) const = default;
};

struct DrawInstructionAst {
    enum class Kind { SetCell, FillCuboid };
    Kind kind = Kind::SetCell;
    std::int64_t x1 = 1, y1 = 1, z1 = 1;
    std::int64_t x2 = 1, y2 = 1, z2 = 1;
    std::string value;
    bool operator==(const DrawInstructionAst&) const = default;
};

struct TemplateClassDef {
    std::string name;
    std::optional<std::string> target_class;
    std::vector<CellEntryAst> cells;
    std::vector<DrawInstructionAst> instructions;
    SourcePos pos;
    bool operator==(const TemplateClassDef& o) const {
        return name == o.name && target_class == o.target_class && cells == o.cells &&
               instructions == o.instructions;
    }
};

struct ShapePatternDef {
    std::string name;
    std::int64_t extent_x = 1, extent_y = 1, extent_z = 1;
    std::vector<CellEntryAst> cells;  // values are category names; rest is Space
    SourcePos pos;
    bool operator==(const ShapePatternDef& o) const {
        return name == o.name && extent_x == o.extent_x && extent_y == o.extent_y &&
               extent_z == o.extent_z && cells == o.cells;
    }
};

struct PopulatedObjectClassDef {
    std::string name;
    std::string target_class;
    std::vector<AttrElement> assignments;  // path + attribute
    SourcePos pos;
    bool operator==(const PopulatedObjectClassDef& o) const {
        return name == o.name && target_class == o.target_class && assignments == o.assignments;
    }
};

struct BehaviorStateAst {
    std::string name;
    std::string poc_ref;  // reference to a populated object class, or empty
    std::vector<AttrElement> values;  // inline populated values
    bool operator==(const BehaviorStateAst&) const = default;
};

struct BinderConstraintAst {
    std::string from;  // entity name (prior state)
    std::string to;    // entity name (prior or post state)
    std::int64_t dx = 0, dy = 0, dz = 0, dt = 0;
    bool operator==(const BinderConstraintAst&) const = default;
};

struct BehaviorClassDef {
    std::string name;
    std::string bridge_structural_parent;
    std::vector<BehaviorStateAst> prior_states;
    std::vector<BehaviorStateAst> post_states;
    std::vector<BinderConstraintAst> binder;
    SourcePos pos;
    bool operator==(const BehaviorClassDef& o) const {
        return name == o.name && bridge_structural_parent == o.bridge_structural_parent &&
               prior_states == o.prior_states && post_states == o.post_states &&
               binder == o.binder;
    }
};

struct AttachStmt {
    std::string class_name;
    std::string instance_name;
    RelationshipToParentAst rel_to_parent;  // optional trailing body
    SourcePos pos;
    bool operator==(const AttachStmt& o) const {
        return class_name == o.class_name && instance_name == o.instance_name &&
               rel_to_parent == o.rel_to_parent;
    }
};

struct AssertStmt {
    std::string instance_name;
    std::vector<AttrElement> cluster;  // unvalidated two-part cluster payload
    SourcePos pos;
    bool operator==(const AssertStmt& o) const {
        return instance_name == o.instance_name && cluster == o.cluster;
    }
};

using Item = std::variant<ValueSetDef, ConstantDecl, AttributeTypeDef, DimensionSystemDef,
                          SpecificationSystemDef, MappingDef, ObjectFrameClassDef,
                          TemplateClassDef, ShapePatternDef, PopulatedObjectClassDef,
                          BehaviorClassDef, AttachStmt, AssertStmt>;

struct StarAst {
    std::vector<Item> items;
    bool operator==(const StarAst&) const = default;
};

} // namespace ross::star
