#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ross/ast.hpp"
#include "ross/checks.hpp"
#include "ross/repository.hpp"
#include "ross/value.hpp"

namespace ross {

/// A class definition flattened through its inheritance lattice. Each merged
/// item remembers the ancestor it came from.
struct ResolvedClass {
    std::string name;
    Dictionary dictionary;
    std::vector<std::string> ancestry;  // self first, then depth-first bases

    std::vector<AttributeType> attribute_types;
    std::map<std::string, std::string> provenance;  // item name -> defining class
    std::vector<star::AttributeEntryAst> attributes;
    std::vector<std::string> dimension_systems;  // registry names, merged
    std::vector<star::StructureEntryAst> structure;
    std::vector<std::string> behavior_classes;
    std::vector<std::string> templates;
    std::vector<std::string> structural_parents;  // typical-immediate wins over base
    star::RelationshipToParentAst rel_to_parent;
    FrameKind kind = FrameKind::Aggregate;

    const AttributeType* find_attribute_type(const std::string& name) const;
};

/// Runtime form of a template class: explicit value cells after expanding
/// draw instructions.
struct TemplateContent {
    std::string name;
    std::optional<std::string> target_class;
    std::int64_t ex = 1, ey = 1, ez = 1;  // tight bounds of the cells
    std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, std::string> cells;
};

/// The knowledge-base registry set. register_ast() folds validated
/// definitions in; lookups are by exact name.
class Infopedia {
public:
    ValidationReport register_ast(const star::StarAst& ast);

    // Registries. Unknown names throw UnresolvedRef from the *_or_throw
    // accessors; the find_* accessors return nullptr instead.
    const AttributeValueSet* find_value_set(const std::string& name) const;
    const AttributeValueSet& value_set(const std::string& name) const;
    std::optional<std::int64_t> find_constant(const std::string& name) const;
    const AttributeType* find_attribute_type(const std::string& name) const;
    const AttributeType& attribute_type(const std::string& name) const;
    const DimensionSystem* find_dimension_system(const std::string& name) const;
    const DimensionSystem& dimension_system(const std::string& name) const;
    const SpecificationSystem* find_specification_system(const std::string& name) const;
    /// First specification system (by name) built over the given dimension
    /// system, or nullptr.
    const SpecificationSystem* specification_for_dimension(const std::string& ds) const;
    const Mapping* find_mapping(const std::string& name) const;
    const Mapping& mapping(const std::string& name) const;
    const star::ObjectFrameClassDef* find_class(const std::string& name) const;
    const ShapePattern* find_shape_pattern(const std::string& name) const;
    const ShapePattern& shape_pattern(const std::string& name) const;
    const TemplateContent* find_template(const std::string& name) const;
    const star::PopulatedObjectClassDef* find_populated_class(const std::string& name) const;
    const star::BehaviorClassDef* find_behavior_class(const std::string& name) const;

    std::vector<std::string> class_names() const;
    std::vector<std::string> behavior_class_names() const;

    /// Flattens a class through HigherClasses depth-first, left to right; the
    /// definition closest to the start wins on name clashes. Throws
    /// UnresolvedRef, InheritanceCycle, or NotInstantiable.
    ResolvedClass resolve_class(const std::string& name) const;

    /// Builds an AttributeType from a definition, resolving value-set
    /// references and constants. Findings go to the report; returns nullopt
    /// when the type is unusable.
    std::optional<AttributeType> build_attribute_type(const star::AttributeTypeDef& def,
                                                      ValidationReport& report,
                                                      const std::string& context) const;

    /// Natural-language index: definitions whose dictionary carries the word
    /// in the given language, sorted.
    std::vector<std::string> lookup_word(const std::string& word,
                                         const std::string& language) const;

    /// Re-runs every structural check across all registries. Deterministic
    /// finding order: (definition path, check name, message).
    ValidationReport validate_kb() const;

private:
    std::optional<std::int64_t> resolve_bound(const star::IntOrRef& b, ValidationReport& report,
                                              const std::string& context) const;
    std::optional<AttributeValueSet> build_value_set(const std::string& name,
                                                     const star::ValueSetBody& body,
                                                     ValidationReport& report,
                                                     const std::string& context) const;
    void register_class_body(const star::ObjectFrameClassDef& def, ValidationReport& report);
    void index_dictionary(const std::string& definition, const Dictionary& dict);

    std::map<std::string, AttributeValueSet> value_sets_;
    std::map<std::string, std::int64_t> constants_;
    std::map<std::string, AttributeType> attribute_types_;
    std::map<std::string, DimensionSystem> dimension_systems_;
    std::map<std::string, SpecificationSystem> specification_systems_;
    std::map<std::string, Mapping> mappings_;
    std::map<std::string, star::ObjectFrameClassDef> classes_;
    std::map<std::string, ShapePattern> shape_patterns_;
    std::map<std::string, TemplateContent> templates_;
    std::map<std::string, star::PopulatedObjectClassDef> populated_classes_;
    std::map<std::string, star::BehaviorClassDef> behavior_classes_;
    // (language, word) -> definition paths
    std::map<std::pair<std::string, std::string>, std::set<std::string>> word_index_;
};

} // namespace ross
