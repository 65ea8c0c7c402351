#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ross/checks.hpp"
#include "ross/infopedia.hpp"
#include "ross/repository.hpp"

namespace ross {

/// Instantiation engine: executes attach/assert statements and infusions
/// against one instance model, resolving classes through the knowledge base.
class Engine {
public:
    Engine(const Infopedia& kb, InstanceModel& model);

    const Infopedia& kb() const { return kb_; }
    InstanceModel& model() { return model_; }
    Situation& situation();  // current context, created on first use

    /// Attaches a new instance. With no parent id: classes that name a
    /// structural parent get it auto-instantiated as the situation root;
    /// classes with their own frame of reference become the root themselves.
    /// Throws DuplicateIdentifier, UnresolvedRef, IncompleteRelToParent,
    /// ParentExtentViolation, NotInstantiable.
    ObjectFrameInstance& attach(const std::string& class_name, const std::string& instance_name,
                                const std::optional<std::string>& parent_id,
                                const star::RelationshipToParentAst& rel, int at_time = 1);

    /// Validates an assert statement's payload as a two-part cluster against
    /// the instance's class and stores the attributes on success. Findings go
    /// to the report; nothing is stored when it carries errors.
    void assert_cluster(const std::string& instance_name,
                        const std::vector<star::AttrElement>& cluster, ValidationReport& report);

    /// Writes one cell value at a unit instance's position and time point.
    /// Throws KindMismatch for non-unit instances, ImpreciseLocation when the
    /// position is still a range, OutOfSet for foreign values.
    void infuse_unit(ObjectFrameInstance& inst, const Value& v);

    /// Stamps magnified template content into the instance's region at the
    /// given time point. Throws ExtentOverflow when the magnified content
    /// does not fit.
    void infuse_template(ObjectFrameInstance& inst, const TemplateContent& content,
                         std::int64_t fx, std::int64_t fy, std::int64_t fz, int t);

    /// Same for a shape pattern; non-space cells receive fill, space cells
    /// receive the space default.
    void infuse_shape(ObjectFrameInstance& inst, const ShapePattern& pattern, std::int64_t fx,
                      std::int64_t fy, std::int64_t fz, const Value& fill, int t);

    /// Applies a populated object class to an instance: resolves every
    /// assignment path first, validates every value, then writes atomically.
    /// Throws PathUnresolved / OutOfSet before anything is written.
    void populate(ObjectFrameInstance& inst, const star::PopulatedObjectClassDef& poc);

    /// Runs the attach/assert statements of a parsed script in order.
    /// Non-statement items are ignored. Errors become findings.
    ValidationReport run_statements(const std::vector<star::Item>& items);

    /// Resolves an attribute type name against an instance's class, falling
    /// back to the global registry.
    const AttributeType* resolve_type_for(const ObjectFrameInstance& inst,
                                          const std::string& type_ref) const;

private:
    ObjectFrameInstance* ensure_parent_frame(const ResolvedClass& cls,
                                             const std::string& instance_name);
    ObjectFrameInstance& make_root(const ResolvedClass& cls, const std::string& name);
    Cuboid place_child(const ObjectFrameInstance& parent, const ResolvedClass& cls,
                       ObjectFrameInstance& child, const star::RelationshipToParentAst& rel);

    const Infopedia& kb_;
    InstanceModel& model_;
    int auto_instance_counter_ = 0;
    mutable std::map<std::string, ResolvedClass> class_cache_;
};

/// "FooClass" -> "FooInstance-<n>"; other shapes get "-Instance<n>" appended.
std::string auto_instance_name(const std::string& class_name, int n);

} // namespace ross
