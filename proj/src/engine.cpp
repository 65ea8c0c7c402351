#include "ross/engine.hpp"

#include <algorithm>
#include <sstream>

namespace ross {

namespace {

AttrValue attr_value_from_ast(const star::AttrValueAst& v) {
    switch (v.kind) {
    case star::AttrValueAst::Kind::Single: return AttrValue::of(v.single);
    case star::AttrValueAst::Kind::Range:
        return AttrValue::of(ValueRange{v.range->first, v.range->second});
    case star::AttrValueAst::Kind::TemplateRef: {
        AttrValue out;
        out.kind = AttrValue::Kind::TemplateRef;
        out.text = v.ref_name;
        return out;
    }
    case star::AttrValueAst::Kind::FunctionRef: {
        AttrValue out;
        out.kind = AttrValue::Kind::FunctionRef;
        out.text = v.ref_name;
        return out;
    }
    }
    return {};
}

const star::AttrElement* find_element(const std::vector<star::AttrElement>& elems,
                                      const std::string& type_ref) {
    for (const auto& e : elems)
        if (e.type_ref == type_ref) return &e;
    return nullptr;
}

std::int64_t axis_of(const Coord& c, int axis) {
    return axis == 0 ? c.x : axis == 1 ? c.y : c.z;
}

void set_axis(Coord& c, int axis, std::int64_t v) {
    (axis == 0 ? c.x : axis == 1 ? c.y : c.z) = v;
}

} // namespace

std::string auto_instance_name(const std::string& class_name, int n) {
    static const std::string suffix = "Class";
    if (class_name.size() > suffix.size() &&
        class_name.compare(class_name.size() - suffix.size(), suffix.size(), suffix) == 0)
        return class_name.substr(0, class_name.size() - suffix.size()) + "Instance-" +
               std::to_string(n);
    return class_name + "-Instance" + std::to_string(n);
}

Engine::Engine(const Infopedia& kb, InstanceModel& model) : kb_(kb), model_(model) {}

Situation& Engine::situation() { return model_.ensure_context().situation; }

ObjectFrameInstance& Engine::make_root(const ResolvedClass& cls, const std::string& name) {
    Situation& s = situation();
    if (s.has_root())
        throw Error(ErrorCode::DuplicateIdentifier,
                    "situation already has a structural parent instance");

    const DimensionSystem* ds = nullptr;
    for (const auto& ds_name : cls.dimension_systems) {
        if (const DimensionSystem* candidate = kb_.find_dimension_system(ds_name)) {
            ds = candidate;
            break;
        }
    }
    Cuboid extents{{1, 1, 1}, {1, 1, 1}};
    if (ds) {
        if (ds->spatial.size() > 3)
            throw Error(ErrorCode::KindMismatch, "dimension system \"" + ds->name +
                                                     "\" has more than three spatial axes");
        for (std::size_t i = 0; i < ds->spatial.size(); ++i) {
            const AttributeValueSet& axis_set = ds->spatial[i].values;
            if (!axis_set.is_interval())
                throw Error(ErrorCode::NotInstantiable,
                            "spatial axis \"" + ds->spatial[i].name +
                                "\" has no bounded integer interval");
            set_axis(extents.lo, static_cast<int>(i), axis_set.interval->first);
            set_axis(extents.hi, static_cast<int>(i), axis_set.interval->second);
        }
        s.dimension_system = ds->name;
        if (const SpecificationSystem* ss = kb_.specification_for_dimension(ds->name))
            if (!ss->inner_content.empty()) s.essential_set = ss->inner_content[0].values;
    }
    s.extents = extents;
    s.ensure_time_point(1);

    auto root = std::make_unique<ObjectFrameInstance>();
    root->class_name = cls.name;
    root->id = name;
    root->kind = cls.kind;
    root->attached_at = 1;
    root->region = extents;
    s.root = std::move(root);
    return *s.root;
}

ObjectFrameInstance* Engine::ensure_parent_frame(const ResolvedClass& cls,
                                                 const std::string& instance_name) {
    Situation& s = situation();
    if (s.has_root()) return s.root.get();
    if (!cls.structural_parents.empty()) {
        const std::string& sp_name = cls.structural_parents[0];
        ResolvedClass sp = kb_.resolve_class(sp_name);
        make_root(sp, auto_instance_name(sp_name, ++auto_instance_counter_));
        return s.root.get();
    }
    // The class carries its own frame of reference: the instance becomes the
    // situation's top-level structural parent.
    make_root(cls, instance_name);
    return nullptr;
}

Cuboid Engine::place_child(const ObjectFrameInstance& parent, const ResolvedClass& cls,
                           ObjectFrameInstance& child, const star::RelationshipToParentAst& rel) {
    Situation& s = situation();
    const DimensionSystem& ds = kb_.dimension_system(s.dimension_system);
    if (!parent.region)
        throw Error(ErrorCode::ImpreciseLocation,
                    "parent instance \"" + parent.id + "\" has no concrete region");

    Cuboid region;
    for (std::size_t i = 0; i < ds.spatial.size() && i < 3; ++i) {
        int axis = static_cast<int>(i);
        const std::string& axis_name = ds.spatial[i].name;
        const star::AttrElement* at = find_element(rel.at_locations, axis_name);
        if (!at)
            throw Error(ErrorCode::IncompleteRelToParent,
                        "class \"" + cls.name + "\": AtLocations does not assign \"" +
                            axis_name + "\"");
        std::int64_t lo, hi;
        if (at->value.kind == star::AttrValueAst::Kind::Single &&
            at->value.single.kind == Value::Kind::Integer) {
            lo = hi = at->value.single.int_value;
        } else if (at->value.kind == star::AttrValueAst::Kind::Range && at->value.range &&
                   at->value.range->first.kind == Value::Kind::Integer) {
            lo = at->value.range->first.int_value;
            hi = at->value.range->second.int_value;
            child.located_ranges.push_back(
                {axis_name, ValueRange{at->value.range->first, at->value.range->second}});
        } else {
            throw Error(ErrorCode::NonIntegerLocational,
                        "AtLocations value for \"" + axis_name + "\" must be an integer");
        }
        if (const star::AttrElement* ext = find_element(rel.outer_extents, axis_name)) {
            if (ext->value.kind != star::AttrValueAst::Kind::Single ||
                ext->value.single.kind != Value::Kind::Integer)
                throw Error(ErrorCode::NonIntegerLocational,
                            "extent for \"" + axis_name + "\" must be an integer");
            hi = lo + ext->value.single.int_value - 1;
        }
        // Locations are parent-relative and 1-based per axis.
        std::int64_t base = axis_of(parent.region->lo, axis);
        set_axis(region.lo, axis, base + lo - 1);
        set_axis(region.hi, axis, base + hi - 1);
    }
    if (!parent.region->contains(region)) {
        std::ostringstream os;
        os << "instance \"" << child.id << "\" region (" << region.lo.x << ".." << region.hi.x
           << "," << region.lo.y << ".." << region.hi.y << "," << region.lo.z << ".."
           << region.hi.z << ") exceeds parent \"" << parent.id << "\" extents";
        throw Error(ErrorCode::ParentExtentViolation, os.str());
    }
    return region;
}

ObjectFrameInstance& Engine::attach(const std::string& class_name,
                                    const std::string& instance_name,
                                    const std::optional<std::string>& parent_id,
                                    const star::RelationshipToParentAst& rel, int at_time) {
    ResolvedClass cls = kb_.resolve_class(class_name);
    Situation& s = situation();
    if (s.find_instance(instance_name))
        throw Error(ErrorCode::DuplicateIdentifier,
                    "instance identifier \"" + instance_name + "\" is already in use");

    ObjectFrameInstance* parent = nullptr;
    if (parent_id) {
        parent = s.find_instance(*parent_id);
        if (!parent)
            throw Error(ErrorCode::UnresolvedRef,
                        "parent instance \"" + *parent_id + "\" does not exist");
    } else {
        parent = ensure_parent_frame(cls, instance_name);
        if (!parent) {
            // The instance itself became the situation root.
            s.ensure_time_point(at_time);
            s.root->attached_at = at_time;
            s.root->rel = rel;
            return *s.root;
        }
    }
    s.ensure_time_point(at_time);

    auto child = std::make_unique<ObjectFrameInstance>();
    child->class_name = class_name;
    child->id = instance_name;
    child->kind = cls.kind;
    child->attached_at = at_time;
    child->rel = rel.present ? rel : cls.rel_to_parent;
    if (child->kind == FrameKind::Unit) child->time_point = at_time;

    if (!s.dimension_system.empty() && child->rel.present)
        child->region = place_child(*parent, cls, *child, child->rel);
    else if (!s.dimension_system.empty() && !child->rel.present)
        throw Error(ErrorCode::IncompleteRelToParent,
                    "attaching \"" + instance_name +
                        "\" into a 4D frame requires a RelationshipToParent");

    child->parent = parent;
    parent->children.push_back(std::move(child));
    return *parent->children.back();
}

const AttributeType* Engine::resolve_type_for(const ObjectFrameInstance& inst,
                                              const std::string& type_ref) const {
    if (kb_.find_class(inst.class_name)) {
        auto it = class_cache_.find(inst.class_name);
        if (it == class_cache_.end())
            it = class_cache_.emplace(inst.class_name, kb_.resolve_class(inst.class_name)).first;
        if (const AttributeType* t = it->second.find_attribute_type(type_ref)) return t;
    }
    return kb_.find_attribute_type(type_ref);
}

void Engine::assert_cluster(const std::string& instance_name,
                            const std::vector<star::AttrElement>& cluster,
                            ValidationReport& report) {
    Situation& s = situation();
    ObjectFrameInstance* inst = s.find_instance(instance_name);
    if (!inst) {
        report.add(Severity::Error, instance_name, "UnresolvedRef",
                   "instance \"" + instance_name + "\" does not exist");
        return;
    }
    std::vector<Attribute> attrs;
    for (const auto& e : cluster) attrs.push_back({e.type_ref, attr_value_from_ast(e.value)});

    std::size_t before = report.error_count();
    TwoPartAttributeCluster parts;
    try {
        ValidationReport local = check_two_part_cluster(
            attrs, [&](const std::string& ref) { return resolve_type_for(*inst, ref); }, &parts);
        for (auto& f : local.findings) report.findings.push_back(std::move(f));
    } catch (const Error& e) {
        report.add(Severity::Error, instance_name, to_string(e.code()), e.what());
        return;
    }
    if (report.error_count() > before) return;
    for (const auto& a : attrs) inst->set_attribute(a.type_ref, a.value);
}

void Engine::infuse_unit(ObjectFrameInstance& inst, const Value& v) {
    if (inst.kind != FrameKind::Unit)
        throw Error(ErrorCode::KindMismatch,
                    "instance \"" + inst.id + "\" is not a unit object frame");
    if (!inst.region || !(inst.region->lo == inst.region->hi) || !inst.located_ranges.empty())
        throw Error(ErrorCode::ImpreciseLocation,
                    "instance \"" + inst.id + "\" is not at a single concrete cell");
    int t = inst.time_point.value_or(inst.attached_at);
    write_cell(situation(), inst.region->lo, t, v);
}

void Engine::infuse_template(ObjectFrameInstance& inst, const TemplateContent& content,
                             std::int64_t fx, std::int64_t fy, std::int64_t fz, int t) {
    if (fx < 1 || fy < 1 || fz < 1)
        throw Error(ErrorCode::ZeroFactor, "magnification factors must be >= 1");
    if (!inst.region)
        throw Error(ErrorCode::ImpreciseLocation,
                    "instance \"" + inst.id + "\" has no concrete region");
    const Cuboid& r = *inst.region;
    if (content.ex * fx > r.hi.x - r.lo.x + 1 || content.ey * fy > r.hi.y - r.lo.y + 1 ||
        content.ez * fz > r.hi.z - r.lo.z + 1)
        throw Error(ErrorCode::ExtentOverflow, "magnified template \"" + content.name +
                                                   "\" does not fit instance \"" + inst.id +
                                                   "\"");
    Situation& s = situation();
    s.ensure_time_point(t);
    for (const auto& [key, symbol] : content.cells) {
        const auto& [x, y, z] = key;
        for (std::int64_t dx = 0; dx < fx; ++dx)
            for (std::int64_t dy = 0; dy < fy; ++dy)
                for (std::int64_t dz = 0; dz < fz; ++dz) {
                    Coord c{r.lo.x + (x - 1) * fx + dx, r.lo.y + (y - 1) * fy + dy,
                            r.lo.z + (z - 1) * fz + dz};
                    write_cell(s, c, t, Value::enumerated(symbol));
                }
    }
}

void Engine::infuse_shape(ObjectFrameInstance& inst, const ShapePattern& pattern,
                          std::int64_t fx, std::int64_t fy, std::int64_t fz, const Value& fill,
                          int t) {
    if (!inst.region)
        throw Error(ErrorCode::ImpreciseLocation,
                    "instance \"" + inst.id + "\" has no concrete region");
    ShapePattern magnified = magnify_shape_pattern(pattern, fx, fy, fz);
    const Cuboid& r = *inst.region;
    if (magnified.ex > r.hi.x - r.lo.x + 1 || magnified.ey > r.hi.y - r.lo.y + 1 ||
        magnified.ez > r.hi.z - r.lo.z + 1)
        throw Error(ErrorCode::ExtentOverflow,
                    "magnified shape pattern does not fit instance \"" + inst.id + "\"");
    Situation& s = situation();
    s.ensure_time_point(t);
    for (const auto& [key, cat] : magnified.cells) {
        const auto& [x, y, z] = key;
        Coord c{r.lo.x + x - 1, r.lo.y + y - 1, r.lo.z + z - 1};
        write_cell(s, c, t, cat == ValueCategory::NonSpaceValue ? fill : space_default());
    }
}

void Engine::populate(ObjectFrameInstance& inst, const star::PopulatedObjectClassDef& poc) {
    struct Write {
        ObjectFrameInstance* target;
        std::string type_ref;
        AttrValue value;
    };
    std::vector<Write> writes;
    for (const auto& assign : poc.assignments) {
        ObjectFrameInstance* target = &inst;
        if (!assign.path.empty()) {
            std::istringstream path(assign.path);
            std::string step;
            while (std::getline(path, step, '.')) {
                ObjectFrameInstance* next = nullptr;
                for (auto& child : target->children) {
                    if (child->id == step || child->class_name == step) {
                        next = child.get();
                        break;
                    }
                }
                if (!next)
                    throw Error(ErrorCode::PathUnresolved,
                                "component path \"" + assign.path + "\" does not resolve under \"" +
                                    inst.id + "\"");
                target = next;
            }
        }
        const AttributeType* t = resolve_type_for(*target, assign.type_ref);
        if (!t)
            throw Error(ErrorCode::UnresolvedType,
                        "attribute type \"" + assign.type_ref + "\" does not resolve");
        AttrValue v = attr_value_from_ast(assign.value);
        if (v.kind == AttrValue::Kind::Single && !value_in_set(t->values, v.single))
            throw Error(ErrorCode::OutOfSet, "value " + v.single.display() +
                                                 " is not in the set of \"" + t->name + "\"");
        writes.push_back({target, assign.type_ref, std::move(v)});
    }
    // Nothing above wrote; apply the whole population atomically.
    for (auto& w : writes) w.target->set_attribute(w.type_ref, std::move(w.value));
}

ValidationReport Engine::run_statements(const std::vector<star::Item>& items) {
    ValidationReport report;
    for (const auto& item : items) {
        if (const auto* a = std::get_if<star::AttachStmt>(&item)) {
            try {
                attach(a->class_name, a->instance_name, a->rel_to_parent.parent_ref,
                       a->rel_to_parent);
            } catch (const Error& e) {
                report.add(Severity::Error, a->instance_name, to_string(e.code()), e.what());
            }
        } else if (const auto* as = std::get_if<star::AssertStmt>(&item)) {
            assert_cluster(as->instance_name, as->cluster, report);
        }
    }
    return report;
}

} // namespace ross
