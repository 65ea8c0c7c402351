#include "ross/infopedia.hpp"

#include <algorithm>

namespace ross {

namespace {

template <typename Map>
const typename Map::mapped_type* find_in(const Map& m, const std::string& name) {
    auto it = m.find(name);
    return it == m.end() ? nullptr : &it->second;
}

template <typename Map>
const typename Map::mapped_type& get_or_throw(const Map& m, const std::string& name,
                                              const char* what) {
    auto it = m.find(name);
    if (it == m.end())
        throw Error(ErrorCode::UnresolvedRef, std::string(what) + " \"" + name + "\" is not registered");
    return it->second;
}

} // namespace

const AttributeType* ResolvedClass::find_attribute_type(const std::string& type_name) const {
    for (const auto& t : attribute_types)
        if (t.name == type_name) return &t;
    return nullptr;
}

const AttributeValueSet* Infopedia::find_value_set(const std::string& name) const {
    return find_in(value_sets_, name);
}
const AttributeValueSet& Infopedia::value_set(const std::string& name) const {
    return get_or_throw(value_sets_, name, "value set");
}
std::optional<std::int64_t> Infopedia::find_constant(const std::string& name) const {
    auto it = constants_.find(name);
    if (it == constants_.end()) return std::nullopt;
    return it->second;
}
const AttributeType* Infopedia::find_attribute_type(const std::string& name) const {
    return find_in(attribute_types_, name);
}
const AttributeType& Infopedia::attribute_type(const std::string& name) const {
    return get_or_throw(attribute_types_, name, "attribute type");
}
const DimensionSystem* Infopedia::find_dimension_system(const std::string& name) const {
    return find_in(dimension_systems_, name);
}
const DimensionSystem& Infopedia::dimension_system(const std::string& name) const {
    return get_or_throw(dimension_systems_, name, "dimension system");
}
const SpecificationSystem* Infopedia::find_specification_system(const std::string& name) const {
    return find_in(specification_systems_, name);
}
const SpecificationSystem* Infopedia::specification_for_dimension(const std::string& ds) const {
    for (const auto& [name, ss] : specification_systems_)
        if (ss.dimension_system == ds) return &ss;
    return nullptr;
}
const Mapping* Infopedia::find_mapping(const std::string& name) const {
    return find_in(mappings_, name);
}
const Mapping& Infopedia::mapping(const std::string& name) const {
    return get_or_throw(mappings_, name, "mapping");
}
const star::ObjectFrameClassDef* Infopedia::find_class(const std::string& name) const {
    return find_in(classes_, name);
}
const ShapePattern* Infopedia::find_shape_pattern(const std::string& name) const {
    return find_in(shape_patterns_, name);
}
const ShapePattern& Infopedia::shape_pattern(const std::string& name) const {
    return get_or_throw(shape_patterns_, name, "shape pattern");
}
const TemplateContent* Infopedia::find_template(const std::string& name) const {
    return find_in(templates_, name);
}
const star::PopulatedObjectClassDef* Infopedia::find_populated_class(
    const std::string& name) const {
    return find_in(populated_classes_, name);
}
const star::BehaviorClassDef* Infopedia::find_behavior_class(const std::string& name) const {
    return find_in(behavior_classes_, name);
}

std::vector<std::string> Infopedia::class_names() const {
    std::vector<std::string> out;
    for (const auto& [name, def] : classes_) out.push_back(name);
    return out;
}

std::vector<std::string> Infopedia::behavior_class_names() const {
    std::vector<std::string> out;
    for (const auto& [name, def] : behavior_classes_) out.push_back(name);
    return out;
}

void Infopedia::index_dictionary(const std::string& definition, const Dictionary& dict) {
    for (const auto& [lang, words] : dict.entries)
        for (const auto& w : words) word_index_[{lang, w}].insert(definition);
}

std::vector<std::string> Infopedia::lookup_word(const std::string& word,
                                                const std::string& language) const {
    auto it = word_index_.find({language, word});
    if (it == word_index_.end()) return {};
    return {it->second.begin(), it->second.end()};
}

std::optional<std::int64_t> Infopedia::resolve_bound(const star::IntOrRef& b,
                                                     ValidationReport& report,
                                                     const std::string& context) const {
    if (!b.is_ref) return b.value;
    if (auto v = find_constant(b.ref)) return v;
    report.add(Severity::Error, context, "UnresolvedRef",
               "integer constant \"" + b.ref + "\" is not declared");
    return std::nullopt;
}

std::optional<AttributeValueSet> Infopedia::build_value_set(const std::string& name,
                                                            const star::ValueSetBody& body,
                                                            ValidationReport& report,
                                                            const std::string& context) const {
    AttributeValueSet s;
    s.name = name;
    s.base = body.base_ref;
    if (body.base_ref && !find_value_set(*body.base_ref))
        report.add(Severity::Error, context, "UnresolvedRef",
                   "base value set \"" + *body.base_ref + "\" is not registered");
    if (body.usage_raw) {
        if (auto u = usage_from_name(*body.usage_raw))
            s.usage = *u;
        else
            report.add(Severity::Error, context, "UnknownUsage",
                       "unknown usage tag \"" + *body.usage_raw + "\"");
    } else if (body.base_ref) {
        if (const AttributeValueSet* base = find_value_set(*body.base_ref)) s.usage = base->usage;
    }
    if (body.interval) {
        auto lo = resolve_bound(body.interval->first, report, context);
        auto hi = resolve_bound(body.interval->second, report, context);
        if (!lo || !hi) return std::nullopt;
        s.interval = {*lo, *hi};
    }
    for (const auto& m : body.members) {
        EnumMember member;
        member.symbol = m.symbol;
        member.dictionary = m.dictionary;
        if (m.category_raw) {
            if (auto c = category_from_name(*m.category_raw))
                member.category = c;
            else
                report.add(Severity::Error, context, "UnknownCategory",
                           "unknown value category \"" + *m.category_raw + "\" on member \"" +
                               m.symbol + "\"");
        }
        s.members.push_back(std::move(member));
    }
    try {
        s.validate();
    } catch (const Error& e) {
        report.add(Severity::Error, context, to_string(e.code()), e.what());
        return std::nullopt;
    }
    return s;
}

std::optional<AttributeType> Infopedia::build_attribute_type(const star::AttributeTypeDef& def,
                                                             ValidationReport& report,
                                                             const std::string& context) const {
    AttributeType t;
    t.name = def.name;
    if (def.super_raw) {
        if (auto u = usage_from_name(*def.super_raw))
            t.super_type = *u;
        else
            report.add(Severity::Error, context, "UnknownSuperType",
                       "unknown super type tag \"" + *def.super_raw + "\"");
    }
    if (def.values_ref) {
        const AttributeValueSet* named = find_value_set(*def.values_ref);
        if (!named) {
            report.add(Severity::Error, context, "UnresolvedRef",
                       "value set \"" + *def.values_ref + "\" is not registered");
            return std::nullopt;
        }
        t.values = *named;
    } else if (def.inline_values) {
        auto built = build_value_set(def.name + ".Values", *def.inline_values, report, context);
        if (!built) return std::nullopt;
        t.values = std::move(*built);
        if (!def.super_raw && def.inline_values->usage_raw) t.super_type = t.values.usage;
    }
    const std::optional<std::string>* usage_tag =
        def.inline_values ? &def.inline_values->usage_raw : nullptr;
    if (def.super_raw && usage_tag && *usage_tag) {
        auto declared = usage_from_name(**usage_tag);
        if (declared && *declared != t.super_type)
            report.add(Severity::Error, context, "SuperTypeMismatch",
                       "value-set usage tag contradicts the attribute type's super type");
    }
    t.values.usage = t.super_type;
    return t;
}

ValidationReport Infopedia::register_ast(const star::StarAst& ast) {
    ValidationReport report;

    // Constants first: interval bounds may reference them regardless of
    // declaration order within one source.
    for (const auto& item : ast.items) {
        if (const auto* c = std::get_if<star::ConstantDecl>(&item)) {
            if (constants_.count(c->name)) {
                report.add(Severity::Error, c->name, "DuplicateName",
                           "integer constant \"" + c->name + "\" declared twice");
                continue;
            }
            constants_[c->name] = c->value;
        }
    }

    for (const auto& item : ast.items) {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, star::ConstantDecl>) {
                    // handled above
                } else if constexpr (std::is_same_v<T, star::ValueSetDef>) {
                    if (value_sets_.count(node.name)) {
                        report.add(Severity::Error, node.name, "DuplicateName",
                                   "value set \"" + node.name + "\" defined twice");
                        return;
                    }
                    auto built = build_value_set(node.name, node.body, report, node.name);
                    if (!built) return;
                    for (const auto& m : built->members)
                        index_dictionary(node.name + "." + m.symbol, m.dictionary);
                    value_sets_.emplace(node.name, std::move(*built));
                } else if constexpr (std::is_same_v<T, star::AttributeTypeDef>) {
                    if (attribute_types_.count(node.name)) {
                        report.add(Severity::Error, node.name, "DuplicateName",
                                   "attribute type \"" + node.name + "\" defined twice");
                        return;
                    }
                    auto built = build_attribute_type(node, report, node.name);
                    if (!built) return;
                    for (const auto& m : built->values.members)
                        index_dictionary(node.name + "." + m.symbol, m.dictionary);
                    attribute_types_.emplace(node.name, std::move(*built));
                } else if constexpr (std::is_same_v<T, star::DimensionSystemDef>) {
                    if (dimension_systems_.count(node.name)) {
                        report.add(Severity::Error, node.name, "DuplicateName",
                                   "dimension system \"" + node.name + "\" defined twice");
                        return;
                    }
                    DimensionSystem ds;
                    ds.name = node.name;
                    auto build_axis = [&](const star::AttributeTypeDef& d,
                                          std::vector<AttributeType>& into) {
                        auto built = build_attribute_type(d, report, node.name + "." + d.name);
                        if (!built) return;
                        built->super_type = Usage::Locational;
                        built->values.usage = Usage::Locational;
                        if (built->values.is_enumerated())
                            report.add(Severity::Error, node.name + "." + d.name,
                                       "NonIntegerLocational",
                                       "dimension-system attribute types need integer value sets");
                        into.push_back(std::move(*built));
                        // Axis types are resolvable on their own so assert
                        // clusters can reference them by name.
                        if (!attribute_types_.count(into.back().name))
                            attribute_types_.emplace(into.back().name, into.back());
                    };
                    for (const auto& d : node.spatial) build_axis(d, ds.spatial);
                    for (const auto& d : node.temporal) build_axis(d, ds.temporal);
                    dimension_systems_.emplace(node.name, std::move(ds));
                } else if constexpr (std::is_same_v<T, star::SpecificationSystemDef>) {
                    if (specification_systems_.count(node.name)) {
                        report.add(Severity::Error, node.name, "DuplicateName",
                                   "specification system \"" + node.name + "\" defined twice");
                        return;
                    }
                    SpecificationSystem ss;
                    ss.name = node.name;
                    ss.dimension_system = node.dimension_system_ref;
                    if (!find_dimension_system(node.dimension_system_ref))
                        report.add(Severity::Error, node.name, "UnresolvedRef",
                                   "dimension system \"" + node.dimension_system_ref +
                                       "\" is not registered");
                    for (const auto& [entry_name, type_ref] : node.inner_content) {
                        const AttributeType* t = find_attribute_type(type_ref);
                        if (!t) {
                            report.add(Severity::Error, node.name + "." + entry_name,
                                       "UnresolvedRef",
                                       "attribute type \"" + type_ref + "\" is not registered");
                            continue;
                        }
                        if (t->super_type != Usage::Qualitative)
                            report.add(Severity::Error, node.name + "." + entry_name,
                                       "SuperTypeMismatch",
                                       "inner-content attribute types must be qualitative");
                        ss.inner_content.push_back(*t);
                    }
                    if (ss.inner_content.empty())
                        report.add(Severity::Error, node.name, "EmptyInnerContent",
                                   "specification system has no usable inner-content type");
                    specification_systems_.emplace(node.name, std::move(ss));
                } else if constexpr (std::is_same_v<T, star::MappingDef>) {
                    if (mappings_.count(node.name)) {
                        report.add(Severity::Error, node.name, "DuplicateName",
                                   "mapping \"" + node.name + "\" defined twice");
                        return;
                    }
                    if (!find_value_set(node.source))
                        report.add(Severity::Warning, node.name, "UnresolvedRef",
                                   "source value set \"" + node.source + "\" is not registered");
                    if (!find_value_set(node.dest))
                        report.add(Severity::Warning, node.name, "UnresolvedRef",
                                   "destination value set \"" + node.dest +
                                       "\" is not registered");
                    Mapping m;
                    m.name = node.name;
                    m.source = node.source;
                    m.dest = node.dest;
                    m.a = node.a;
                    m.b = node.b;
                    mappings_.emplace(node.name, std::move(m));
                } else if constexpr (std::is_same_v<T, star::ObjectFrameClassDef>) {
                    register_class_body(node, report);
                } else if constexpr (std::is_same_v<T, star::TemplateClassDef>) {
                    if (templates_.count(node.name)) {
                        report.add(Severity::Error, node.name, "DuplicateName",
                                   "template class \"" + node.name + "\" defined twice");
                        return;
                    }
                    TemplateContent tc;
                    tc.name = node.name;
                    tc.target_class = node.target_class;
                    for (const auto& c : node.cells) tc.cells[{c.x, c.y, c.z}] = c.value;
                    for (const auto& ins : node.instructions) {
                        if (ins.kind == star::DrawInstructionAst::Kind::SetCell) {
                            tc.cells[{ins.x1, ins.y1, ins.z1}] = ins.value;
                        } else {
                            for (std::int64_t x = ins.x1; x <= ins.x2; ++x)
                                for (std::int64_t y = ins.y1; y <= ins.y2; ++y)
                                    for (std::int64_t z = ins.z1; z <= ins.z2; ++z)
                                        tc.cells[{x, y, z}] = ins.value;
                        }
                    }
                    for (const auto& [key, value] : tc.cells) {
                        (void)value;
                        const auto& [x, y, z] = key;
                        if (x < 1 || y < 1 || z < 1) {
                            report.add(Severity::Error, node.name, "OutOfExtent",
                                       "template cells must have coordinates >= 1");
                            return;
                        }
                        tc.ex = std::max(tc.ex, x);
                        tc.ey = std::max(tc.ey, y);
                        tc.ez = std::max(tc.ez, z);
                    }
                    templates_.emplace(node.name, std::move(tc));
                } else if constexpr (std::is_same_v<T, star::ShapePatternDef>) {
                    if (shape_patterns_.count(node.name)) {
                        report.add(Severity::Error, node.name, "DuplicateName",
                                   "shape pattern \"" + node.name + "\" defined twice");
                        return;
                    }
                    ShapePattern sp;
                    sp.ex = node.extent_x;
                    sp.ey = node.extent_y;
                    sp.ez = node.extent_z;
                    bool bad = false;
                    for (const auto& c : node.cells) {
                        auto cat = category_from_name(c.value);
                        if (!cat) {
                            report.add(Severity::Error, node.name, "UnknownCategory",
                                       "shape pattern cells hold value categories, got \"" +
                                           c.value + "\"");
                            bad = true;
                            continue;
                        }
                        sp.cells[{c.x, c.y, c.z}] = *cat;
                    }
                    if (bad) return;
                    try {
                        sp.validate();
                    } catch (const Error& e) {
                        report.add(Severity::Error, node.name, to_string(e.code()), e.what());
                        return;
                    }
                    shape_patterns_.emplace(node.name, std::move(sp));
                } else if constexpr (std::is_same_v<T, star::PopulatedObjectClassDef>) {
                    if (populated_classes_.count(node.name)) {
                        report.add(Severity::Error, node.name, "DuplicateName",
                                   "populated object class \"" + node.name + "\" defined twice");
                        return;
                    }
                    populated_classes_.emplace(node.name, node);
                } else if constexpr (std::is_same_v<T, star::BehaviorClassDef>) {
                    if (behavior_classes_.count(node.name)) {
                        report.add(Severity::Error, node.name, "DuplicateName",
                                   "behavior class \"" + node.name + "\" defined twice");
                        return;
                    }
                    behavior_classes_.emplace(node.name, node);
                } else if constexpr (std::is_same_v<T, star::AttachStmt> ||
                                     std::is_same_v<T, star::AssertStmt>) {
                    // Statements are script content, not definitions; the
                    // engine executes them against a repository.
                }
            },
            item);
    }
    return report;
}

void Infopedia::register_class_body(const star::ObjectFrameClassDef& def,
                                    ValidationReport& report) {
    if (classes_.count(def.name)) {
        report.add(Severity::Error, def.name, "DuplicateName",
                   "object frame class \"" + def.name + "\" defined twice");
        return;
    }
    for (const auto& ds : def.inline_dimension_systems) {
        if (dimension_systems_.count(ds.name)) continue;  // shared inline definition
        star::StarAst one;
        one.items.emplace_back(ds);
        ValidationReport sub = register_ast(one);
        for (auto& f : sub.findings) report.findings.push_back(std::move(f));
    }
    for (const auto& entry : def.structure)
        for (const auto& inner : entry.inline_class) register_class_body(inner, report);
    index_dictionary(def.name, def.dictionary);
    index_dictionary(def.name, def.dictionary_prior_word);
    classes_.emplace(def.name, def);
}

namespace {

// Depth-first pre-order over HigherClasses; the visiting set catches cycles.
void linearize(const Infopedia& kb, const std::string& name, std::vector<std::string>& order,
               std::vector<std::string>& path) {
    if (std::find(path.begin(), path.end(), name) != path.end())
        throw Error(ErrorCode::InheritanceCycle,
                    "inheritance cycle through class \"" + name + "\"");
    if (std::find(order.begin(), order.end(), name) != order.end()) return;
    const star::ObjectFrameClassDef* def = kb.find_class(name);
    if (!def)
        throw Error(ErrorCode::UnresolvedRef, "class \"" + name + "\" is not registered");
    order.push_back(name);
    path.push_back(name);
    for (const auto& base : def->higher_classes) linearize(kb, base, order, path);
    path.pop_back();
}

} // namespace

ResolvedClass Infopedia::resolve_class(const std::string& name) const {
    std::vector<std::string> order, path;
    linearize(*this, name, order, path);

    ResolvedClass out;
    out.name = name;
    out.ancestry = order;

    std::set<std::string> seen_types, seen_attrs, seen_components;
    std::optional<std::string> frame_kind_raw;
    for (const auto& cls : order) {
        const star::ObjectFrameClassDef& def = classes_.at(cls);
        if (out.dictionary.empty() && !def.dictionary.empty()) out.dictionary = def.dictionary;
        for (const auto& td : def.attribute_types) {
            if (!seen_types.insert(td.name).second) continue;
            ValidationReport local;
            auto built = build_attribute_type(td, local, cls + "." + td.name);
            if (!built)
                throw Error(ErrorCode::UnresolvedType,
                            "attribute type \"" + td.name + "\" of class \"" + cls +
                                "\" does not resolve: " + local.to_text());
            out.attribute_types.push_back(std::move(*built));
            out.provenance[td.name] = cls;
        }
        for (const auto& ae : def.attributes) {
            if (!seen_attrs.insert(ae.name).second) continue;
            out.attributes.push_back(ae);
            out.provenance[ae.name] = cls;
        }
        for (const auto& ds : def.inline_dimension_systems) {
            if (std::find(out.dimension_systems.begin(), out.dimension_systems.end(), ds.name) ==
                out.dimension_systems.end()) {
                out.dimension_systems.push_back(ds.name);
                out.provenance[ds.name] = cls;
            }
        }
        for (const auto& ref : def.dimension_system_refs) {
            if (!find_dimension_system(ref))
                throw Error(ErrorCode::UnresolvedRef, "dimension system \"" + ref +
                                                          "\" of class \"" + cls +
                                                          "\" is not registered");
            if (std::find(out.dimension_systems.begin(), out.dimension_systems.end(), ref) ==
                out.dimension_systems.end()) {
                out.dimension_systems.push_back(ref);
                out.provenance[ref] = cls;
            }
        }
        for (const auto& entry : def.structure) {
            if (!seen_components.insert(entry.component_name).second) continue;
            out.structure.push_back(entry);
            out.provenance[entry.component_name] = cls;
        }
        for (const auto& b : def.behavior_classes)
            if (std::find(out.behavior_classes.begin(), out.behavior_classes.end(), b) ==
                out.behavior_classes.end())
                out.behavior_classes.push_back(b);
        for (const auto& t : def.templates)
            if (std::find(out.templates.begin(), out.templates.end(), t) == out.templates.end())
                out.templates.push_back(t);
        if (out.structural_parents.empty()) {
            if (!def.structural_parent_classes_typical_immediate.empty())
                out.structural_parents = def.structural_parent_classes_typical_immediate;
            else if (!def.structural_parent_classes_base.empty())
                out.structural_parents = def.structural_parent_classes_base;
        }
        if (!out.rel_to_parent.present && def.rel_to_parent.present)
            out.rel_to_parent = def.rel_to_parent;
        if (!frame_kind_raw && def.frame_kind_raw) frame_kind_raw = def.frame_kind_raw;
    }

    if (frame_kind_raw) {
        auto k = frame_kind_from_name(*frame_kind_raw);
        if (!k)
            throw Error(ErrorCode::KindMismatch,
                        "unknown frame kind \"" + *frame_kind_raw + "\" on class \"" + name +
                            "\"");
        out.kind = *k;
    } else if (!out.structure.empty()) {
        out.kind = FrameKind::Aggregate;
    } else if (!out.dimension_systems.empty() && out.structural_parents.empty()) {
        out.kind = FrameKind::Range;
    } else {
        out.kind = FrameKind::Unit;
    }

    bool has_locational_type =
        std::any_of(out.attribute_types.begin(), out.attribute_types.end(),
                    [](const AttributeType& t) { return t.super_type == Usage::Locational; });
    if (out.dimension_systems.empty() && out.structural_parents.empty() && !has_locational_type)
        throw Error(ErrorCode::NotInstantiable,
                    "class \"" + name +
                        "\" carries no dimension-system information and names no structural "
                        "parent anywhere in its ancestry");
    return out;
}

ValidationReport Infopedia::validate_kb() const {
    ValidationReport report;

    for (const auto& [name, set] : value_sets_) {
        try {
            set.validate();
        } catch (const Error& e) {
            report.add(Severity::Error, name, to_string(e.code()), e.what());
        }
        if (set.base && !find_value_set(*set.base))
            report.add(Severity::Error, name, "UnresolvedRef",
                       "base value set \"" + *set.base + "\" is not registered");
    }

    for (const auto& [name, type] : attribute_types_) {
        try {
            type.values.validate();
        } catch (const Error& e) {
            report.add(Severity::Error, name, to_string(e.code()), e.what());
        }
    }

    for (const auto& [name, ss] : specification_systems_) {
        if (!find_dimension_system(ss.dimension_system))
            report.add(Severity::Error, name, "UnresolvedRef",
                       "dimension system \"" + ss.dimension_system + "\" is not registered");
        if (ss.inner_content.empty())
            report.add(Severity::Error, name, "EmptyInnerContent",
                       "specification system has no inner-content type");
    }

    for (const auto& [name, m] : mappings_) {
        if (!find_value_set(m.source))
            report.add(Severity::Warning, name, "UnresolvedRef",
                       "source value set \"" + m.source + "\" is not registered");
        if (!find_value_set(m.dest))
            report.add(Severity::Warning, name, "UnresolvedRef",
                       "destination value set \"" + m.dest + "\" is not registered");
    }

    for (const auto& [name, sp] : shape_patterns_) {
        try {
            sp.validate();
        } catch (const Error& e) {
            report.add(Severity::Error, name, to_string(e.code()), e.what());
        }
    }

    for (const auto& [name, def] : classes_) {
        ResolvedClass resolved;
        try {
            resolved = resolve_class(name);
        } catch (const Error& e) {
            report.add(Severity::Error, name, to_string(e.code()), e.what());
            continue;
        }
        auto resolve_type = [&](const std::string& ref) -> const AttributeType* {
            if (const AttributeType* t = resolved.find_attribute_type(ref)) return t;
            return find_attribute_type(ref);
        };
        for (const auto& ae : resolved.attributes) {
            const std::string path = name + "." + ae.name;
            const AttributeType* t = resolve_type(ae.attr.type_ref);
            if (!t) {
                report.add(Severity::Error, path, "UnresolvedType",
                           "attribute type \"" + ae.attr.type_ref + "\" does not resolve");
                continue;
            }
            const auto& v = ae.attr.value;
            try {
                if (v.kind == star::AttrValueAst::Kind::Single) {
                    if (!value_in_set(t->values, v.single))
                        report.add(Severity::Error, path, "OutOfSet",
                                   "value " + v.single.display() + " is not in the set of \"" +
                                       t->name + "\"");
                } else if (v.kind == star::AttrValueAst::Kind::Range && v.range) {
                    if (!value_in_set(t->values, v.range->first) ||
                        !value_in_set(t->values, v.range->second))
                        report.add(Severity::Error, path, "OutOfSet",
                                   "range endpoint outside the set of \"" + t->name + "\"");
                } else if (v.kind == star::AttrValueAst::Kind::TemplateRef) {
                    if (!find_template(v.ref_name) && !find_shape_pattern(v.ref_name))
                        report.add(Severity::Error, path, "UnresolvedRef",
                                   "template \"" + v.ref_name + "\" is not registered");
                } else if (v.kind == star::AttrValueAst::Kind::FunctionRef) {
                    if (!find_mapping(v.ref_name))
                        report.add(Severity::Error, path, "UnresolvedRef",
                                   "mapping \"" + v.ref_name + "\" is not registered");
                }
            } catch (const Error& e) {
                report.add(Severity::Error, path, to_string(e.code()), e.what());
            }
        }
        for (const auto& entry : resolved.structure) {
            std::string ref = entry.class_ref;
            if (ref.empty() && !entry.inline_class.empty()) ref = entry.inline_class[0].name;
            if (!find_class(ref))
                report.add(Severity::Error, name + "." + entry.component_name, "UnresolvedRef",
                           "component class \"" + ref + "\" is not registered");
        }
        for (const auto& b : resolved.behavior_classes)
            if (!find_behavior_class(b))
                report.add(Severity::Error, name, "UnresolvedRef",
                           "behavior class \"" + b + "\" is not registered");
        for (const auto& sp : resolved.structural_parents)
            if (!find_class(sp))
                report.add(Severity::Error, name, "UnresolvedRef",
                           "structural parent class \"" + sp + "\" is not registered");
        for (const auto& t : resolved.templates)
            if (!find_template(t) && !find_shape_pattern(t))
                report.add(Severity::Error, name, "UnresolvedRef",
                           "template \"" + t + "\" is not registered");
    }

    for (const auto& [name, poc] : populated_classes_) {
        if (!find_class(poc.target_class))
            report.add(Severity::Error, name, "UnresolvedRef",
                       "target class \"" + poc.target_class + "\" is not registered");
    }

    for (const auto& [name, bc] : behavior_classes_) {
        if (!bc.bridge_structural_parent.empty() && !find_class(bc.bridge_structural_parent))
            report.add(Severity::Error, name, "UnresolvedRef",
                       "bridge structural parent \"" + bc.bridge_structural_parent +
                           "\" is not registered");
        auto check_states = [&](const std::vector<star::BehaviorStateAst>& states) {
            for (const auto& s : states)
                if (!s.poc_ref.empty() && !find_populated_class(s.poc_ref))
                    report.add(Severity::Error, name + "." + s.name, "UnresolvedRef",
                               "populated object class \"" + s.poc_ref + "\" is not registered");
        };
        check_states(bc.prior_states);
        check_states(bc.post_states);
    }

    std::sort(report.findings.begin(), report.findings.end(),
              [](const Finding& a, const Finding& b) {
                  return std::tie(a.definition, a.check, a.message) <
                         std::tie(b.definition, b.check, b.message);
              });
    return report;
}

} // namespace ross
