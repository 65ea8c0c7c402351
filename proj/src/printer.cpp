#include "ross/printer.hpp"

#include <cctype>
#include <sstream>

namespace ross::star {

namespace {

class Printer {
public:
    std::string take() { return out_.str(); }

    void item(const Item& it) {
        std::visit([this](const auto& node) { print(node); }, it);
    }

private:
    std::ostringstream out_;
    int indent_ = 0;

    void line(const std::string& text) {
        for (int i = 0; i < indent_; ++i) out_ << "  ";
        out_ << text << "\n";
    }

    static bool plain_identifier(const std::string& s) {
        if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
            return false;
        for (char c : s)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '-'))
                return false;
        return true;
    }

    static std::string quoted(const std::string& s) { return "\"" + s + "\""; }
    static std::string name_token(const std::string& s) {
        return plain_identifier(s) ? s : quoted(s);
    }

    static std::string value_token(const Value& v) {
        if (v.kind == Value::Kind::Integer) return std::to_string(v.int_value);
        return quoted(v.symbol);
    }

    std::string attr_element(const char* elem, const AttrElement& a) {
        std::string s = std::string("<") + elem;
        if (!a.path.empty()) s += " path = " + quoted(a.path);
        if (!a.type_ref.empty()) s += " ref = " + name_token(a.type_ref);
        switch (a.value.kind) {
            case AttrValueAst::Kind::Single:
                s += " val = " + value_token(a.value.single);
                break;
            case AttrValueAst::Kind::Range:
                s += " lo = " + value_token(a.value.range->first) +
                     " hi = " + value_token(a.value.range->second);
                break;
            case AttrValueAst::Kind::TemplateRef:
                s += " template = " + name_token(a.value.ref_name);
                break;
            case AttrValueAst::Kind::FunctionRef:
                s += " func = " + name_token(a.value.ref_name);
                break;
        }
        return s + " />";
    }

    void dictionary_body(const Dictionary& dict) {
        for (const auto& [lang, words] : dict.entries) {
            std::string s = name_token(lang) + " ( {";
            for (std::size_t i = 0; i < words.size(); ++i)
                s += (i ? ", " : " ") + quoted(words[i]);
            s += " } );";
            line(s);
        }
    }

    static std::string int_or_ref(const IntOrRef& v) {
        return v.is_ref ? v.ref : std::to_string(v.value);
    }

    void value_set_body(const ValueSetBody& body) {
        if (body.integer_constant) line("IntegerConstant");
        if (body.base_ref) line("<BaseValueSet ref = " + name_token(*body.base_ref) + " />");
        if (body.usage_raw) line("<SuperTypeUsage val = " + quoted(*body.usage_raw) + " />");
        if (body.interval)
            line("{ " + int_or_ref(body.interval->first) + ", .. " +
                 int_or_ref(body.interval->second) + " }");
        if (!body.members.empty()) {
            line("{");
            ++indent_;
            for (std::size_t i = 0; i < body.members.size(); ++i) {
                const EnumMemberAst& m = body.members[i];
                std::string sep = i + 1 < body.members.size() ? "," : "";
                if (m.category_raw) {
                    line(quoted(m.symbol) + ": Category ( " + *m.category_raw + " );" + sep);
                } else if (!m.dictionary.empty()) {
                    line(quoted(m.symbol) + ": Dictionary");
                    line("(");
                    ++indent_;
                    dictionary_body(m.dictionary);
                    --indent_;
                    line(");" + sep);
                } else {
                    line(quoted(m.symbol) + sep);
                }
            }
            --indent_;
            line("}");
        }
    }

    void print(const ValueSetDef& def) {
        line("ValueSet " + quoted(def.name));
        line("(");
        ++indent_;
        value_set_body(def.body);
        --indent_;
        line(");");
    }

    void print(const ConstantDecl& decl) {
        line("Integer " + decl.name + " = " + std::to_string(decl.value) + ";");
    }

    void attribute_type(const AttributeTypeDef& def) {
        line("AttributeType " + quoted(def.name));
        line("(");
        ++indent_;
        if (def.super_raw) line("<SuperType val = " + quoted(*def.super_raw) + " />");
        if (def.values_ref) line("<Values ref = " + name_token(*def.values_ref) + " />");
        if (def.inline_values) {
            line(quoted("Values"));
            line("(");
            ++indent_;
            value_set_body(*def.inline_values);
            --indent_;
            line(");");
        }
        --indent_;
        line(");");
    }

    void print(const AttributeTypeDef& def) { attribute_type(def); }

    void print(const MappingDef& def) {
        line("Mapping " + quoted(def.name));
        line("(");
        ++indent_;
        line("<Source ref = " + name_token(def.source) + " />");
        line("<Dest ref = " + name_token(def.dest) + " />");
        std::string expr = def.expr_text;
        if (expr.empty()) {
            expr = "(x$ * " + to_string(def.a);
            if (def.b != Rational(0)) {
                expr += def.b < Rational(0) ? " - " : " + ";
                Rational mag = def.b < Rational(0) ? -def.b : def.b;
                expr += to_string(mag);
            }
            expr += ")";
        }
        line("<Function expr = " + expr + " />");
        --indent_;
        line(");");
    }

    void print(const DimensionSystemDef& def) {
        line("DimensionSystem " + quoted(def.name));
        line("(");
        ++indent_;
        for (int part = 0; part < 2; ++part) {
            const auto& types = part == 0 ? def.spatial : def.temporal;
            if (types.empty()) continue;
            line(part == 0 ? "SpatialAttributeTypes" : "TemporalAttributeTypes");
            line("(");
            ++indent_;
            for (const auto& t : types) attribute_type(t);
            --indent_;
            line(");");
        }
        --indent_;
        line(");");
    }

    void print(const SpecificationSystemDef& def) {
        line("SpecificationSystem " + quoted(def.name));
        line("(");
        ++indent_;
        line("DimensionSystem " + quoted(def.dimension_section_name));
        line("  (" + def.dimension_system_ref + ");");
        line("InnerContent");
        line("(");
        ++indent_;
        line("QualityAttributeTypes");
        line("(");
        ++indent_;
        for (const auto& [name, ref] : def.inner_content) {
            line(quoted(name));
            line("(" + ref + ");");
        }
        --indent_;
        line(");");
        --indent_;
        line(");");
        --indent_;
        line(");");
    }

    void rel_to_parent(const RelationshipToParentAst& rel) {
        line("RelationshipToParent");
        line("(");
        ++indent_;
        if (rel.parent_ref) line("<Parent ref = " + name_token(*rel.parent_ref) + " />");
        attr_section("AtLocations", "At", rel.at_locations);
        attr_section("OrientationSpecifiers", "Orientation", rel.orientation_specifiers);
        attr_section("OuterDimensionSystemExtents", "Extent", rel.outer_extents);
        --indent_;
        line(");");
    }

    void attr_section(const char* section, const char* elem,
                      const std::vector<AttrElement>& attrs) {
        if (attrs.empty()) {
            line(std::string(section) + " ();");
            return;
        }
        line(section);
        line("(");
        ++indent_;
        for (std::size_t i = 0; i < attrs.size(); ++i)
            line(attr_element(elem, attrs[i]) + (i + 1 < attrs.size() ? "," : ""));
        --indent_;
        line(");");
    }

    void name_list_section(const char* section, const std::vector<std::string>& names) {
        std::string s = std::string(section) + " ( {";
        for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ", " : " ") + quoted(names[i]);
        s += " } );";
        line(s);
    }

    void print(const ObjectFrameClassDef& def) {
        line("ObjectFrameClass " + quoted(def.name));
        line("(");
        ++indent_;
        if (def.mass_substance)
            line(std::string("MassSubstance ( ") + (*def.mass_substance ? "true" : "false") +
                 " );");
        if (!def.dictionary_prior_word.empty()) {
            line("DictionaryPriorWord");
            line("(");
            ++indent_;
            dictionary_body(def.dictionary_prior_word);
            --indent_;
            line(");");
        }
        if (!def.dictionary.empty()) {
            line("Dictionary");
            line("(");
            ++indent_;
            dictionary_body(def.dictionary);
            --indent_;
            line(");");
        }
        if (!def.higher_classes.empty()) name_list_section("HigherClasses", def.higher_classes);
        if (!def.structural_parent_classes_base.empty())
            name_list_section("StructuralParentClassesBase", def.structural_parent_classes_base);
        if (!def.structural_parent_classes_typical_immediate.empty())
            name_list_section("StructuralParentClassesTypicalImmediate",
                              def.structural_parent_classes_typical_immediate);
        if (def.rel_to_parent.present) rel_to_parent(def.rel_to_parent);
        if (!def.attribute_types.empty()) {
            line("AttributeTypes");
            line("(");
            ++indent_;
            for (const auto& t : def.attribute_types) attribute_type(t);
            --indent_;
            line(");");
        }
        if (!def.attributes.empty()) {
            line("Attributes");
            line("(");
            ++indent_;
            for (const auto& entry : def.attributes) {
                line("Attribute " + quoted(entry.name));
                line("(");
                ++indent_;
                line(attr_element("Attribute", entry.attr));
                --indent_;
                line(");");
            }
            --indent_;
            line(");");
        }
        if (!def.templates.empty()) name_list_section("Templates", def.templates);
        if (!def.relationship_types.empty()) {
            line("RelationshipTypes");
            line("(");
            ++indent_;
            for (const auto& item : def.relationship_types) {
                if (item.items.empty()) {
                    line(quoted(item.name) + ";");
                } else {
                    std::string s = quoted(item.name) + " ( {";
                    for (std::size_t i = 0; i < item.items.size(); ++i)
                        s += (i ? ", " : " ") + quoted(item.items[i]);
                    s += " } );";
                    line(s);
                }
            }
            --indent_;
            line(");");
        }
        if (!def.dimension_system_refs.empty() || !def.inline_dimension_systems.empty()) {
            line("DimensionSystems");
            line("(");
            ++indent_;
            for (const auto& ref : def.dimension_system_refs) line(ref + ";");
            for (const auto& ds : def.inline_dimension_systems) print(ds);
            --indent_;
            line(");");
        }
        if (!def.structure.empty()) {
            line("Structure");
            line("(");
            ++indent_;
            for (const auto& entry : def.structure) {
                if (!entry.inline_class.empty()) {
                    print(entry.inline_class.front());
                    continue;
                }
                line("Component " + quoted(entry.component_name));
                line("(");
                ++indent_;
                line(entry.class_ref);
                if (entry.rel_to_parent.present) rel_to_parent(entry.rel_to_parent);
                --indent_;
                line(");");
            }
            --indent_;
            line(");");
        }
        if (!def.behavior_classes.empty())
            name_list_section("BehaviorClasses", def.behavior_classes);
        if (def.frame_kind_raw) line("FrameKind ( " + *def.frame_kind_raw + " );");
        --indent_;
        line(");");
    }

    static std::string cell_token(const CellEntryAst& c) {
        return "<Cell x = " + std::to_string(c.x) + " y = " + std::to_string(c.y) +
               " z = " + std::to_string(c.z) + " val = \"" + c.value + "\" />";
    }

    void cells_section(const std::vector<CellEntryAst>& cells) {
        if (cells.empty()) {
            line("Cells ();");
            return;
        }
        line("Cells");
        line("(");
        ++indent_;
        for (std::size_t i = 0; i < cells.size(); ++i)
            line(cell_token(cells[i]) + (i + 1 < cells.size() ? "," : ""));
        --indent_;
        line(");");
    }

    void print(const TemplateClassDef& def) {
        line("TemplateClass " + quoted(def.name));
        line("(");
        ++indent_;
        if (def.target_class) line("TargetClass ( " + *def.target_class + " );");
        if (!def.cells.empty()) cells_section(def.cells);
        if (!def.instructions.empty()) {
            line("Instructions");
            line("(");
            ++indent_;
            for (std::size_t i = 0; i < def.instructions.size(); ++i) {
                const auto& instr = def.instructions[i];
                std::string s;
                if (instr.kind == DrawInstructionAst::Kind::SetCell) {
                    s = "<SetCell x = " + std::to_string(instr.x1) +
                        " y = " + std::to_string(instr.y1) + " z = " + std::to_string(instr.z1);
                } else {
                    s = "<FillCuboid x1 = " + std::to_string(instr.x1) +
                        " y1 = " + std::to_string(instr.y1) +
                        " z1 = " + std::to_string(instr.z1) +
                        " x2 = " + std::to_string(instr.x2) +
                        " y2 = " + std::to_string(instr.y2) +
                        " z2 = " + std::to_string(instr.z2);
                }
                s += " val = \"" + instr.value + "\" />";
                line(s + (i + 1 < def.instructions.size() ? "," : ""));
            }
            --indent_;
            line(");");
        }
        --indent_;
        line(");");
    }

    void print(const ShapePatternDef& def) {
        line("ShapePattern " + quoted(def.name));
        line("(");
        ++indent_;
        line("<Extent x = " + std::to_string(def.extent_x) + " y = " +
             std::to_string(def.extent_y) + " z = " + std::to_string(def.extent_z) + " />");
        cells_section(def.cells);
        --indent_;
        line(");");
    }

    void print(const PopulatedObjectClassDef& def) {
        line("PopulatedObjectClass " + quoted(def.name));
        line("(");
        ++indent_;
        if (!def.target_class.empty()) line("TargetClass ( " + def.target_class + " );");
        attr_section("Assignments", "Assign", def.assignments);
        --indent_;
        line(");");
    }

    void print(const BehaviorClassDef& def) {
        line("BehaviorClass " + quoted(def.name));
        line("(");
        ++indent_;
        if (!def.bridge_structural_parent.empty())
            line("BridgeStructuralParent ( " + def.bridge_structural_parent + " );");
        for (int part = 0; part < 2; ++part) {
            const auto& states = part == 0 ? def.prior_states : def.post_states;
            if (states.empty()) continue;
            line(part == 0 ? "PriorStates" : "PostStates");
            line("(");
            ++indent_;
            for (const auto& state : states) {
                line("State " + quoted(state.name));
                line("(");
                ++indent_;
                if (!state.poc_ref.empty())
                    line("<Ref poc = " + name_token(state.poc_ref) + " />");
                for (const auto& v : state.values) line(attr_element("Attribute", v));
                --indent_;
                line(");");
            }
            --indent_;
            line(");");
        }
        if (!def.binder.empty()) {
            line("Binder");
            line("(");
            ++indent_;
            for (std::size_t i = 0; i < def.binder.size(); ++i) {
                const auto& b = def.binder[i];
                std::string s = "<Bind from = " + b.from + " to = " + b.to;
                if (b.dx) s += " dx = " + std::to_string(b.dx);
                if (b.dy) s += " dy = " + std::to_string(b.dy);
                if (b.dz) s += " dz = " + std::to_string(b.dz);
                if (b.dt) s += " dt = " + std::to_string(b.dt);
                s += " />";
                line(s + (i + 1 < def.binder.size() ? "," : ""));
            }
            --indent_;
            line(");");
        }
        --indent_;
        line(");");
    }

    void print(const AttachStmt& stmt) {
        std::string head =
            "attach " + name_token(stmt.class_name) + " " + name_token(stmt.instance_name);
        if (!stmt.rel_to_parent.present) {
            line(head + ";");
            return;
        }
        line(head);
        line("(");
        ++indent_;
        const auto& rel = stmt.rel_to_parent;
        if (rel.parent_ref) line("<Parent ref = " + name_token(*rel.parent_ref) + " />");
        attr_section("AtLocations", "At", rel.at_locations);
        attr_section("OrientationSpecifiers", "Orientation", rel.orientation_specifiers);
        attr_section("OuterDimensionSystemExtents", "Extent", rel.outer_extents);
        --indent_;
        line(");");
    }

    void print(const AssertStmt& stmt) {
        line("assert " + name_token(stmt.instance_name) + "::");
        line("(");
        ++indent_;
        for (std::size_t i = 0; i < stmt.cluster.size(); ++i)
            line(attr_element("Attribute", stmt.cluster[i]) +
                 (i + 1 < stmt.cluster.size() ? "," : ""));
        --indent_;
        line(");");
    }
};

} // namespace

std::string pretty_print(const Item& item) {
    Printer printer;
    printer.item(item);
    return printer.take();
}

std::string pretty_print(const StarAst& ast) {
    std::string out;
    for (std::size_t i = 0; i < ast.items.size(); ++i) {
        if (i) out += "\n";
        out += pretty_print(ast.items[i]);
    }
    return out;
}

} // namespace ross::star
