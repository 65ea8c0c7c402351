#include "ross/xml_io.hpp"

#include <cctype>
#include <sstream>

namespace ross {

namespace {

// ---- writer ----

std::string value_text(const Value& v) { return v.display(); }

void write_attr_elements(std::ostringstream& os, const std::string& indent,
                         const std::string& elem, const std::vector<star::AttrElement>& elems) {
    for (const auto& e : elems) {
        os << indent << '<' << elem << " ref=\"" << e.type_ref << "\"";
        switch (e.value.kind) {
        case star::AttrValueAst::Kind::Single:
            os << " val=\"" << value_text(e.value.single) << "\"";
            break;
        case star::AttrValueAst::Kind::Range:
            os << " lo=\"" << value_text(e.value.range->first) << "\" hi=\""
               << value_text(e.value.range->second) << "\"";
            break;
        case star::AttrValueAst::Kind::TemplateRef:
            os << " template=\"" << e.value.ref_name << "\"";
            break;
        case star::AttrValueAst::Kind::FunctionRef:
            os << " func=\"" << e.value.ref_name << "\"";
            break;
        }
        os << " />\n";
    }
}

void write_component(std::ostringstream& os, const ObjectFrameInstance& inst,
                     const std::string& indent, int time_ordinal, bool permanent) {
    std::string attr_indent(indent.size() + std::string("<Component").size(), ' ');
    os << indent << "<Component class=\"" << inst.class_name << "\"\n"
       << attr_indent << "name=\"" << inst.id << "\"\n"
       << attr_indent << "type=\"" << to_string(inst.kind) << "\">\n";
    std::string inner = indent + "  ";
    if (inst.rel.present) {
        os << inner << "<RelationshipToParent>\n";
        write_attr_elements(os, inner + "  ", "At", inst.rel.at_locations);
        write_attr_elements(os, inner + "  ", "Orient", inst.rel.orientation_specifiers);
        write_attr_elements(os, inner + "  ", "Extent", inst.rel.outer_extents);
        os << inner << "</RelationshipToParent>\n";
    }
    if (!inst.attributes.empty()) {
        os << inner << "<Attributes>\n";
        std::vector<star::AttrElement> elems;
        for (const auto& a : inst.attributes) {
            star::AttrElement e;
            e.type_ref = a.type_ref;
            switch (a.value.kind) {
            case AttrValue::Kind::Single:
                e.value.kind = star::AttrValueAst::Kind::Single;
                e.value.single = a.value.single;
                break;
            case AttrValue::Kind::Range:
                e.value.kind = star::AttrValueAst::Kind::Range;
                e.value.range = {a.value.range.lo, a.value.range.hi};
                break;
            case AttrValue::Kind::TemplateRef:
                e.value.kind = star::AttrValueAst::Kind::TemplateRef;
                e.value.ref_name = a.value.text;
                break;
            default:
                e.value.kind = star::AttrValueAst::Kind::FunctionRef;
                e.value.ref_name = a.value.text;
                break;
            }
            elems.push_back(std::move(e));
        }
        write_attr_elements(os, inner + "  ", "Attribute", elems);
        os << inner << "</Attributes>\n";
    }
    if (!inst.relationships.empty()) {
        os << inner << "<Relationships>\n";
        for (const auto& r : inst.relationships) {
            os << inner << "  <Relationship type=\"" << r.type << "\" target=\"" << r.target
               << "\"";
            if (r.derived) os << " derived=\"true\"";
            os << " />\n";
        }
        os << inner << "</Relationships>\n";
    }
    os << inner << "<InstanceStructure>\n";
    for (const auto& child : inst.children) {
        bool visible = permanent ? child->attached_at <= time_ordinal
                                 : child->attached_at == time_ordinal;
        if (visible) write_component(os, *child, inner + "  ", time_ordinal, permanent);
    }
    os << inner << "</InstanceStructure>\n";
    os << indent << "</Component>\n";
}

// ---- reader ----

struct XNode {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<XNode> children;

    const std::string* attr(const std::string& key) const {
        for (const auto& [k, v] : attrs)
            if (k == key) return &v;
        return nullptr;
    }
    const std::string& require(const std::string& key) const {
        const std::string* v = attr(key);
        if (!v)
            throw Error(ErrorCode::SchemaViolation,
                        "element <" + name + "> is missing the \"" + key + "\" attribute");
        return *v;
    }
    const XNode* child(const std::string& child_name) const {
        for (const auto& c : children)
            if (c.name == child_name) return &c;
        return nullptr;
    }
};

class XmlReader {
public:
    explicit XmlReader(const std::string& text) : text_(text) {}

    XNode parse_document() {
        skip_misc();
        XNode root = parse_element();
        skip_misc();
        if (pos_ != text_.size())
            throw Error(ErrorCode::SchemaViolation, "trailing content after the root element");
        return root;
    }

private:
    void skip_misc() {
        while (pos_ < text_.size()) {
            if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            } else if (text_.compare(pos_, 4, "<!--") == 0) {
                std::size_t end = text_.find("-->", pos_ + 4);
                if (end == std::string::npos)
                    throw Error(ErrorCode::SchemaViolation, "unterminated XML comment");
                pos_ = end + 3;
            } else if (text_.compare(pos_, 2, "<?") == 0) {
                std::size_t end = text_.find("?>", pos_ + 2);
                if (end == std::string::npos)
                    throw Error(ErrorCode::SchemaViolation, "unterminated XML declaration");
                pos_ = end + 2;
            } else {
                break;
            }
        }
    }

    std::string parse_name() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                text_[pos_] == '-'))
            ++pos_;
        if (start == pos_)
            throw Error(ErrorCode::SchemaViolation,
                        "expected a name at offset " + std::to_string(pos_));
        return text_.substr(start, pos_ - start);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    XNode parse_element() {
        if (pos_ >= text_.size() || text_[pos_] != '<')
            throw Error(ErrorCode::SchemaViolation,
                        "expected an element at offset " + std::to_string(pos_));
        ++pos_;
        XNode node;
        node.name = parse_name();
        for (;;) {
            skip_space();
            if (pos_ >= text_.size())
                throw Error(ErrorCode::SchemaViolation,
                            "unterminated element <" + node.name + ">");
            if (text_.compare(pos_, 2, "/>") == 0) {
                pos_ += 2;
                return node;
            }
            if (text_[pos_] == '>') {
                ++pos_;
                break;
            }
            std::string key = parse_name();
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] != '=')
                throw Error(ErrorCode::SchemaViolation,
                            "attribute \"" + key + "\" of <" + node.name + "> has no value");
            ++pos_;
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] != '"')
                throw Error(ErrorCode::SchemaViolation,
                            "attribute \"" + key + "\" of <" + node.name +
                                "> needs a quoted value");
            ++pos_;
            std::size_t end = text_.find('"', pos_);
            if (end == std::string::npos)
                throw Error(ErrorCode::SchemaViolation,
                            "unterminated attribute value in <" + node.name + ">");
            node.attrs.push_back({key, text_.substr(pos_, end - pos_)});
            pos_ = end + 1;
        }
        // content
        for (;;) {
            skip_misc();
            if (pos_ >= text_.size())
                throw Error(ErrorCode::SchemaViolation, "element <" + node.name +
                                                            "> is never closed");
            if (text_.compare(pos_, 2, "</") == 0) {
                pos_ += 2;
                std::string closing = parse_name();
                if (closing != node.name)
                    throw Error(ErrorCode::SchemaViolation, "mismatched closing tag </" +
                                                                closing + "> for <" + node.name +
                                                                ">");
                skip_space();
                if (pos_ >= text_.size() || text_[pos_] != '>')
                    throw Error(ErrorCode::SchemaViolation,
                                "malformed closing tag for <" + node.name + ">");
                ++pos_;
                return node;
            }
            if (text_[pos_] == '<') {
                node.children.push_back(parse_element());
            } else {
                // Free text is not part of the schema; tolerate and skip it.
                while (pos_ < text_.size() && text_[pos_] != '<') ++pos_;
            }
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

Value value_from_text(const std::string& text) {
    if (!text.empty()) {
        std::size_t i = text[0] == '-' ? 1 : 0;
        bool digits = i < text.size();
        for (; i < text.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
                digits = false;
                break;
            }
        if (digits) return Value::integer(std::stoll(text));
    }
    return Value::enumerated(text);
}

star::AttrElement element_from_node(const XNode& node) {
    star::AttrElement e;
    e.type_ref = node.require("ref");
    if (const std::string* val = node.attr("val")) {
        e.value.kind = star::AttrValueAst::Kind::Single;
        e.value.single = value_from_text(*val);
    } else if (node.attr("lo") && node.attr("hi")) {
        e.value.kind = star::AttrValueAst::Kind::Range;
        e.value.range = {value_from_text(*node.attr("lo")), value_from_text(*node.attr("hi"))};
    } else if (const std::string* t = node.attr("template")) {
        e.value.kind = star::AttrValueAst::Kind::TemplateRef;
        e.value.ref_name = *t;
    } else if (const std::string* f = node.attr("func")) {
        e.value.kind = star::AttrValueAst::Kind::FunctionRef;
        e.value.ref_name = *f;
    } else {
        throw Error(ErrorCode::SchemaViolation,
                    "element <" + node.name + " ref=\"" + e.type_ref + "\"> carries no value");
    }
    return e;
}

AttrValue attr_value_from_node(const star::AttrValueAst& v) {
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
    default: {
        AttrValue out;
        out.kind = AttrValue::Kind::FunctionRef;
        out.text = v.ref_name;
        return out;
    }
    }
}

FrameKind kind_from_attr(const XNode& node) {
    const std::string& text = node.require("type");
    auto k = frame_kind_from_name(text);
    if (!k)
        throw Error(ErrorCode::SchemaViolation,
                    "unknown frame kind \"" + text + "\" on <" + node.name + ">");
    return *k;
}

std::unique_ptr<ObjectFrameInstance> import_component(const XNode& node, int time_ordinal,
                                                      ObjectFrameInstance* parent);

void import_structure(const XNode& structure, ObjectFrameInstance& into, int time_ordinal) {
    for (const auto& child : structure.children) {
        if (child.name != "Component")
            throw Error(ErrorCode::SchemaViolation,
                        "unexpected <" + child.name + "> inside <InstanceStructure>");
        if (ObjectFrameInstance* existing = into.find(child.require("name"))) {
            // Seen at an earlier time point; recurse for late-attached parts.
            if (const XNode* inner = child.child("InstanceStructure"))
                import_structure(*inner, *existing, time_ordinal);
            continue;
        }
        into.children.push_back(import_component(child, time_ordinal, &into));
    }
}

std::unique_ptr<ObjectFrameInstance> import_component(const XNode& node, int time_ordinal,
                                                      ObjectFrameInstance* parent) {
    auto inst = std::make_unique<ObjectFrameInstance>();
    inst->class_name = node.require("class");
    inst->id = node.require("name");
    inst->kind = kind_from_attr(node);
    inst->attached_at = time_ordinal;
    inst->parent = parent;
    if (const XNode* rel = node.child("RelationshipToParent")) {
        inst->rel.present = true;
        for (const auto& e : rel->children) {
            if (e.name == "At")
                inst->rel.at_locations.push_back(element_from_node(e));
            else if (e.name == "Orient")
                inst->rel.orientation_specifiers.push_back(element_from_node(e));
            else if (e.name == "Extent")
                inst->rel.outer_extents.push_back(element_from_node(e));
            else
                throw Error(ErrorCode::SchemaViolation,
                            "unexpected <" + e.name + "> inside <RelationshipToParent>");
        }
    }
    if (const XNode* attrs = node.child("Attributes")) {
        for (const auto& e : attrs->children) {
            if (e.name != "Attribute")
                throw Error(ErrorCode::SchemaViolation,
                            "unexpected <" + e.name + "> inside <Attributes>");
            star::AttrElement elem = element_from_node(e);
            inst->attributes.push_back({elem.type_ref, attr_value_from_node(elem.value)});
        }
    }
    if (const XNode* rels = node.child("Relationships")) {
        for (const auto& e : rels->children) {
            if (e.name != "Relationship")
                throw Error(ErrorCode::SchemaViolation,
                            "unexpected <" + e.name + "> inside <Relationships>");
            Relationship r;
            r.type = e.require("type");
            r.target = e.require("target");
            const std::string* derived = e.attr("derived");
            r.derived = derived && *derived == "true";
            inst->relationships.push_back(std::move(r));
        }
    }
    if (const XNode* structure = node.child("InstanceStructure"))
        import_structure(*structure, *inst, time_ordinal);
    return inst;
}

bool assumption_value(const XNode& parent, const std::string& name, bool fallback) {
    if (const XNode* node = parent.child(name)) return node->require("value") == "true";
    return fallback;
}

} // namespace

std::string export_xml(const InstanceModel& model) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"us-ascii\" standalone=\"yes\"?>\n";
    os << "<InstanceModel>\n";
    if (model.source_document)
        os << "  <SourceDocument name=\"" << *model.source_document << "\" />\n";
    for (const auto& context : model.contexts) {
        os << "  <ConceptualModel>\n";
        os << "    <GlobalAssumptions>\n";
        os << "      <EmptySpaceAssumption value = \"" << (model.empty_space ? "true" : "false")
           << "\" />\n";
        os << "      <PermanentAttachmentsAssumption value = \""
           << (model.permanent_attachments ? "true" : "false") << "\" />\n";
        os << "      <PerpetuationAssumption value = \""
           << (model.perpetuation ? "true" : "false") << "\" />\n";
        os << "    </GlobalAssumptions>\n";
        const Situation& s = context.situation;
        if (s.root) {
            const ObjectFrameInstance& root = *s.root;
            std::string attr_indent(4 + std::string("<StructuralParent").size(), ' ');
            os << "    <StructuralParent class=\"" << root.class_name << "\"\n"
               << attr_indent << "name=\"" << root.id << "\"\n"
               << attr_indent << "type=\"" << to_string(root.kind) << "\"";
            if (!s.dimension_system.empty())
                os << "\n"
                   << attr_indent << "timeline=\"" << root.class_name << "."
                   << s.dimension_system << "\"";
            os << ">\n";
            for (const auto& tp : s.timeline) {
                os << "      <TimePoint value = \"" << tp.label << "\">\n";
                os << "        <InstanceStructure>\n";
                for (const auto& child : root.children) {
                    bool visible = model.permanent_attachments
                                       ? child->attached_at <= tp.ordinal
                                       : child->attached_at == tp.ordinal;
                    if (visible)
                        write_component(os, *child, "          ", tp.ordinal,
                                        model.permanent_attachments);
                }
                os << "        </InstanceStructure>\n";
                os << "      </TimePoint>\n";
            }
            os << "    </StructuralParent>\n";
        }
        os << "  </ConceptualModel>\n";
    }
    os << "</InstanceModel>\n";
    return os.str();
}

InstanceModel import_xml(const std::string& xml) {
    XmlReader reader(xml);
    XNode root = reader.parse_document();
    if (root.name != "InstanceModel")
        throw Error(ErrorCode::SchemaViolation,
                    "root element is <" + root.name + ">, expected <InstanceModel>");

    InstanceModel model;
    bool assumptions_seen = false;
    int context_count = 0;
    for (const auto& top : root.children) {
        if (top.name == "SourceDocument") {
            model.source_document = top.require("name");
            continue;
        }
        if (top.name != "ConceptualModel")
            throw Error(ErrorCode::SchemaViolation,
                        "unexpected <" + top.name + "> inside <InstanceModel>");
        ++context_count;
        Context context;
        context.id = "Context-" + std::to_string(context_count);
        const XNode* assumptions = top.child("GlobalAssumptions");
        if (assumptions) {
            model.empty_space = assumption_value(*assumptions, "EmptySpaceAssumption", true);
            model.permanent_attachments =
                assumption_value(*assumptions, "PermanentAttachmentsAssumption", true);
            model.perpetuation = assumption_value(*assumptions, "PerpetuationAssumption", true);
            assumptions_seen = true;
        }
        Situation& s = context.situation;
        s.empty_space = model.empty_space;
        s.permanent_attachments = model.permanent_attachments;
        s.perpetuation = model.perpetuation;
        if (const XNode* sp = top.child("StructuralParent")) {
            auto root_inst = std::make_unique<ObjectFrameInstance>();
            root_inst->class_name = sp->require("class");
            root_inst->id = sp->require("name");
            root_inst->kind = kind_from_attr(*sp);
            if (const std::string* timeline = sp->attr("timeline")) {
                std::size_t dot = timeline->find('.');
                s.dimension_system =
                    dot == std::string::npos ? *timeline : timeline->substr(dot + 1);
            }
            s.root = std::move(root_inst);
            for (const auto& tp_node : sp->children) {
                if (tp_node.name != "TimePoint")
                    throw Error(ErrorCode::SchemaViolation,
                                "unexpected <" + tp_node.name + "> inside <StructuralParent>");
                int ordinal = static_cast<int>(s.timeline.size()) + 1;
                s.timeline.push_back({ordinal, tp_node.require("value")});
                if (const XNode* structure = tp_node.child("InstanceStructure"))
                    import_structure(*structure, *s.root, ordinal);
            }
        }
        model.contexts.push_back(std::move(context));
    }
    if (!assumptions_seen && context_count == 0)
        throw Error(ErrorCode::SchemaViolation, "instance model has no <ConceptualModel>");
    return model;
}

} // namespace ross
