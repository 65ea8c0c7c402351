#include "ross/parser.hpp"

#include <algorithm>
#include <cassert>

namespace ross::star {

bool StructureEntryAst::operator==(const StructureEntryAst& o) const {
    return component_name == o.component_name && class_ref == o.class_ref &&
           inline_class == o.inline_class && rel_to_parent == o.rel_to_parent;
}

bool ObjectFrameClassDef::operator==(const ObjectFrameClassDef& o) const {
    return name == o.name && mass_substance == o.mass_substance &&
           dictionary_prior_word == o.dictionary_prior_word && dictionary == o.dictionary &&
           higher_classes == o.higher_classes &&
           structural_parent_classes_base == o.structural_parent_classes_base &&
           structural_parent_classes_typical_immediate ==
               o.structural_parent_classes_typical_immediate &&
           rel_to_parent == o.rel_to_parent && attribute_types == o.attribute_types &&
           attributes == o.attributes && templates == o.templates &&
           relationship_types == o.relationship_types &&
           dimension_system_refs == o.dimension_system_refs &&
           inline_dimension_systems == o.inline_dimension_systems && structure == o.structure &&
           behavior_classes == o.behavior_classes && frame_kind_raw == o.frame_kind_raw;
}

namespace {

struct XmlAttr {
    enum class Kind { Str, Ident, Int, Float, Expr };
    Kind kind = Kind::Str;
    std::string text;
    std::int64_t i = 0;
    std::vector<Token> expr;
    SourcePos pos;
};

struct XmlElem {
    std::string name;
    std::vector<std::pair<std::string, XmlAttr>> attrs;
    SourcePos pos;

    const XmlAttr* find(const std::string& key) const {
        for (const auto& [k, v] : attrs)
            if (k == key) return &v;
        return nullptr;
    }
};

struct Linear {
    Rational a{0};
    Rational b{0};
};

class Parser {
public:
    Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diagnostics)
        : tokens_(std::move(tokens)), diags_(diagnostics) {}

    StarAst parse_unit() {
        StarAst ast;
        while (!at_end()) {
            std::size_t before = pos_;
            if (auto item = parse_item()) ast.items.push_back(std::move(*item));
            if (pos_ == before) sync_to_statement_end();  // no progress: resync
        }
        return ast;
    }

private:
    std::vector<Token> tokens_;
    std::vector<Diagnostic>& diags_;
    std::size_t pos_ = 0;

    const Token& peek(std::size_t off = 0) const {
        std::size_t i = std::min(pos_ + off, tokens_.size() - 1);
        return tokens_[i];
    }
    const Token& advance() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }
    bool at_end() const { return peek().kind == Token::Kind::End; }

    void error(SourcePos pos, const std::string& message) { diags_.push_back({pos, message}); }

    bool accept_punct(char c) {
        if (peek().is_punct(c)) {
            advance();
            return true;
        }
        return false;
    }
    bool expect_punct(char c) {
        if (accept_punct(c)) return true;
        error(peek().pos, std::string("expected '") + c + "', found '" + describe(peek()) + "'");
        return false;
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
            case Token::Kind::End: return "end of input";
            case Token::Kind::String: return "\"" + t.lexeme + "\"";
            default: return t.lexeme;
        }
    }

    void skip_separators() {
        while (peek().is_punct(';') || peek().is_punct(',')) advance();
    }

    /// Skips to the ';' that ends the current top-level statement.
    void sync_to_statement_end() {
        int depth = 0;
        while (!at_end()) {
            const Token& t = peek();
            if (t.is_punct('(') || t.is_punct('{')) ++depth;
            if (t.is_punct(')') || t.is_punct('}')) --depth;
            advance();
            if (depth <= 0 && t.is_punct(';')) return;
        }
    }

    /// Name position: quoted string or bare identifier.
    std::optional<std::string> parse_name(const char* what) {
        if (peek().kind == Token::Kind::String || peek().kind == Token::Kind::Identifier)
            return advance().lexeme;
        error(peek().pos, std::string("expected ") + what + " name, found '" + describe(peek()) + "'");
        return std::nullopt;
    }

    /// Opens a body; returns the matching closer, or 0 on failure.
    char open_body() {
        if (accept_punct('(')) return ')';
        if (accept_punct('{')) return '}';
        error(peek().pos, "expected '(' or '{' to open a body, found '" + describe(peek()) + "'");
        return 0;
    }

    bool at_close(char closer) const { return peek().is_punct(closer) || peek().kind == Token::Kind::End; }

    void close_body(char closer) {
        if (!peek().is_punct(closer))
            error(peek().pos, std::string("expected '") + closer + "', found '" + describe(peek()) + "'");
        else
            advance();
        accept_punct(';');
    }

    // ---- XML-ish elements ----

    std::optional<XmlElem> parse_xml_elem() {
        XmlElem elem;
        elem.pos = peek().pos;
        if (!expect_punct('<')) return std::nullopt;
        if (peek().kind != Token::Kind::Identifier) {
            error(peek().pos, "expected element name after '<'");
            return std::nullopt;
        }
        elem.name = advance().lexeme;
        while (peek().kind == Token::Kind::Identifier) {
            std::string key = advance().lexeme;
            if (!expect_punct('=')) return std::nullopt;
            XmlAttr value;
            value.pos = peek().pos;
            if (peek().kind == Token::Kind::String) {
                value.kind = XmlAttr::Kind::Str;
                value.text = advance().lexeme;
            } else if (peek().kind == Token::Kind::Identifier) {
                value.kind = XmlAttr::Kind::Ident;
                value.text = advance().lexeme;
            } else if (peek().kind == Token::Kind::Integer) {
                value.kind = XmlAttr::Kind::Int;
                value.i = advance().int_value;
            } else if (peek().is_punct('-') && peek(1).kind == Token::Kind::Integer) {
                advance();
                value.kind = XmlAttr::Kind::Int;
                value.i = -advance().int_value;
            } else if (peek().kind == Token::Kind::Float) {
                value.kind = XmlAttr::Kind::Float;
                value.text = advance().lexeme;
            } else if (peek().is_punct('(')) {
                value.kind = XmlAttr::Kind::Expr;
                advance();
                int depth = 1;
                while (!at_end() && depth > 0) {
                    if (peek().is_punct('(')) ++depth;
                    if (peek().is_punct(')')) {
                        --depth;
                        if (depth == 0) break;
                    }
                    value.expr.push_back(advance());
                }
                expect_punct(')');
            } else {
                error(peek().pos, "expected attribute value after '='");
                return std::nullopt;
            }
            elem.attrs.push_back({std::move(key), std::move(value)});
        }
        if (!expect_punct('/')) return std::nullopt;
        if (!expect_punct('>')) return std::nullopt;
        return elem;
    }

    std::optional<std::string> xml_ref(const XmlElem& elem, const char* key = "ref") {
        const XmlAttr* a = elem.find(key);
        if (!a) {
            error(elem.pos, "element <" + elem.name + "> is missing its '" + key + "' attribute");
            return std::nullopt;
        }
        if (a->kind == XmlAttr::Kind::Ident || a->kind == XmlAttr::Kind::Str) return a->text;
        error(a->pos, "attribute '" + std::string(key) + "' must be a name");
        return std::nullopt;
    }

    std::optional<std::int64_t> xml_int(const XmlElem& elem, const char* key) {
        const XmlAttr* a = elem.find(key);
        if (!a) return std::nullopt;
        if (a->kind == XmlAttr::Kind::Int) return a->i;
        if (a->kind == XmlAttr::Kind::Str) {
            try {
                return std::stoll(a->text);
            } catch (...) {
            }
        }
        error(a->pos, "attribute '" + std::string(key) + "' must be an integer");
        return std::nullopt;
    }

    Value value_from_attr(const XmlAttr& a) {
        switch (a.kind) {
            case XmlAttr::Kind::Int: return Value::integer(a.i);
            case XmlAttr::Kind::Str: return Value::enumerated(a.text);
            case XmlAttr::Kind::Ident: return Value::enumerated(a.text);
            case XmlAttr::Kind::Float:
                error(a.pos, "floating-point values are only legal inside Mapping functions");
                return Value::integer(0);
            default:
                error(a.pos, "unsupported attribute value form");
                return Value::integer(0);
        }
    }

    /// Interprets an <Attribute/At/Extent/Assign ...> element.
    std::optional<AttrElement> attr_element_from(const XmlElem& elem) {
        AttrElement out;
        if (const XmlAttr* ref = elem.find("ref")) {
            if (ref->kind != XmlAttr::Kind::Ident && ref->kind != XmlAttr::Kind::Str) {
                error(ref->pos, "'ref' must be a name");
                return std::nullopt;
            }
            out.type_ref = ref->text;
        }
        if (const XmlAttr* path = elem.find("path")) out.path = path->text;
        const XmlAttr* val = elem.find("val");
        const XmlAttr* lo = elem.find("lo");
        const XmlAttr* hi = elem.find("hi");
        const XmlAttr* tmpl = elem.find("template");
        const XmlAttr* func = elem.find("func");
        if (tmpl) {
            out.value.kind = AttrValueAst::Kind::TemplateRef;
            out.value.ref_name = tmpl->text;
        } else if (func) {
            out.value.kind = AttrValueAst::Kind::FunctionRef;
            out.value.ref_name = func->text;
        } else if (lo || hi) {
            if (!lo || !hi) {
                error(elem.pos, "a range needs both 'lo' and 'hi'");
                return std::nullopt;
            }
            out.value.kind = AttrValueAst::Kind::Range;
            out.value.range = {value_from_attr(*lo), value_from_attr(*hi)};
        } else if (val) {
            out.value.kind = AttrValueAst::Kind::Single;
            out.value.single = value_from_attr(*val);
        } else {
            error(elem.pos, "element <" + elem.name + "> carries no value");
            return std::nullopt;
        }
        return out;
    }

    // ---- Shared bodies ----

    /// Words: { "a", "b" } or bare strings.
    std::vector<std::string> parse_word_list(char closer) {
        std::vector<std::string> words;
        bool braced = accept_punct('{');
        char end = braced ? '}' : closer;
        while (!at_close(end)) {
            if (peek().kind == Token::Kind::String || peek().kind == Token::Kind::Identifier)
                words.push_back(advance().lexeme);
            else {
                error(peek().pos, "expected a word, found '" + describe(peek()) + "'");
                break;
            }
            skip_separators();
        }
        if (braced) expect_punct('}');
        skip_separators();
        return words;
    }

    Dictionary parse_dictionary_body(char closer) {
        Dictionary dict;
        while (!at_close(closer)) {
            if (peek().kind != Token::Kind::Identifier && peek().kind != Token::Kind::String) {
                error(peek().pos, "expected a language tag, found '" + describe(peek()) + "'");
                break;
            }
            std::string lang = advance().lexeme;
            char c = open_body();
            if (!c) break;
            std::vector<std::string> words = parse_word_list(c);
            close_body(c);
            skip_separators();
            dict.entries.push_back({std::move(lang), std::move(words)});
        }
        return dict;
    }

    std::optional<IntOrRef> parse_int_or_ref() {
        if (peek().kind == Token::Kind::Integer) return IntOrRef::literal(advance().int_value);
        if (peek().is_punct('-') && peek(1).kind == Token::Kind::Integer) {
            advance();
            return IntOrRef::literal(-advance().int_value);
        }
        if (peek().kind == Token::Kind::Identifier) return IntOrRef::reference(advance().lexeme);
        error(peek().pos, "expected an integer or constant name, found '" + describe(peek()) + "'");
        return std::nullopt;
    }

    void parse_enum_member_into(ValueSetBody& body) {
        EnumMemberAst member;
        member.symbol = advance().lexeme;
        if (accept_punct(':')) {
            if (peek().is_ident("Dictionary")) {
                advance();
                char c = open_body();
                if (c) {
                    member.dictionary = parse_dictionary_body(c);
                    close_body(c);
                }
            } else if (peek().is_ident("Category")) {
                advance();
                char c = open_body();
                if (c) {
                    if (peek().kind == Token::Kind::Identifier ||
                        peek().kind == Token::Kind::String)
                        member.category_raw = advance().lexeme;
                    else
                        error(peek().pos, "expected a category name");
                    close_body(c);
                }
            } else {
                error(peek().pos, "expected Dictionary or Category after ':'");
            }
        }
        body.members.push_back(std::move(member));
    }

    /// Braced group: either an interval { lo, .. hi } or a member list.
    void parse_braced_values(ValueSetBody& body) {
        expect_punct('{');
        if (peek().kind == Token::Kind::Integer || peek().is_punct('-') ||
            (peek().kind == Token::Kind::Identifier && !peek(1).is_punct(':'))) {
            // Interval (or a single-symbol list; intervals need the dots).
            auto lo = parse_int_or_ref();
            skip_separators();
            if (peek().kind == Token::Kind::RangeDots) {
                advance();
                auto hi = parse_int_or_ref();
                if (lo && hi) body.interval = {*lo, *hi};
                skip_separators();
                expect_punct('}');
                return;
            }
            // Not an interval: treat the identifier as a bare member symbol.
            if (lo && lo->is_ref) {
                EnumMemberAst m;
                m.symbol = lo->ref;
                body.members.push_back(std::move(m));
            } else if (lo) {
                error(peek().pos, "expected '..' after interval lower bound");
            }
        }
        while (!at_close('}')) {
            if (peek().kind == Token::Kind::String || peek().kind == Token::Kind::Identifier)
                parse_enum_member_into(body);
            else {
                error(peek().pos, "expected a value set member, found '" + describe(peek()) + "'");
                break;
            }
            skip_separators();
        }
        expect_punct('}');
    }

    /// Elements legal inside ValueSet bodies and Values/ValueSet sections.
    ValueSetBody parse_value_set_body(char closer) {
        ValueSetBody body;
        while (!at_close(closer)) {
            if (peek().is_ident("IntegerConstant")) {
                advance();
                body.integer_constant = true;
            } else if (peek().is_punct('<')) {
                auto elem = parse_xml_elem();
                if (!elem) break;
                if (elem->name == "BaseValueSet") {
                    if (auto r = xml_ref(*elem)) body.base_ref = *r;
                } else if (elem->name == "SuperTypeUsage") {
                    if (const XmlAttr* v = elem->find("val")) body.usage_raw = v->text;
                } else {
                    error(elem->pos, "unexpected element <" + elem->name + "> in value set");
                }
            } else if (peek().is_punct('{')) {
                parse_braced_values(body);
            } else if (peek().kind == Token::Kind::String) {
                parse_enum_member_into(body);
            } else {
                error(peek().pos, "unexpected '" + describe(peek()) + "' in value set body");
                break;
            }
            skip_separators();
        }
        return body;
    }

    // ---- Attribute types ----

    /// Body shared by `AttributeType "X" (...)` and the string-led
    /// `"AttributeTypeX" (...)` form used inside dimension systems.
    AttributeTypeDef parse_attribute_type_body(std::string name, SourcePos pos) {
        AttributeTypeDef def;
        def.name = std::move(name);
        def.pos = pos;
        char closer = open_body();
        if (!closer) return def;
        while (!at_close(closer)) {
            if (peek().is_punct('<')) {
                auto elem = parse_xml_elem();
                if (!elem) break;
                if (elem->name == "SuperType") {
                    if (const XmlAttr* v = elem->find("val")) def.super_raw = v->text;
                } else if (elem->name == "Values" || elem->name == "ValueSet") {
                    if (auto r = xml_ref(*elem)) def.values_ref = *r;
                } else {
                    error(elem->pos, "unexpected element <" + elem->name + "> in attribute type");
                }
            } else if ((peek().kind == Token::Kind::String || peek().kind == Token::Kind::Identifier) &&
                       (peek().lexeme == "Values" || peek().lexeme == "ValueSet")) {
                advance();
                char c = open_body();
                if (!c) break;
                def.inline_values = parse_value_set_body(c);
                close_body(c);
            } else {
                error(peek().pos,
                      "unexpected '" + describe(peek()) + "' in attribute type body");
                break;
            }
            skip_separators();
        }
        close_body(closer);
        return def;
    }

    std::vector<AttributeTypeDef> parse_attribute_type_list(char closer) {
        std::vector<AttributeTypeDef> out;
        while (!at_close(closer)) {
            SourcePos pos = peek().pos;
            if (peek().is_ident("AttributeType")) {
                advance();
                auto name = parse_name("attribute type");
                if (!name) break;
                out.push_back(parse_attribute_type_body(*name, pos));
            } else if (peek().kind == Token::Kind::String) {
                std::string name = advance().lexeme;
                out.push_back(parse_attribute_type_body(name, pos));
            } else {
                error(peek().pos, "expected an attribute type, found '" + describe(peek()) + "'");
                break;
            }
            skip_separators();
        }
        return out;
    }

    // ---- Affine mapping expressions ----

    std::optional<Linear> parse_linear(const std::vector<Token>& toks, std::size_t& i,
                                       SourcePos where);

    std::optional<Linear> parse_linear_factor(const std::vector<Token>& toks, std::size_t& i,
                                              SourcePos where) {
        if (i >= toks.size()) {
            error(where, "mapping expression ends unexpectedly");
            return std::nullopt;
        }
        const Token& t = toks[i];
        if (t.kind == Token::Kind::Integer) {
            ++i;
            return Linear{Rational(0), Rational(t.int_value)};
        }
        if (t.kind == Token::Kind::Float) {
            ++i;
            return Linear{Rational(0), rational_from_decimal(t.lexeme)};
        }
        if (t.kind == Token::Kind::Identifier && t.lexeme == "x$") {
            ++i;
            return Linear{Rational(1), Rational(0)};
        }
        if (t.is_punct('-')) {
            ++i;
            auto inner = parse_linear_factor(toks, i, where);
            if (!inner) return std::nullopt;
            return Linear{-inner->a, -inner->b};
        }
        if (t.is_punct('(')) {
            ++i;
            auto inner = parse_linear(toks, i, where);
            if (!inner) return std::nullopt;
            if (i < toks.size() && toks[i].is_punct(')'))
                ++i;
            else
                error(where, "unbalanced parentheses in mapping expression");
            return inner;
        }
        error(t.pos, "unexpected '" + describe(t) + "' in mapping expression");
        return std::nullopt;
    }

    std::optional<Linear> parse_linear_term(const std::vector<Token>& toks, std::size_t& i,
                                            SourcePos where) {
        auto acc = parse_linear_factor(toks, i, where);
        if (!acc) return std::nullopt;
        while (i < toks.size() && (toks[i].is_punct('*') || toks[i].is_punct('/'))) {
            bool divide = toks[i].is_punct('/');
            ++i;
            auto rhs = parse_linear_factor(toks, i, where);
            if (!rhs) return std::nullopt;
            if (divide) {
                if (rhs->a != Rational(0) || rhs->b == Rational(0)) {
                    error(where, "mapping functions may only divide by a nonzero constant");
                    return std::nullopt;
                }
                acc = Linear{acc->a / rhs->b, acc->b / rhs->b};
            } else if (rhs->a == Rational(0)) {
                acc = Linear{acc->a * rhs->b, acc->b * rhs->b};
            } else if (acc->a == Rational(0)) {
                acc = Linear{rhs->a * acc->b, rhs->b * acc->b};
            } else {
                error(where, "mapping functions must be affine in x$");
                return std::nullopt;
            }
        }
        return acc;
    }

    // ---- Statements ----

    std::optional<Item> parse_item();
    std::optional<Item> parse_value_set();
    std::optional<Item> parse_constant();
    std::optional<Item> parse_attribute_type_stmt();
    std::optional<Item> parse_mapping();
    std::optional<DimensionSystemDef> parse_dimension_system();
    std::optional<Item> parse_specification_system();
    std::optional<ObjectFrameClassDef> parse_object_frame_class();
    std::optional<Item> parse_template_class();
    std::optional<Item> parse_shape_pattern();
    std::optional<Item> parse_populated_object_class();
    std::optional<Item> parse_behavior_class();
    std::optional<Item> parse_attach();
    std::optional<Item> parse_assert();

    std::vector<std::string> parse_name_list(char closer) {
        std::vector<std::string> names;
        while (!at_close(closer)) {
            if (peek().is_punct('{')) {
                advance();
                while (!at_close('}')) {
                    if (peek().kind == Token::Kind::String || peek().kind == Token::Kind::Identifier)
                        names.push_back(advance().lexeme);
                    else {
                        error(peek().pos, "expected a name, found '" + describe(peek()) + "'");
                        break;
                    }
                    skip_separators();
                }
                expect_punct('}');
            } else if (peek().kind == Token::Kind::String || peek().kind == Token::Kind::Identifier) {
                names.push_back(advance().lexeme);
            } else {
                error(peek().pos, "expected a name, found '" + describe(peek()) + "'");
                break;
            }
            skip_separators();
        }
        return names;
    }

    std::vector<AttrElement> parse_attr_element_list(char closer) {
        std::vector<AttrElement> out;
        while (!at_close(closer)) {
            if (!peek().is_punct('<')) {
                error(peek().pos, "expected an element, found '" + describe(peek()) + "'");
                break;
            }
            auto elem = parse_xml_elem();
            if (!elem) break;
            if (auto attr = attr_element_from(*elem)) out.push_back(std::move(*attr));
            skip_separators();
        }
        return out;
    }

    RelationshipToParentAst parse_rel_to_parent_body(char closer) {
        RelationshipToParentAst rel;
        rel.present = true;
        while (!at_close(closer)) {
            if (peek().is_punct('<')) {
                auto elem = parse_xml_elem();
                if (!elem) break;
                if (elem->name == "Parent") {
                    if (auto r = xml_ref(*elem)) rel.parent_ref = *r;
                } else if (elem->name == "At") {
                    if (auto a = attr_element_from(*elem)) rel.at_locations.push_back(*a);
                } else if (elem->name == "Orientation") {
                    if (auto a = attr_element_from(*elem)) rel.orientation_specifiers.push_back(*a);
                } else if (elem->name == "Extent") {
                    if (auto a = attr_element_from(*elem)) rel.outer_extents.push_back(*a);
                } else {
                    error(elem->pos, "unexpected element <" + elem->name +
                                         "> in a relationship-to-parent body");
                }
            } else if (peek().kind == Token::Kind::Identifier) {
                std::string section = advance().lexeme;
                char c = open_body();
                if (!c) break;
                std::vector<AttrElement> elems = parse_attr_element_list(c);
                close_body(c);
                if (section == "AtLocations")
                    rel.at_locations = std::move(elems);
                else if (section == "OrientationSpecifiers")
                    rel.orientation_specifiers = std::move(elems);
                else if (section == "OuterDimensionSystemExtents")
                    rel.outer_extents = std::move(elems);
                else
                    error(peek().pos, "unknown relationship-to-parent section '" + section + "'");
            } else {
                error(peek().pos,
                      "unexpected '" + describe(peek()) + "' in relationship-to-parent body");
                break;
            }
            skip_separators();
        }
        return rel;
    }

    std::vector<CellEntryAst> parse_cell_list(char closer) {
        std::vector<CellEntryAst> cells;
        while (!at_close(closer)) {
            auto elem = parse_xml_elem();
            if (!elem) break;
            if (elem->name != "Cell") {
                error(elem->pos, "expected <Cell .../>");
                break;
            }
            CellEntryAst cell;
            if (auto v = xml_int(*elem, "x")) cell.x = *v;
            if (auto v = xml_int(*elem, "y")) cell.y = *v;
            if (auto v = xml_int(*elem, "z")) cell.z = *v;
            if (const XmlAttr* v = elem->find("val")) cell.value = v->text;
            cells.push_back(std::move(cell));
            skip_separators();
        }
        return cells;
    }
};

std::optional<Item> Parser::parse_item() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Identifier) {
        error(t.pos, "expected a statement, found '" + describe(t) + "'");
        sync_to_statement_end();
        return std::nullopt;
    }
    const std::string& kw = t.lexeme;
    if (kw == "ValueSet") return parse_value_set();
    if (kw == "Integer") return parse_constant();
    if (kw == "AttributeType") return parse_attribute_type_stmt();
    if (kw == "Mapping") return parse_mapping();
    if (kw == "DimensionSystem") {
        if (auto def = parse_dimension_system()) return Item{std::move(*def)};
        return std::nullopt;
    }
    if (kw == "SpecificationSystem") return parse_specification_system();
    if (kw == "ObjectFrameClass") {
        if (auto def = parse_object_frame_class()) return Item{std::move(*def)};
        return std::nullopt;
    }
    if (kw == "TemplateClass") return parse_template_class();
    if (kw == "ShapePattern") return parse_shape_pattern();
    if (kw == "PopulatedObjectClass") return parse_populated_object_class();
    if (kw == "BehaviorClass") return parse_behavior_class();
    if (kw == "attach") return parse_attach();
    if (kw == "assert") return parse_assert();
    error(t.pos, "unknown statement keyword '" + kw + "'");
    sync_to_statement_end();
    return std::nullopt;
}

std::optional<Item> Parser::parse_value_set() {
    ValueSetDef def;
    def.pos = peek().pos;
    advance();  // ValueSet
    auto name = parse_name("value set");
    if (!name) {
        sync_to_statement_end();
        return std::nullopt;
    }
    def.name = *name;
    char closer = open_body();
    if (!closer) {
        sync_to_statement_end();
        return std::nullopt;
    }
    def.body = parse_value_set_body(closer);
    close_body(closer);
    return Item{std::move(def)};
}

std::optional<Item> Parser::parse_constant() {
    ConstantDecl decl;
    decl.pos = peek().pos;
    advance();  // Integer
    if (peek().kind != Token::Kind::Identifier) {
        error(peek().pos, "expected a constant name after 'Integer'");
        sync_to_statement_end();
        return std::nullopt;
    }
    decl.name = advance().lexeme;
    if (!expect_punct('=')) {
        sync_to_statement_end();
        return std::nullopt;
    }
    bool negative = accept_punct('-');
    if (peek().kind != Token::Kind::Integer) {
        error(peek().pos, "expected an integer literal");
        sync_to_statement_end();
        return std::nullopt;
    }
    decl.value = advance().int_value;
    if (negative) decl.value = -decl.value;
    expect_punct(';');
    return Item{std::move(decl)};
}

std::optional<Item> Parser::parse_attribute_type_stmt() {
    SourcePos pos = peek().pos;
    advance();  // AttributeType
    auto name = parse_name("attribute type");
    if (!name) {
        sync_to_statement_end();
        return std::nullopt;
    }
    return Item{parse_attribute_type_body(*name, pos)};
}

std::optional<Item> Parser::parse_mapping() {
    MappingDef def;
    def.pos = peek().pos;
    advance();  // Mapping
    auto name = parse_name("mapping");
    if (!name) {
        sync_to_statement_end();
        return std::nullopt;
    }
    def.name = *name;
    char closer = open_body();
    if (!closer) {
        sync_to_statement_end();
        return std::nullopt;
    }
    while (!at_close(closer)) {
        auto elem = parse_xml_elem();
        if (!elem) break;
        if (elem->name == "Source") {
            if (auto r = xml_ref(*elem)) def.source = *r;
        } else if (elem->name == "Dest") {
            if (auto r = xml_ref(*elem)) def.dest = *r;
        } else if (elem->name == "Function") {
            const XmlAttr* e = elem->find("expr");
            if (!e || e->kind != XmlAttr::Kind::Expr) {
                error(elem->pos, "<Function> needs an expr = ( ... ) attribute");
            } else {
                std::string text = "(";
                for (const auto& tok : e->expr) {
                    if (text.size() > 1) text += " ";
                    text += tok.kind == Token::Kind::String ? "\"" + tok.lexeme + "\"" : tok.lexeme;
                }
                text += ")";
                def.expr_text = text;
                std::size_t i = 0;
                if (auto lin = parse_linear(e->expr, i, elem->pos)) {
                    if (i != e->expr.size())
                        error(elem->pos, "trailing tokens in mapping expression");
                    def.a = lin->a;
                    def.b = lin->b;
                }
            }
        } else {
            error(elem->pos, "unexpected element <" + elem->name + "> in mapping");
        }
        skip_separators();
    }
    close_body(closer);
    return Item{std::move(def)};
}

std::optional<Linear> Parser::parse_linear(const std::vector<Token>& toks, std::size_t& i,
                                           SourcePos where) {
    auto acc = parse_linear_term(toks, i, where);
    if (!acc) return std::nullopt;
    while (i < toks.size() && (toks[i].is_punct('+') || toks[i].is_punct('-'))) {
        bool minus = toks[i].is_punct('-');
        ++i;
        auto rhs = parse_linear_term(toks, i, where);
        if (!rhs) return std::nullopt;
        if (minus)
            acc = Linear{acc->a - rhs->a, acc->b - rhs->b};
        else
            acc = Linear{acc->a + rhs->a, acc->b + rhs->b};
    }
    return acc;
}

std::optional<DimensionSystemDef> Parser::parse_dimension_system() {
    DimensionSystemDef def;
    def.pos = peek().pos;
    advance();  // DimensionSystem
    auto name = parse_name("dimension system");
    if (!name) {
        sync_to_statement_end();
        return std::nullopt;
    }
    def.name = *name;
    char closer = open_body();
    if (!closer) {
        sync_to_statement_end();
        return std::nullopt;
    }
    while (!at_close(closer)) {
        if (peek().kind != Token::Kind::Identifier) {
            error(peek().pos, "expected a dimension system section, found '" + describe(peek()) + "'");
            break;
        }
        std::string section = advance().lexeme;
        char c = open_body();
        if (!c) break;
        auto types = parse_attribute_type_list(c);
        close_body(c);
        if (section == "SpatialAttributeTypes")
            def.spatial = std::move(types);
        else if (section == "TemporalAttributeTypes")
            def.temporal = std::move(types);
        else
            error(peek().pos, "unknown dimension system section '" + section + "'");
        skip_separators();
    }
    close_body(closer);
    return def;
}

std::optional<Item> Parser::parse_specification_system() {
    SpecificationSystemDef def;
    def.pos = peek().pos;
    advance();  // SpecificationSystem
    auto name = parse_name("specification system");
    if (!name) {
        sync_to_statement_end();
        return std::nullopt;
    }
    def.name = *name;
    char closer = open_body();
    if (!closer) {
        sync_to_statement_end();
        return std::nullopt;
    }
    while (!at_close(closer)) {
        if (peek().is_ident("DimensionSystem")) {
            advance();
            if (auto section = parse_name("dimension system section"))
                def.dimension_section_name = *section;
            char c = open_body();
            if (!c) break;
            if (peek().kind == Token::Kind::Identifier || peek().kind == Token::Kind::String)
                def.dimension_system_ref = advance().lexeme;
            else
                error(peek().pos, "expected a dimension system reference");
            close_body(c);
        } else if (peek().is_ident("InnerContent")) {
            advance();
            char c = open_body();
            if (!c) break;
            while (!at_close(c)) {
                if (!peek().is_ident("QualityAttributeTypes")) {
                    error(peek().pos, "expected QualityAttributeTypes section");
                    break;
                }
                advance();
                char c2 = open_body();
                if (!c2) break;
                while (!at_close(c2)) {
                    auto entry_name = parse_name("essential value type");
                    if (!entry_name) break;
                    char c3 = open_body();
                    if (!c3) break;
                    std::string ref;
                    if (peek().kind == Token::Kind::Identifier || peek().kind == Token::Kind::String)
                        ref = advance().lexeme;
                    else
                        error(peek().pos, "expected an attribute type reference");
                    close_body(c3);
                    def.inner_content.push_back({*entry_name, ref});
                    skip_separators();
                }
                close_body(c2);
                skip_separators();
            }
            close_body(c);
        } else {
            error(peek().pos,
                  "unexpected '" + describe(peek()) + "' in specification system body");
            break;
        }
        skip_separators();
    }
    close_body(closer);
    return Item{std::move(def)};
}

std::optional<ObjectFrameClassDef> Parser::parse_object_frame_class() {
    ObjectFrameClassDef def;
    def.pos = peek().pos;
    advance();  // ObjectFrameClass
    auto name = parse_name("object frame class");
    if (!name) {
        sync_to_statement_end();
        return std::nullopt;
    }
    def.name = *name;
    char closer = open_body();
    if (!closer) {
        sync_to_statement_end();
        return std::nullopt;
    }
    while (!at_close(closer)) {
        if (peek().kind != Token::Kind::Identifier) {
            error(peek().pos, "expected a class section, found '" + describe(peek()) + "'");
            break;
        }
        SourcePos section_pos = peek().pos;
        std::string section = advance().lexeme;
        if (section == "MassSubstance") {
            char c = open_body();
            if (!c) break;
            if (peek().is_ident("true") || peek().is_ident("false"))
                def.mass_substance = advance().lexeme == "true";
            else
                error(peek().pos, "expected true or false");
            close_body(c);
        } else if (section == "DictionaryPriorWord" || section == "Dictionary") {
            char c = open_body();
            if (!c) break;
            Dictionary dict = parse_dictionary_body(c);
            close_body(c);
            if (section == "Dictionary")
                def.dictionary = std::move(dict);
            else
                def.dictionary_prior_word = std::move(dict);
        } else if (section == "HigherClasses" || section == "StructuralParentClassesBase" ||
                   section == "StructuralParentClassesTypicalImmediate" ||
                   section == "Templates" || section == "BehaviorClasses" ||
                   section == "BehaviorClass") {
            char c = open_body();
            if (!c) break;
            auto names = parse_name_list(c);
            close_body(c);
            if (section == "HigherClasses")
                def.higher_classes = std::move(names);
            else if (section == "StructuralParentClassesBase")
                def.structural_parent_classes_base = std::move(names);
            else if (section == "StructuralParentClassesTypicalImmediate")
                def.structural_parent_classes_typical_immediate = std::move(names);
            else if (section == "Templates")
                def.templates = std::move(names);
            else
                def.behavior_classes = std::move(names);
        } else if (section == "RelationshipToParent") {
            char c = open_body();
            if (!c) break;
            def.rel_to_parent = parse_rel_to_parent_body(c);
            close_body(c);
        } else if (section == "AttributeTypes") {
            char c = open_body();
            if (!c) break;
            def.attribute_types = parse_attribute_type_list(c);
            close_body(c);
        } else if (section == "Attributes") {
            char c = open_body();
            if (!c) break;
            while (!at_close(c)) {
                if (!peek().is_ident("Attribute")) {
                    error(peek().pos, "expected an Attribute entry");
                    break;
                }
                advance();
                AttributeEntryAst entry;
                if (auto n = parse_name("attribute")) entry.name = *n;
                char c2 = open_body();
                if (!c2) break;
                if (peek().is_punct('<')) {
                    auto elem = parse_xml_elem();
                    if (elem) {
                        if (auto attr = attr_element_from(*elem)) entry.attr = std::move(*attr);
                    }
                }
                close_body(c2);
                def.attributes.push_back(std::move(entry));
                skip_separators();
            }
            close_body(c);
        } else if (section == "RelationshipTypes") {
            char c = open_body();
            if (!c) break;
            while (!at_close(c)) {
                NamedItemAst item;
                if (auto n = parse_name("relationship type")) item.name = *n;
                if (peek().is_punct('(') || peek().is_punct('{')) {
                    char c2 = open_body();
                    item.items = parse_name_list(c2);
                    close_body(c2);
                }
                def.relationship_types.push_back(std::move(item));
                skip_separators();
            }
            close_body(c);
        } else if (section == "DimensionSystems") {
            char c = open_body();
            if (!c) break;
            while (!at_close(c)) {
                if (peek().is_ident("DimensionSystem")) {
                    if (auto ds = parse_dimension_system())
                        def.inline_dimension_systems.push_back(std::move(*ds));
                } else if (peek().kind == Token::Kind::Identifier ||
                           peek().kind == Token::Kind::String) {
                    def.dimension_system_refs.push_back(advance().lexeme);
                } else {
                    error(peek().pos, "expected a dimension system, found '" + describe(peek()) + "'");
                    break;
                }
                skip_separators();
            }
            close_body(c);
        } else if (section == "Structure") {
            char c = open_body();
            if (!c) break;
            while (!at_close(c)) {
                StructureEntryAst entry;
                if (peek().is_ident("Component")) {
                    advance();
                    if (auto n = parse_name("component")) entry.component_name = *n;
                    char c2 = open_body();
                    if (!c2) break;
                    if (peek().kind == Token::Kind::Identifier ||
                        peek().kind == Token::Kind::String)
                        entry.class_ref = advance().lexeme;
                    else
                        error(peek().pos, "expected a class reference");
                    skip_separators();
                    if (peek().is_ident("RelationshipToParent")) {
                        advance();
                        char c3 = open_body();
                        if (c3) {
                            entry.rel_to_parent = parse_rel_to_parent_body(c3);
                            close_body(c3);
                        }
                    }
                    close_body(c2);
                } else if (peek().is_ident("ObjectFrameClass")) {
                    if (auto inner = parse_object_frame_class()) {
                        entry.component_name = inner->name;
                        entry.inline_class.push_back(std::move(*inner));
                    }
                } else {
                    error(peek().pos, "expected a structure entry, found '" + describe(peek()) + "'");
                    break;
                }
                def.structure.push_back(std::move(entry));
                skip_separators();
            }
            close_body(c);
        } else if (section == "FrameKind") {
            char c = open_body();
            if (!c) break;
            if (peek().kind == Token::Kind::Identifier || peek().kind == Token::Kind::String)
                def.frame_kind_raw = advance().lexeme;
            else
                error(peek().pos, "expected Unit, Aggregate, or Range");
            close_body(c);
        } else {
            error(section_pos, "unknown class section '" + section + "'");
            break;
        }
        skip_separators();
    }
    close_body(closer);
    return def;
}

std::optional<Item> Parser::parse_template_class() {
    TemplateClassDef def;
    def.pos = peek().pos;
    advance();  // TemplateClass
    auto name = parse_name("template class");
    if (!name) {
        sync_to_statement_end();
        return std::nullopt;
    }
    def.name = *name;
    char closer = open_body();
    if (!closer) {
        sync_to_statement_end();
        return std::nullopt;
    }
    while (!at_close(closer)) {
        if (peek().is_ident("TargetClass")) {
            advance();
            char c = open_body();
            if (!c) break;
            if (peek().kind == Token::Kind::Identifier || peek().kind == Token::Kind::String)
                def.target_class = advance().lexeme;
            close_body(c);
        } else if (peek().is_ident("Cells")) {
            advance();
            char c = open_body();
            if (!c) break;
            def.cells = parse_cell_list(c);
            close_body(c);
        } else if (peek().is_ident("Instructions")) {
            advance();
            char c = open_body();
            if (!c) break;
            while (!at_close(c)) {
                auto elem = parse_xml_elem();
                if (!elem) break;
                DrawInstructionAst instr;
                if (elem->name == "SetCell") {
                    instr.kind = DrawInstructionAst::Kind::SetCell;
                    if (auto v = xml_int(*elem, "x")) instr.x1 = instr.x2 = *v;
                    if (auto v = xml_int(*elem, "y")) instr.y1 = instr.y2 = *v;
                    if (auto v = xml_int(*elem, "z")) instr.z1 = instr.z2 = *v;
                } else if (elem->name == "FillCuboid") {
                    instr.kind = DrawInstructionAst::Kind::FillCuboid;
                    if (auto v = xml_int(*elem, "x1")) instr.x1 = *v;
                    if (auto v = xml_int(*elem, "y1")) instr.y1 = *v;
                    if (auto v = xml_int(*elem, "z1")) instr.z1 = *v;
                    if (auto v = xml_int(*elem, "x2")) instr.x2 = *v;
                    if (auto v = xml_int(*elem, "y2")) instr.y2 = *v;
                    if (auto v = xml_int(*elem, "z2")) instr.z2 = *v;
                } else {
                    error(elem->pos, "expected <SetCell/> or <FillCuboid/>");
                    break;
                }
                if (const XmlAttr* v = elem->find("val")) instr.value = v->text;
                def.instructions.push_back(std::move(instr));
                skip_separators();
            }
            close_body(c);
        } else {
            error(peek().pos, "unexpected '" + describe(peek()) + "' in template class body");
            break;
        }
        skip_separators();
    }
    close_body(closer);
    return Item{std::move(def)};
}

std::optional<Item> Parser::parse_shape_pattern() {
    ShapePatternDef def;
    def.pos = peek().pos;
    advance();  // ShapePattern
    auto name = parse_name("shape pattern");
    if (!name) {
        sync_to_statement_end();
        return std::nullopt;
    }
    def.name = *name;
    char closer = open_body();
    if (!closer) {
        sync_to_statement_end();
        return std::nullopt;
    }
    while (!at_close(closer)) {
        if (peek().is_punct('<')) {
            auto elem = parse_xml_elem();
            if (!elem) break;
            if (elem->name == "Extent") {
                if (auto v = xml_int(*elem, "x")) def.extent_x = *v;
                if (auto v = xml_int(*elem, "y")) def.extent_y = *v;
                if (auto v = xml_int(*elem, "z")) def.extent_z = *v;
            } else {
                error(elem->pos, "unexpected element <" + elem->name + "> in shape pattern");
            }
        } else if (peek().is_ident("Cells")) {
            advance();
            char c = open_body();
            if (!c) break;
            def.cells = parse_cell_list(c);
            close_body(c);
        } else {
            error(peek().pos, "unexpected '" + describe(peek()) + "' in shape pattern body");
            break;
        }
        skip_separators();
    }
    close_body(closer);
    return Item{std::move(def)};
}

std::optional<Item> Parser::parse_populated_object_class() {
    PopulatedObjectClassDef def;
    def.pos = peek().pos;
    advance();  // PopulatedObjectClass
    auto name = parse_name("populated object class");
    if (!name) {
        sync_to_statement_end();
        return std::nullopt;
    }
    def.name = *name;
    char closer = open_body();
    if (!closer) {
        sync_to_statement_end();
        return std::nullopt;
    }
    while (!at_close(closer)) {
        if (peek().is_ident("TargetClass")) {
            advance();
            char c = open_body();
            if (!c) break;
            if (peek().kind == Token::Kind::Identifier || peek().kind == Token::Kind::String)
                def.target_class = advance().lexeme;
            close_body(c);
        } else if (peek().is_ident("Assignments")) {
            advance();
            char c = open_body();
            if (!c) break;
            def.assignments = parse_attr_element_list(c);
            close_body(c);
        } else {
            error(peek().pos,
                  "unexpected '" + describe(peek()) + "' in populated object class body");
            break;
        }
        skip_separators();
    }
    close_body(closer);
    return Item{std::move(def)};
}

std::optional<Item> Parser::parse_behavior_class() {
    BehaviorClassDef def;
    def.pos = peek().pos;
    advance();  // BehaviorClass
    auto name = parse_name("behavior class");
    if (!name) {
        sync_to_statement_end();
        return std::nullopt;
    }
    def.name = *name;
    char closer = open_body();
    if (!closer) {
        sync_to_statement_end();
        return std::nullopt;
    }
    auto parse_states = [&](char c) {
        std::vector<BehaviorStateAst> states;
        while (!at_close(c)) {
            if (!peek().is_ident("State")) {
                error(peek().pos, "expected a State entry");
                break;
            }
            advance();
            BehaviorStateAst state;
            if (auto n = parse_name("state")) state.name = *n;
            char c2 = open_body();
            if (!c2) break;
            while (!at_close(c2)) {
                if (peek().is_punct('<')) {
                    auto elem = parse_xml_elem();
                    if (!elem) break;
                    if (elem->name == "Ref") {
                        if (auto r = xml_ref(*elem, "poc")) state.poc_ref = *r;
                    } else if (auto attr = attr_element_from(*elem)) {
                        state.values.push_back(std::move(*attr));
                    }
                } else {
                    error(peek().pos, "expected an element inside State");
                    break;
                }
                skip_separators();
            }
            close_body(c2);
            states.push_back(std::move(state));
            skip_separators();
        }
        return states;
    };
    while (!at_close(closer)) {
        if (peek().is_ident("BridgeStructuralParent")) {
            advance();
            char c = open_body();
            if (!c) break;
            if (peek().kind == Token::Kind::Identifier || peek().kind == Token::Kind::String)
                def.bridge_structural_parent = advance().lexeme;
            close_body(c);
        } else if (peek().is_ident("PriorStates") || peek().is_ident("PostStates")) {
            bool prior = peek().lexeme == "PriorStates";
            advance();
            char c = open_body();
            if (!c) break;
            auto states = parse_states(c);
            close_body(c);
            if (prior)
                def.prior_states = std::move(states);
            else
                def.post_states = std::move(states);
        } else if (peek().is_ident("Binder")) {
            advance();
            char c = open_body();
            if (!c) break;
            while (!at_close(c)) {
                auto elem = parse_xml_elem();
                if (!elem) break;
                if (elem->name != "Bind") {
                    error(elem->pos, "expected <Bind .../>");
                    break;
                }
                BinderConstraintAst bind;
                if (auto r = xml_ref(*elem, "from")) bind.from = *r;
                if (auto r = xml_ref(*elem, "to")) bind.to = *r;
                if (auto v = xml_int(*elem, "dx")) bind.dx = *v;
                if (auto v = xml_int(*elem, "dy")) bind.dy = *v;
                if (auto v = xml_int(*elem, "dz")) bind.dz = *v;
                if (auto v = xml_int(*elem, "dt")) bind.dt = *v;
                def.binder.push_back(std::move(bind));
                skip_separators();
            }
            close_body(c);
        } else {
            error(peek().pos, "unexpected '" + describe(peek()) + "' in behavior class body");
            break;
        }
        skip_separators();
    }
    close_body(closer);
    return Item{std::move(def)};
}

std::optional<Item> Parser::parse_attach() {
    AttachStmt stmt;
    stmt.pos = peek().pos;
    advance();  // attach
    if (peek().kind != Token::Kind::Identifier && peek().kind != Token::Kind::String) {
        error(peek().pos, "expected a class name after 'attach'");
        sync_to_statement_end();
        return std::nullopt;
    }
    stmt.class_name = advance().lexeme;
    if (peek().kind != Token::Kind::Identifier && peek().kind != Token::Kind::String) {
        error(peek().pos, "expected an instance name after the class name");
        sync_to_statement_end();
        return std::nullopt;
    }
    stmt.instance_name = advance().lexeme;
    if (peek().is_punct('(') || peek().is_punct('{')) {
        char c = open_body();
        stmt.rel_to_parent = parse_rel_to_parent_body(c);
        close_body(c);
    } else {
        expect_punct(';');
    }
    return Item{std::move(stmt)};
}

std::optional<Item> Parser::parse_assert() {
    AssertStmt stmt;
    stmt.pos = peek().pos;
    advance();  // assert
    if (peek().kind != Token::Kind::Identifier && peek().kind != Token::Kind::String) {
        error(peek().pos, "expected an instance name after 'assert'");
        sync_to_statement_end();
        return std::nullopt;
    }
    stmt.instance_name = advance().lexeme;
    if (!expect_punct(':') || !expect_punct(':')) {
        sync_to_statement_end();
        return std::nullopt;
    }
    char closer = open_body();
    if (!closer) {
        sync_to_statement_end();
        return std::nullopt;
    }
    stmt.cluster = parse_attr_element_list(closer);
    close_body(closer);
    return Item{std::move(stmt)};
}

} // namespace

ParseResult parse(const std::string& source) {
    ParseResult result;
    std::vector<Token> tokens = lex(source, result.diagnostics);
    Parser parser(std::move(tokens), result.diagnostics);
    result.ast = parser.parse_unit();
    return result;
}

std::vector<Item> parse_statements(const std::string& source,
                                   std::vector<Diagnostic>& diagnostics) {
    ParseResult result = parse(source);
    diagnostics.insert(diagnostics.end(), result.diagnostics.begin(), result.diagnostics.end());
    std::vector<Item> statements;
    for (auto& item : result.ast.items) {
        if (std::holds_alternative<AttachStmt>(item) || std::holds_alternative<AssertStmt>(item))
            statements.push_back(std::move(item));
    }
    return statements;
}

} // namespace ross::star
