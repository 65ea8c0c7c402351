#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ross/error.hpp"
#include "ross/rational.hpp"

namespace ross {

// The two built-in value categories. Everything a cell can hold is either
// space or not-space; concrete values may be tagged with the category they
// inherit from.
enum class ValueCategory { SpaceValue, NonSpaceValue };

/// Resolves a category name or alias ("Space", "NotSpace", "NonSpace",
/// "EmptySpace", ...) to its canonical category.
std::optional<ValueCategory> category_from_name(const std::string& name);
const char* to_string(ValueCategory c);

enum class Usage { Locational, Qualitative };

enum class FrameKind { Unit, Aggregate, Range };
std::optional<FrameKind> frame_kind_from_name(const std::string& name);
const char* to_string(FrameKind k);
std::optional<Usage> usage_from_name(const std::string& name);
const char* to_string(Usage u);

struct Value {
    enum class Kind { Integer, Enum, String };

    Kind kind = Kind::Integer;
    std::int64_t int_value = 0;
    std::string symbol;     // enum symbol or string payload
    std::string value_set;  // owning set name for enum values (may be empty)
    std::optional<ValueCategory> category;

    static Value integer(std::int64_t v);
    static Value enumerated(std::string symbol, std::string owning_set = {});
    static Value string_value(std::string s);

    bool operator==(const Value& other) const;
    bool operator<(const Value& other) const;  // total order, kind-major
    std::string display() const;
};

struct ValueRange {
    Value lo;
    Value hi;
};

/// Language-tagged word lists attached to a definition or enum member.
struct Dictionary {
    std::vector<std::pair<std::string, std::vector<std::string>>> entries;

    bool operator==(const Dictionary&) const = default;
    bool empty() const { return entries.empty(); }
    bool contains(const std::string& word, const std::string& language) const;
    void add(const std::string& language, std::string word);
};

struct EnumMember {
    std::string symbol;
    Dictionary dictionary;
    std::optional<ValueCategory> category;
};

/// A named, finite value domain: either an enumerated symbol list or a
/// closed integer interval.
struct AttributeValueSet {
    std::string name;
    std::optional<std::string> base;  // unit-of-measure chain
    Usage usage = Usage::Qualitative;
    std::vector<EnumMember> members;
    std::optional<std::pair<std::int64_t, std::int64_t>> interval;

    bool is_enumerated() const { return !members.empty(); }
    bool is_interval() const { return interval.has_value(); }

    /// Checks the structural invariants (unique symbols, lo <= hi,
    /// qualitative intervals start at >= 0). Throws on violation.
    void validate() const;

    const EnumMember* find_member(const std::string& symbol) const;
    std::size_t size() const;
    std::vector<Value> enumerate() const;  // throws InfiniteSet when unbounded
};

struct AttributeType {
    std::string name;
    Usage super_type = Usage::Qualitative;
    AttributeValueSet values;  // inline or resolved from a named set
};

/// The value side of an attribute. Beyond a single constant it may carry a
/// range, a math expression, a function reference, or a template reference.
struct AttrValue {
    enum class Kind { Single, Range, Expression, FunctionRef, TemplateRef };

    Kind kind = Kind::Single;
    Value single;
    ValueRange range;
    std::string text;  // expression source / function name / template name

    static AttrValue of(Value v);
    static AttrValue of(ValueRange r);
};

struct Attribute {
    std::string type_ref;
    AttrValue value;
};

/// A fully specified fact: at least one locational plus one qualitative
/// attribute.
struct TwoPartAttributeCluster {
    std::vector<Attribute> locational;
    std::vector<Attribute> qualitative;
};

struct DimensionSystem {
    std::string name;
    std::vector<AttributeType> spatial;
    std::vector<AttributeType> temporal;

    std::vector<const AttributeType*> all_types() const;
    const AttributeType* find_type(const std::string& name) const;
};

struct SpecificationSystem {
    std::string name;
    std::string dimension_system;
    std::vector<AttributeType> inner_content;
};

/// Affine value-set mapping f(x) = a*x + b with exact rational coefficients.
struct Mapping {
    std::string name;
    std::string source;
    std::string dest;
    Rational a{1};
    Rational b{0};

    Rational apply_exact(std::int64_t x) const { return a * Rational(x) + b; }
};

/// A complete assignment over a dimension system's attribute types.
struct DimensionSetExpression {
    std::string dimension_system;
    std::vector<std::pair<std::string, AttrValue>> assignments;

    const AttrValue* find(const std::string& attribute_type) const;
};

// ---- Core operations ----

/// True iff v is a member of the set. Throws TypeMismatch when v's variant
/// cannot belong to the set's member kind.
bool value_in_set(const AttributeValueSet& set, const Value& v);

struct MappingResult {
    Rational exact;
    std::int64_t rounded = 0;
};

/// Applies a mapping to a source-set member, returning the exact rational
/// image and its half-away-from-zero rounding into the destination set.
MappingResult apply_mapping(const Mapping& m, const AttributeValueSet& source,
                            const AttributeValueSet& dest, const Value& v);

/// Finite complement: all members of set not in excluded. Negation is
/// realized this way throughout.
std::vector<Value> complement_values(const AttributeValueSet& set,
                                     const std::vector<Value>& excluded);

} // namespace ross
