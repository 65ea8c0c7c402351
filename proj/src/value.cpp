#include "ross/value.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace ross {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::TypeMismatch: return "TypeMismatch";
        case ErrorCode::SourceMembership: return "SourceMembership";
        case ErrorCode::DestOverflow: return "DestOverflow";
        case ErrorCode::InfiniteSet: return "InfiniteSet";
        case ErrorCode::UnresolvedType: return "UnresolvedType";
        case ErrorCode::UnresolvedRef: return "UnresolvedRef";
        case ErrorCode::DuplicateName: return "DuplicateName";
        case ErrorCode::SuperTypeMismatch: return "SuperTypeMismatch";
        case ErrorCode::NonIntegerLocational: return "NonIntegerLocational";
        case ErrorCode::InheritanceCycle: return "InheritanceCycle";
        case ErrorCode::NotInstantiable: return "NotInstantiable";
        case ErrorCode::ParentExtentViolation: return "ParentExtentViolation";
        case ErrorCode::DuplicateIdentifier: return "DuplicateIdentifier";
        case ErrorCode::IncompleteRelToParent: return "IncompleteRelToParent";
        case ErrorCode::KindMismatch: return "KindMismatch";
        case ErrorCode::OutOfSet: return "OutOfSet";
        case ErrorCode::ZeroFactor: return "ZeroFactor";
        case ErrorCode::ExtentOverflow: return "ExtentOverflow";
        case ErrorCode::PathUnresolved: return "PathUnresolved";
        case ErrorCode::OutOfExtent: return "OutOfExtent";
        case ErrorCode::UnknownTimePoint: return "UnknownTimePoint";
        case ErrorCode::SchemaViolation: return "SchemaViolation";
        case ErrorCode::ImpreciseLocation: return "ImpreciseLocation";
        case ErrorCode::MissingAtTime: return "MissingAtTime";
        case ErrorCode::BridgeMismatch: return "BridgeMismatch";
        case ErrorCode::WriteConflict: return "WriteConflict";
        case ErrorCode::MissingLocational: return "MissingLocational";
        case ErrorCode::MissingQualitative: return "MissingQualitative";
        case ErrorCode::LexError: return "LexError";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UsageError: return "UsageError";
    }
    return "UnknownError";
}

Rational rational_from_decimal(const std::string& text) {
    std::string s = text;
    bool negative = false;
    std::size_t pos = 0;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
        negative = s[pos] == '-';
        ++pos;
    }
    std::int64_t numerator = 0;
    std::int64_t denominator = 1;
    bool seen_digit = false;
    bool in_fraction = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c == '.') {
            if (in_fraction) throw Error(ErrorCode::ParseError, "bad decimal literal: " + text);
            in_fraction = true;
            continue;
        }
        if (c < '0' || c > '9')
            throw Error(ErrorCode::ParseError, "bad decimal literal: " + text);
        numerator = numerator * 10 + (c - '0');
        if (in_fraction) denominator *= 10;
        seen_digit = true;
    }
    if (!seen_digit) throw Error(ErrorCode::ParseError, "bad decimal literal: " + text);
    Rational r(numerator, denominator);
    return negative ? -r : r;
}

std::int64_t round_half_away_from_zero(const Rational& r) {
    std::int64_t n = r.numerator();
    std::int64_t d = r.denominator();  // boost keeps d > 0
    std::int64_t magnitude_n = n < 0 ? -n : n;
    std::int64_t q = (2 * magnitude_n + d) / (2 * d);
    return n < 0 ? -q : q;
}

std::string to_string(const Rational& r) {
    std::ostringstream out;
    out << r.numerator();
    if (r.denominator() != 1) out << "/" << r.denominator();
    return out.str();
}

std::optional<ValueCategory> category_from_name(const std::string& name) {
    if (name == "SpaceValue" || name == "Space" || name == "EmptySpace")
        return ValueCategory::SpaceValue;
    if (name == "NonSpaceValue" || name == "NotSpace" || name == "NonSpace")
        return ValueCategory::NonSpaceValue;
    return std::nullopt;
}

const char* to_string(ValueCategory c) {
    return c == ValueCategory::SpaceValue ? "SpaceValue" : "NonSpaceValue";
}

std::optional<Usage> usage_from_name(const std::string& name) {
    // Trim: paper listings occasionally carry stray blanks inside tag strings.
    std::size_t b = name.find_first_not_of(" \t");
    std::size_t e = name.find_last_not_of(" \t");
    std::string t = b == std::string::npos ? std::string() : name.substr(b, e - b + 1);
    if (t == "Locational" || t == "LocationAttributeType") return Usage::Locational;
    if (t == "Qualitative" || t == "QualityAttributeType") return Usage::Qualitative;
    return std::nullopt;
}

const char* to_string(Usage u) {
    return u == Usage::Locational ? "Locational" : "Qualitative";
}

std::optional<FrameKind> frame_kind_from_name(const std::string& name) {
    if (name == "Unit") return FrameKind::Unit;
    if (name == "Aggregate") return FrameKind::Aggregate;
    if (name == "Range") return FrameKind::Range;
    return std::nullopt;
}

const char* to_string(FrameKind k) {
    switch (k) {
    case FrameKind::Unit: return "Unit";
    case FrameKind::Aggregate: return "Aggregate";
    case FrameKind::Range: return "Range";
    }
    return "?";
}

Value Value::integer(std::int64_t v) {
    Value out;
    out.kind = Kind::Integer;
    out.int_value = v;
    return out;
}

Value Value::enumerated(std::string symbol, std::string owning_set) {
    Value out;
    out.kind = Kind::Enum;
    out.symbol = std::move(symbol);
    out.value_set = std::move(owning_set);
    return out;
}

Value Value::string_value(std::string s) {
    Value out;
    out.kind = Kind::String;
    out.symbol = std::move(s);
    return out;
}

bool Value::operator==(const Value& other) const {
    if (kind != other.kind) return false;
    if (kind == Kind::Integer) return int_value == other.int_value;
    return symbol == other.symbol;
}

bool Value::operator<(const Value& other) const {
    if (kind != other.kind) return kind < other.kind;
    if (kind == Kind::Integer) return int_value < other.int_value;
    return symbol < other.symbol;
}

std::string Value::display() const {
    if (kind == Kind::Integer) return std::to_string(int_value);
    return symbol;
}

bool Dictionary::contains(const std::string& word, const std::string& language) const {
    for (const auto& [lang, words] : entries) {
        if (lang != language) continue;
        if (std::find(words.begin(), words.end(), word) != words.end()) return true;
    }
    return false;
}

void Dictionary::add(const std::string& language, std::string word) {
    for (auto& [lang, words] : entries) {
        if (lang == language) {
            words.push_back(std::move(word));
            return;
        }
    }
    entries.push_back({language, {std::move(word)}});
}

void AttributeValueSet::validate() const {
    if (is_enumerated() && is_interval())
        throw Error(ErrorCode::TypeMismatch,
                    "value set '" + name + "' is both enumerated and interval");
    if (is_enumerated()) {
        std::set<std::string> seen;
        for (const auto& m : members) {
            if (!seen.insert(m.symbol).second)
                throw Error(ErrorCode::DuplicateName,
                            "duplicate member '" + m.symbol + "' in value set '" + name + "'");
        }
    }
    if (is_interval()) {
        auto [lo, hi] = *interval;
        if (lo > hi)
            throw Error(ErrorCode::TypeMismatch,
                        "value set '" + name + "' interval has lo > hi");
        if (usage == Usage::Qualitative && lo < 0)
            throw Error(ErrorCode::TypeMismatch,
                        "qualitative value set '" + name + "' must be a subset of the naturals");
    }
}

const EnumMember* AttributeValueSet::find_member(const std::string& symbol) const {
    for (const auto& m : members)
        if (m.symbol == symbol) return &m;
    return nullptr;
}

std::size_t AttributeValueSet::size() const {
    if (is_enumerated()) return members.size();
    if (is_interval())
        return static_cast<std::size_t>(interval->second - interval->first + 1);
    return 0;
}

std::vector<Value> AttributeValueSet::enumerate() const {
    std::vector<Value> out;
    if (is_enumerated()) {
        out.reserve(members.size());
        for (const auto& m : members) {
            Value v = Value::enumerated(m.symbol, name);
            v.category = m.category;
            out.push_back(std::move(v));
        }
        return out;
    }
    if (is_interval()) {
        for (std::int64_t i = interval->first; i <= interval->second; ++i)
            out.push_back(Value::integer(i));
        return out;
    }
    throw Error(ErrorCode::InfiniteSet, "value set '" + name + "' has no finite member list");
}

std::vector<const AttributeType*> DimensionSystem::all_types() const {
    std::vector<const AttributeType*> out;
    for (const auto& t : spatial) out.push_back(&t);
    for (const auto& t : temporal) out.push_back(&t);
    return out;
}

const AttributeType* DimensionSystem::find_type(const std::string& type_name) const {
    for (const auto* t : all_types())
        if (t->name == type_name) return t;
    return nullptr;
}

AttrValue AttrValue::of(Value v) {
    AttrValue out;
    out.kind = Kind::Single;
    out.single = std::move(v);
    return out;
}

AttrValue AttrValue::of(ValueRange r) {
    AttrValue out;
    out.kind = Kind::Range;
    out.range = std::move(r);
    return out;
}

const AttrValue* DimensionSetExpression::find(const std::string& attribute_type) const {
    for (const auto& [type, value] : assignments)
        if (type == attribute_type) return &value;
    return nullptr;
}

bool value_in_set(const AttributeValueSet& set, const Value& v) {
    if (set.is_interval()) {
        if (v.kind != Value::Kind::Integer)
            throw Error(ErrorCode::TypeMismatch,
                        "non-integer value '" + v.display() + "' probed against interval set '" +
                            set.name + "'");
        return v.int_value >= set.interval->first && v.int_value <= set.interval->second;
    }
    if (set.is_enumerated()) {
        if (v.kind == Value::Kind::Integer)
            throw Error(ErrorCode::TypeMismatch,
                        "integer value probed against enumerated set '" + set.name + "'");
        return set.find_member(v.symbol) != nullptr;
    }
    // Bare IntegerConstant base sets (e.g. "Millimeter") admit any integer.
    if (v.kind != Value::Kind::Integer)
        throw Error(ErrorCode::TypeMismatch,
                    "non-integer value probed against integer set '" + set.name + "'");
    return true;
}

MappingResult apply_mapping(const Mapping& m, const AttributeValueSet& source,
                            const AttributeValueSet& dest, const Value& v) {
    if (v.kind != Value::Kind::Integer)
        throw Error(ErrorCode::TypeMismatch, "mappings apply to integer values");
    if (!value_in_set(source, v))
        throw Error(ErrorCode::SourceMembership,
                    v.display() + " is not a member of source set '" + source.name + "'");
    MappingResult result;
    result.exact = m.apply_exact(v.int_value);
    result.rounded = round_half_away_from_zero(result.exact);
    if (dest.is_interval() &&
        (result.rounded < dest.interval->first || result.rounded > dest.interval->second))
        throw Error(ErrorCode::DestOverflow,
                    "mapped value " + std::to_string(result.rounded) +
                        " falls outside destination set '" + dest.name + "'");
    return result;
}

std::vector<Value> complement_values(const AttributeValueSet& set,
                                     const std::vector<Value>& excluded) {
    std::vector<Value> all = set.enumerate();  // throws InfiniteSet when unbounded
    std::vector<Value> out;
    out.reserve(all.size());
    for (const auto& v : all) {
        if (std::find(excluded.begin(), excluded.end(), v) == excluded.end())
            out.push_back(v);
    }
    return out;
}

} // namespace ross
