#include "ross/checks.hpp"

#include <set>
#include <sstream>

namespace ross {

bool ValidationReport::ok() const { return error_count() == 0; }

std::size_t ValidationReport::error_count() const {
    std::size_t n = 0;
    for (const auto& f : findings)
        if (f.severity == Severity::Error) ++n;
    return n;
}

void ValidationReport::add(Severity s, std::string definition, std::string check,
                           std::string message) {
    findings.push_back({s, std::move(definition), std::move(check), std::move(message)});
}

std::string ValidationReport::to_text() const {
    std::ostringstream out;
    for (const auto& f : findings) {
        out << (f.severity == Severity::Error ? "ERROR" : "WARNING") << " " << f.definition
            << " " << f.check << " " << f.message << "\n";
    }
    return out.str();
}

namespace {

bool attr_value_in_set(const AttrValue& value, const AttributeValueSet& set) {
    switch (value.kind) {
        case AttrValue::Kind::Single:
            return value_in_set(set, value.single);
        case AttrValue::Kind::Range: {
            if (!value_in_set(set, value.range.lo) || !value_in_set(set, value.range.hi))
                return false;
            if (value.range.lo.kind == Value::Kind::Integer &&
                value.range.hi.kind == Value::Kind::Integer)
                return value.range.lo.int_value <= value.range.hi.int_value;
            return true;
        }
        default:
            // Expressions and references are resolved elsewhere; membership
            // cannot be judged here.
            return true;
    }
}

} // namespace

ValidationReport check_dimension_set_expression(const DimensionSystem& system,
                                                const DimensionSetExpression& expr) {
    ValidationReport report;
    std::set<std::string> assigned;
    for (const auto& [type_name, value] : expr.assignments) {
        if (!assigned.insert(type_name).second) {
            report.add(Severity::Error, type_name, "DuplicateAssignment",
                       "attribute type assigned more than once");
            continue;
        }
        const AttributeType* type = system.find_type(type_name);
        if (!type) {
            report.add(Severity::Error, type_name, "UnknownAttributeType",
                       "not a member of dimension system '" + system.name + "'");
            continue;
        }
        try {
            if (!attr_value_in_set(value, type->values))
                report.add(Severity::Error, type_name, "OutOfSet",
                           "assigned value is not a member of the type's value set");
        } catch (const Error& e) {
            report.add(Severity::Error, type_name, "OutOfSet", e.what());
        }
    }
    for (const auto* type : system.all_types()) {
        if (!assigned.count(type->name))
            report.add(Severity::Error, type->name, "MissingAssignment",
                       "dimension system '" + system.name + "' attribute type is unassigned");
    }
    return report;
}

ValidationReport check_two_part_cluster(const std::vector<Attribute>& attributes,
                                        const TypeResolver& resolve,
                                        TwoPartAttributeCluster* out) {
    ValidationReport report;
    TwoPartAttributeCluster cluster;
    for (const auto& attr : attributes) {
        const AttributeType* type = resolve(attr.type_ref);
        if (!type)
            throw Error(ErrorCode::UnresolvedType,
                        "attribute type '" + attr.type_ref + "' does not resolve");
        try {
            if (!attr_value_in_set(attr.value, type->values))
                report.add(Severity::Error, attr.type_ref, "OutOfSet",
                           "value is not a member of the type's value set");
        } catch (const Error& e) {
            report.add(Severity::Error, attr.type_ref, "OutOfSet", e.what());
        }
        if (type->super_type == Usage::Locational)
            cluster.locational.push_back(attr);
        else
            cluster.qualitative.push_back(attr);
    }
    if (cluster.locational.empty())
        report.add(Severity::Error, "(cluster)", "MissingLocational",
                   "a two-part cluster requires at least one locational attribute");
    if (cluster.qualitative.empty())
        report.add(Severity::Error, "(cluster)", "MissingQualitative",
                   "a two-part cluster requires at least one qualitative attribute");
    if (out) *out = std::move(cluster);
    return report;
}

} // namespace ross
