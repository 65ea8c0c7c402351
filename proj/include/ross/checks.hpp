#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ross/value.hpp"

namespace ross {

enum class Severity { Warning, Error };

struct Finding {
    Severity severity = Severity::Error;
    std::string definition;  // definition path, e.g. "VehicleObjectClass.Color"
    std::string check;       // e.g. "OutOfSet", "MissingAssignment"
    std::string message;
};

struct ValidationReport {
    std::vector<Finding> findings;

    bool ok() const;
    std::size_t error_count() const;
    void add(Severity s, std::string definition, std::string check, std::string message);
    /// Line-oriented form: "SEVERITY def-path check message".
    std::string to_text() const;
};

/// Resolves attribute type names; implemented by the Infopedia (and by
/// map-backed stand-ins in tests). Returns nullptr for unknown names.
using TypeResolver = std::function<const AttributeType*(const std::string&)>;

/// Completeness + membership check of a dimension set expression against its
/// dimension system. Violations are findings, never exceptions.
ValidationReport check_dimension_set_expression(const DimensionSystem& system,
                                                const DimensionSetExpression& expr);

/// Classifies a flat attribute list into a two-part cluster and checks it:
/// >= 1 locational, >= 1 qualitative, every value in its type's set.
/// Dangling type references throw UnresolvedType.
ValidationReport check_two_part_cluster(const std::vector<Attribute>& attributes,
                                        const TypeResolver& resolve,
                                        TwoPartAttributeCluster* out = nullptr);

} // namespace ross
