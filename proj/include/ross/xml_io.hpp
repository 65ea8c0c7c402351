#pragma once

#include <string>

#include "ross/repository.hpp"

namespace ross {

/// Serializes an instance model into the canonical XML layout (declaration,
/// InstanceModel, one ConceptualModel per context, GlobalAssumptions,
/// StructuralParent with per-time-point InstanceStructure). Output is
/// deterministic; export(import(export(m))) is byte-identical to export(m).
/// Cell values are not part of the XML; use dump_cells_csv for those.
std::string export_xml(const InstanceModel& model);

/// Parses the canonical layout back into an instance model. Violations throw
/// SchemaViolation with the offending element path. Regions and cell stores
/// are not represented in XML and come back empty.
InstanceModel import_xml(const std::string& xml);

} // namespace ross
