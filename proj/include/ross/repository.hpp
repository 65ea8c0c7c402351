#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ross/ast.hpp"
#include "ross/value.hpp"

namespace ross {

struct TimePoint {
    int ordinal = 1;        // 1-based position on the timeline
    std::string label;      // e.g. "T01"

    static std::string default_label(int ordinal);
};

struct Coord {
    std::int64_t x = 0, y = 0, z = 0;

    bool operator==(const Coord&) const = default;
    auto operator<=>(const Coord&) const = default;
};

/// Closed axis-aligned box of cells, inclusive on both corners.
struct Cuboid {
    Coord lo;
    Coord hi;

    bool operator==(const Cuboid&) const = default;
    bool contains(const Coord& c) const;
    bool contains(const Cuboid& inner) const;
    std::int64_t volume() const;
    // Exact center per axis; halves appear for even extents.
    Rational center_x() const { return Rational(lo.x + hi.x, 2); }
    Rational center_y() const { return Rational(lo.y + hi.y, 2); }
    Rational center_z() const { return Rational(lo.z + hi.z, 2); }
};

struct Relationship {
    std::string type;    // e.g. "PartOf", "OnTopOf"
    std::string target;  // instance identifier
    bool derived = false;

    bool operator==(const Relationship&) const = default;
};

/// A live object-frame instance inside a situation. Children own their
/// subtree; identifiers are unique within a situation.
struct ObjectFrameInstance {
    std::string class_name;
    std::string id;
    FrameKind kind = FrameKind::Aggregate;
    int attached_at = 1;  // timeline ordinal at which the instance appeared

    std::optional<Cuboid> region;  // concrete placement on the master grid
    // Imprecise placement: per-axis ranges kept verbatim until narrowed.
    std::vector<std::pair<std::string, ValueRange>> located_ranges;
    std::optional<int> time_point;  // unit instances bind to one ordinal

    star::RelationshipToParentAst rel;  // as given at attach time
    std::vector<Attribute> attributes;  // populated / asserted facts
    std::vector<Relationship> relationships;

    ObjectFrameInstance* parent = nullptr;
    std::vector<std::unique_ptr<ObjectFrameInstance>> children;

    ObjectFrameInstance* find(const std::string& id);
    const ObjectFrameInstance* find(const std::string& id) const;
    const Attribute* find_attribute(const std::string& type_ref) const;
    void set_attribute(const std::string& type_ref, AttrValue v);
    std::size_t component_count() const { return children.size(); }
};

/// Sparse 4D store of explicitly written cell values. Size == number of
/// explicit writes; derived reads never add entries.
class CellStore {
public:
    using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t, int>;

    void put(const Coord& c, int t, Value v);
    const Value* get(const Coord& c, int t) const;
    /// Most recent explicit value at or before ordinal t, with its ordinal.
    const Value* latest_at_or_before(const Coord& c, int t, int* found_t = nullptr) const;
    std::size_t size() const { return cells_.size(); }
    const std::map<Key, Value>& entries() const { return cells_; }
    const std::vector<std::string>& audit() const { return audit_; }

private:
    std::map<Key, Value> cells_;
    std::vector<std::string> audit_;  // overwrite notes, oldest first
};

/// One 4D frame of reference: a structural-parent instance tree, a timeline,
/// and the sparse cell store beneath them.
struct Situation {
    std::string dimension_system;     // name, may be empty for synthetic grids
    AttributeValueSet essential_set;  // qualitative domain of cell values
    Cuboid extents;                   // master grid bounds
    std::vector<TimePoint> timeline;
    std::unique_ptr<ObjectFrameInstance> root;
    CellStore cells;

    // Global assumptions, copied from the owning model at creation.
    bool empty_space = true;
    bool permanent_attachments = true;
    bool perpetuation = true;

    bool has_root() const { return root != nullptr; }
    int find_time_point(const std::string& label) const;  // throws UnknownTimePoint
    const TimePoint& time_point(int ordinal) const;       // throws UnknownTimePoint
    int ensure_time_point(int ordinal);  // extends the timeline up to ordinal
    ObjectFrameInstance* find_instance(const std::string& id);
    const ObjectFrameInstance* find_instance(const std::string& id) const;
};

enum class ContextKind { Present, Past, Hypothetical, CommunicatedContent };
const char* to_string(ContextKind k);
std::optional<ContextKind> context_kind_from_name(const std::string& name);

struct Context {
    std::string id;
    ContextKind kind = ContextKind::Present;
    Situation situation;
};

/// Top-level container exported to / imported from XML.
struct InstanceModel {
    std::optional<std::string> source_document;
    bool empty_space = true;
    bool permanent_attachments = true;
    bool perpetuation = true;
    std::vector<Context> contexts;

    Context& ensure_context(const std::string& id = "Context-1",
                            ContextKind kind = ContextKind::Present);
};

/// Default value an unwritten cell reads as under the empty-space assumption.
Value space_default();

/// Reads a cell under the situation's assumptions: explicit value first, then
/// perpetuation from the most recent earlier write, then the empty-space
/// default. Returns nullopt (unset) when both assumptions are off or the cell
/// predates every write with empty-space off. Throws OutOfExtent /
/// UnknownTimePoint on bad coordinates.
std::optional<Value> read_cell(const Situation& s, const Coord& c, int t);
std::optional<Value> read_cell(const Situation& s, const Coord& c, const std::string& label);

/// Writes an explicit cell value after validating coordinates, the time
/// point, and membership in the situation's essential value set. Overwrites
/// append an audit note.
void write_cell(Situation& s, const Coord& c, int t, Value v);

/// Deterministic CSV dump of the explicit entries: header then one
/// "x,y,z,t,value" line per entry in key order.
std::string dump_cells_csv(const Situation& s);

/// A runtime 3D shape pattern: explicit category cells on a bounded extent,
/// unlisted cells are space.
struct ShapePattern {
    std::int64_t ex = 1, ey = 1, ez = 1;
    std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, ValueCategory> cells;

    bool operator==(const ShapePattern&) const = default;
    std::size_t non_space_count() const;
    void validate() const;  // throws on out-of-extent cells or no non-space
};

/// Integer magnification: each source cell becomes an fx x fy x fz block.
/// Factors must be >= 1 (ZeroFactor otherwise).
ShapePattern magnify_shape_pattern(const ShapePattern& p, std::int64_t fx, std::int64_t fy,
                                   std::int64_t fz);

} // namespace ross
