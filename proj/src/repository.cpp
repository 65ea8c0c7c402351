#include "ross/repository.hpp"

#include <algorithm>
#include <sstream>

namespace ross {

std::string TimePoint::default_label(int ordinal) {
    std::ostringstream os;
    os << 'T';
    if (ordinal < 10) os << '0';
    os << ordinal;
    return os.str();
}

bool Cuboid::contains(const Coord& c) const {
    return c.x >= lo.x && c.x <= hi.x && c.y >= lo.y && c.y <= hi.y && c.z >= lo.z &&
           c.z <= hi.z;
}

bool Cuboid::contains(const Cuboid& inner) const {
    return contains(inner.lo) && contains(inner.hi);
}

std::int64_t Cuboid::volume() const {
    return (hi.x - lo.x + 1) * (hi.y - lo.y + 1) * (hi.z - lo.z + 1);
}

ObjectFrameInstance* ObjectFrameInstance::find(const std::string& wanted) {
    if (id == wanted) return this;
    for (auto& child : children)
        if (auto* hit = child->find(wanted)) return hit;
    return nullptr;
}

const ObjectFrameInstance* ObjectFrameInstance::find(const std::string& wanted) const {
    return const_cast<ObjectFrameInstance*>(this)->find(wanted);
}

const Attribute* ObjectFrameInstance::find_attribute(const std::string& type_ref) const {
    for (const auto& a : attributes)
        if (a.type_ref == type_ref) return &a;
    return nullptr;
}

void ObjectFrameInstance::set_attribute(const std::string& type_ref, AttrValue v) {
    for (auto& a : attributes) {
        if (a.type_ref == type_ref) {
            a.value = std::move(v);
            return;
        }
    }
    attributes.push_back({type_ref, std::move(v)});
}

void CellStore::put(const Coord& c, int t, Value v) {
    Key k{c.x, c.y, c.z, t};
    auto it = cells_.find(k);
    if (it != cells_.end()) {
        if (!(it->second == v)) {
            std::ostringstream os;
            os << "overwrite (" << c.x << "," << c.y << "," << c.z << ",T" << t << "): "
               << it->second.display() << " -> " << v.display();
            audit_.push_back(os.str());
        }
        it->second = std::move(v);
        return;
    }
    cells_.emplace(k, std::move(v));
}

const Value* CellStore::get(const Coord& c, int t) const {
    auto it = cells_.find(Key{c.x, c.y, c.z, t});
    return it == cells_.end() ? nullptr : &it->second;
}

const Value* CellStore::latest_at_or_before(const Coord& c, int t, int* found_t) const {
    // Keys sort by (x, y, z, t), so the temporal slice of one cell is
    // contiguous; walk back from the first key past (c, t).
    auto it = cells_.upper_bound(Key{c.x, c.y, c.z, t});
    if (it == cells_.begin()) return nullptr;
    --it;
    const auto& [x, y, z, tt] = it->first;
    if (x != c.x || y != c.y || z != c.z) return nullptr;
    if (found_t) *found_t = tt;
    return &it->second;
}

int Situation::find_time_point(const std::string& label) const {
    for (const auto& tp : timeline)
        if (tp.label == label) return tp.ordinal;
    throw Error(ErrorCode::UnknownTimePoint, "unknown time point \"" + label + "\"");
}

const TimePoint& Situation::time_point(int ordinal) const {
    if (ordinal < 1 || ordinal > static_cast<int>(timeline.size()))
        throw Error(ErrorCode::UnknownTimePoint,
                    "time point ordinal " + std::to_string(ordinal) + " is off the timeline");
    return timeline[static_cast<std::size_t>(ordinal - 1)];
}

int Situation::ensure_time_point(int ordinal) {
    if (ordinal < 1)
        throw Error(ErrorCode::UnknownTimePoint,
                    "time point ordinal " + std::to_string(ordinal) + " is off the timeline");
    while (static_cast<int>(timeline.size()) < ordinal) {
        int next = static_cast<int>(timeline.size()) + 1;
        timeline.push_back({next, TimePoint::default_label(next)});
    }
    return ordinal;
}

ObjectFrameInstance* Situation::find_instance(const std::string& id) {
    return root ? root->find(id) : nullptr;
}

const ObjectFrameInstance* Situation::find_instance(const std::string& id) const {
    return root ? root->find(id) : nullptr;
}

const char* to_string(ContextKind k) {
    switch (k) {
    case ContextKind::Present: return "Present";
    case ContextKind::Past: return "Past";
    case ContextKind::Hypothetical: return "Hypothetical";
    case ContextKind::CommunicatedContent: return "CommunicatedContent";
    }
    return "?";
}

std::optional<ContextKind> context_kind_from_name(const std::string& name) {
    if (name == "Present") return ContextKind::Present;
    if (name == "Past") return ContextKind::Past;
    if (name == "Hypothetical") return ContextKind::Hypothetical;
    if (name == "CommunicatedContent") return ContextKind::CommunicatedContent;
    return std::nullopt;
}

Context& InstanceModel::ensure_context(const std::string& id, ContextKind kind) {
    for (auto& c : contexts)
        if (c.id == id) return c;
    Context c;
    c.id = id;
    c.kind = kind;
    c.situation.empty_space = empty_space;
    c.situation.permanent_attachments = permanent_attachments;
    c.situation.perpetuation = perpetuation;
    contexts.push_back(std::move(c));
    return contexts.back();
}

Value space_default() {
    Value v = Value::enumerated("EmptySpace");
    v.category = ValueCategory::SpaceValue;
    return v;
}

static void check_cell_coords(const Situation& s, const Coord& c, int t) {
    if (!s.extents.contains(c)) {
        std::ostringstream os;
        os << "cell (" << c.x << "," << c.y << "," << c.z << ") is outside the extents ("
           << s.extents.lo.x << ".." << s.extents.hi.x << "," << s.extents.lo.y << ".."
           << s.extents.hi.y << "," << s.extents.lo.z << ".." << s.extents.hi.z << ")";
        throw Error(ErrorCode::OutOfExtent, os.str());
    }
    if (t < 1 || t > static_cast<int>(s.timeline.size()))
        throw Error(ErrorCode::UnknownTimePoint,
                    "time point ordinal " + std::to_string(t) + " is off the timeline");
}

std::optional<Value> read_cell(const Situation& s, const Coord& c, int t) {
    check_cell_coords(s, c, t);
    if (const Value* v = s.cells.get(c, t)) return *v;
    if (s.perpetuation)
        if (const Value* v = s.cells.latest_at_or_before(c, t)) return *v;
    if (s.empty_space) return space_default();
    return std::nullopt;
}

std::optional<Value> read_cell(const Situation& s, const Coord& c, const std::string& label) {
    return read_cell(s, c, s.find_time_point(label));
}

void write_cell(Situation& s, const Coord& c, int t, Value v) {
    check_cell_coords(s, c, t);
    if (v.kind == Value::Kind::Enum && !s.essential_set.name.empty()) {
        if (!value_in_set(s.essential_set, v) &&
            !(v.symbol == "EmptySpace" && v.category == ValueCategory::SpaceValue))
            throw Error(ErrorCode::OutOfSet, "value " + v.display() + " is not in value set " +
                                                 s.essential_set.name);
        if (const EnumMember* m = s.essential_set.find_member(v.symbol)) {
            if (v.value_set.empty()) v.value_set = s.essential_set.name;
            if (!v.category) v.category = m->category;
        }
    }
    s.cells.put(c, t, std::move(v));
}

std::string dump_cells_csv(const Situation& s) {
    std::ostringstream os;
    os << "x,y,z,t,value\n";
    for (const auto& [key, value] : s.cells.entries()) {
        const auto& [x, y, z, t] = key;
        os << x << ',' << y << ',' << z << ',' << s.time_point(t).label << ','
           << value.display() << '\n';
    }
    return os.str();
}

std::size_t ShapePattern::non_space_count() const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(),
                      [](const auto& kv) { return kv.second == ValueCategory::NonSpaceValue; }));
}

void ShapePattern::validate() const {
    if (ex < 1 || ey < 1 || ez < 1)
        throw Error(ErrorCode::ExtentOverflow, "shape pattern extents must be >= 1");
    for (const auto& [key, cat] : cells) {
        (void)cat;
        const auto& [x, y, z] = key;
        if (x < 1 || x > ex || y < 1 || y > ey || z < 1 || z > ez)
            throw Error(ErrorCode::OutOfExtent,
                        "shape pattern cell (" + std::to_string(x) + "," + std::to_string(y) +
                            "," + std::to_string(z) + ") is outside its extent");
    }
    if (non_space_count() == 0)
        throw Error(ErrorCode::OutOfSet, "shape pattern has no non-space cell");
}

ShapePattern magnify_shape_pattern(const ShapePattern& p, std::int64_t fx, std::int64_t fy,
                                   std::int64_t fz) {
    if (fx < 1 || fy < 1 || fz < 1)
        throw Error(ErrorCode::ZeroFactor, "magnification factors must be >= 1");
    ShapePattern out;
    out.ex = p.ex * fx;
    out.ey = p.ey * fy;
    out.ez = p.ez * fz;
    for (const auto& [key, cat] : p.cells) {
        const auto& [x, y, z] = key;
        for (std::int64_t dx = 0; dx < fx; ++dx)
            for (std::int64_t dy = 0; dy < fy; ++dy)
                for (std::int64_t dz = 0; dz < fz; ++dz)
                    out.cells[{(x - 1) * fx + 1 + dx, (y - 1) * fy + 1 + dy,
                               (z - 1) * fz + 1 + dz}] = cat;
    }
    return out;
}

} // namespace ross
