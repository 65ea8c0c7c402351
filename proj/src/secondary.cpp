#include "ross/secondary.hpp"

#include <deque>

namespace ross {

const char* to_string(Stratum s) {
    switch (s) {
    case Stratum::Primary: return "Primary";
    case Stratum::Disjunction: return "Disjunction";
    case Stratum::Negation: return "Negation";
    case Stratum::Tertiary: return "Tertiary";
    }
    return "?";
}

Rational distance_squared(const Cuboid& a, const Cuboid& b) {
    Rational dx = a.center_x() - b.center_x();
    Rational dy = a.center_y() - b.center_y();
    Rational dz = a.center_z() - b.center_z();
    return dx * dx + dy * dy + dz * dz;
}

std::int64_t rounded_sqrt(const Rational& q) {
    if (q < Rational(0)) throw Error(ErrorCode::TypeMismatch, "sqrt of a negative rational");
    // Smallest n with (n + 1/2)^2 > q, i.e. (2n+1)^2 * den > 4 * num.
    std::int64_t num = q.numerator();
    std::int64_t den = q.denominator();
    std::int64_t n = 0;
    while ((2 * n + 1) * (2 * n + 1) * den <= 4 * num) ++n;
    return n;
}

std::int64_t derive_distance(const Cuboid& a, const Cuboid& b) {
    return rounded_sqrt(distance_squared(a, b));
}

std::size_t count_components(const ObjectFrameInstance& inst) { return inst.children.size(); }

static void collect_into(const ObjectFrameInstance& node,
                         const std::function<bool(const ObjectFrameInstance&)>& predicate,
                         std::vector<const ObjectFrameInstance*>& out) {
    if (predicate(node)) out.push_back(&node);
    for (const auto& child : node.children) collect_into(*child, predicate, out);
}

std::vector<const ObjectFrameInstance*> collect(
    const ObjectFrameInstance& root,
    const std::function<bool(const ObjectFrameInstance&)>& predicate) {
    std::vector<const ObjectFrameInstance*> out;
    collect_into(root, predicate, out);
    return out;
}

std::vector<std::string> part_of_closure(const ObjectFrameInstance& root) {
    std::vector<std::string> out;
    std::deque<const ObjectFrameInstance*> queue;
    for (const auto& child : root.children) queue.push_back(child.get());
    while (!queue.empty()) {
        const ObjectFrameInstance* node = queue.front();
        queue.pop_front();
        out.push_back(node->id);
        for (const auto& child : node->children) queue.push_back(child.get());
    }
    return out;
}

static std::vector<Value> expand_attr_value(const AttrValue& v) {
    if (v.kind == AttrValue::Kind::Single) return {v.single};
    if (v.kind == AttrValue::Kind::Range) {
        if (v.range.lo.kind != Value::Kind::Integer || v.range.hi.kind != Value::Kind::Integer)
            throw Error(ErrorCode::TypeMismatch, "only integer ranges can be expanded");
        std::vector<Value> out;
        for (std::int64_t i = v.range.lo.int_value; i <= v.range.hi.int_value; ++i)
            out.push_back(Value::integer(i));
        return out;
    }
    throw Error(ErrorCode::TypeMismatch, "only constant attribute values can be negated");
}

StratifiedAssertion negate(const TwoPartAttributeCluster& cluster, const TypeResolver& resolve) {
    StratifiedAssertion out;
    out.stratum = Stratum::Negation;
    auto negate_part = [&](const std::vector<Attribute>& part,
                           std::vector<StratifiedAttr>& into) {
        for (const auto& attr : part) {
            const AttributeType* type = resolve(attr.type_ref);
            if (!type)
                throw Error(ErrorCode::UnresolvedType,
                            "attribute type \"" + attr.type_ref + "\" does not resolve");
            StratifiedAttr s;
            s.type_ref = attr.type_ref;
            s.allowed = complement_values(type->values, expand_attr_value(attr.value));
            into.push_back(std::move(s));
        }
    };
    negate_part(cluster.locational, out.locational);
    negate_part(cluster.qualitative, out.qualitative);
    return out;
}

std::vector<Coord> complement_region(const Cuboid& extents, const Cuboid& region) {
    std::vector<Coord> out;
    for (std::int64_t x = extents.lo.x; x <= extents.hi.x; ++x)
        for (std::int64_t y = extents.lo.y; y <= extents.hi.y; ++y)
            for (std::int64_t z = extents.lo.z; z <= extents.hi.z; ++z) {
                Coord c{x, y, z};
                if (!region.contains(c)) out.push_back(c);
            }
    return out;
}

bool on_top_of(const Cuboid& a, const Cuboid& b) {
    if (a.lo.z != b.hi.z + 1) return false;
    bool x_overlap = a.lo.x <= b.hi.x && b.lo.x <= a.hi.x;
    bool y_overlap = a.lo.y <= b.hi.y && b.lo.y <= a.hi.y;
    return x_overlap && y_overlap;
}

} // namespace ross
