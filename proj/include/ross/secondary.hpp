#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ross/checks.hpp"
#include "ross/repository.hpp"
#include "ross/value.hpp"

namespace ross {

/// Information strata: primary facts plus the derived layers built on top of
/// them.
enum class Stratum { Primary, Disjunction, Negation, Tertiary };
const char* to_string(Stratum s);

/// One attribute whose value ranges over a finite set rather than a single
/// constant; the workhorse of the non-primary strata.
struct StratifiedAttr {
    std::string type_ref;
    std::vector<Value> allowed;

    bool operator==(const StratifiedAttr&) const = default;
};

struct StratifiedAssertion {
    Stratum stratum = Stratum::Primary;
    std::vector<StratifiedAttr> locational;
    std::vector<StratifiedAttr> qualitative;
};

/// Center-to-center Euclidean distance between two regions, exact squared
/// distance first, then rounded half-away-from-zero to whole cells. No
/// floating point is involved.
Rational distance_squared(const Cuboid& a, const Cuboid& b);
std::int64_t derive_distance(const Cuboid& a, const Cuboid& b);

/// Nearest integer to sqrt(q), ties rounded away from zero; q must be >= 0.
std::int64_t rounded_sqrt(const Rational& q);

/// Number of immediate components of an instance.
std::size_t count_components(const ObjectFrameInstance& inst);

/// All instances of the subtree (root included) satisfying the predicate, in
/// depth-first pre-order.
std::vector<const ObjectFrameInstance*> collect(
    const ObjectFrameInstance& root,
    const std::function<bool(const ObjectFrameInstance&)>& predicate);

/// Identifiers of every transitive part of the instance, breadth-first, each
/// level in attachment order. The instance itself is excluded.
std::vector<std::string> part_of_closure(const ObjectFrameInstance& root);

/// Negation by finite complement: every attribute value of the cluster is
/// replaced by all other members of its type's value set. Integer ranges
/// exclude the whole range. Dangling type references throw UnresolvedType;
/// unbounded sets throw InfiniteSet.
StratifiedAssertion negate(const TwoPartAttributeCluster& cluster, const TypeResolver& resolve);

/// Negation over locations: every cell of the extents cuboid that lies
/// outside the region, in lexicographic (x, y, z) order.
std::vector<Coord> complement_region(const Cuboid& extents, const Cuboid& region);

/// Derived spatial relationship: a rests directly on top of b (b's top face
/// touches a's bottom face and their footprints overlap).
bool on_top_of(const Cuboid& a, const Cuboid& b);

} // namespace ross
