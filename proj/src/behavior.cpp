#include "ross/behavior.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ross {

namespace {

std::vector<Value> state_values(const Infopedia& kb, const star::BehaviorStateAst& state) {
    std::vector<Value> out;
    auto add_elements = [&](const std::vector<star::AttrElement>& elems) {
        for (const auto& e : elems) {
            if (e.value.kind != star::AttrValueAst::Kind::Single)
                throw Error(ErrorCode::TypeMismatch,
                            "behavior state \"" + state.name + "\" needs constant values");
            out.push_back(e.value.single);
        }
    };
    if (!state.poc_ref.empty()) {
        const star::PopulatedObjectClassDef* poc = kb.find_populated_class(state.poc_ref);
        if (!poc)
            throw Error(ErrorCode::UnresolvedRef, "populated object class \"" + state.poc_ref +
                                                      "\" is not registered");
        add_elements(poc->assignments);
    }
    add_elements(state.values);
    if (out.empty())
        throw Error(ErrorCode::TypeMismatch,
                    "behavior state \"" + state.name + "\" specifies no cell value");
    return out;
}

struct Offset {
    std::int64_t dx = 0, dy = 0, dz = 0;
    std::int64_t dt = 0;
    bool operator==(const Offset&) const = default;
};

} // namespace

CompiledBehavior compile_behavior(const Infopedia& kb, const star::BehaviorClassDef& def) {
    CompiledBehavior out;
    out.name = def.name;
    out.bridge = def.bridge_structural_parent;
    if (def.prior_states.empty())
        throw Error(ErrorCode::BridgeMismatch,
                    "behavior \"" + def.name + "\" has no prior state");

    // Solve the binder graph into offsets from the anchor (first prior).
    std::map<std::string, Offset> offsets;
    offsets[def.prior_states[0].name] = {};
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& c : def.binder) {
            auto from = offsets.find(c.from);
            auto to = offsets.find(c.to);
            Offset step{c.dx, c.dy, c.dz, c.dt};
            if (from != offsets.end()) {
                Offset want{from->second.dx + step.dx, from->second.dy + step.dy,
                            from->second.dz + step.dz, from->second.dt + step.dt};
                if (to == offsets.end()) {
                    offsets[c.to] = want;
                    changed = true;
                } else if (!(to->second == want)) {
                    throw Error(ErrorCode::BridgeMismatch,
                                "behavior \"" + def.name +
                                    "\" binder contradicts itself at entity \"" + c.to + "\"");
                }
            } else if (to != offsets.end()) {
                offsets[c.from] = {to->second.dx - step.dx, to->second.dy - step.dy,
                                   to->second.dz - step.dz, to->second.dt - step.dt};
                changed = true;
            }
        }
    }

    auto compile_state = [&](const star::BehaviorStateAst& state, bool prior) {
        auto it = offsets.find(state.name);
        if (it == offsets.end())
            throw Error(ErrorCode::BridgeMismatch,
                        "behavior \"" + def.name + "\" binder does not place entity \"" +
                            state.name + "\"");
        BehaviorEntity e;
        e.name = state.name;
        e.dx = it->second.dx;
        e.dy = it->second.dy;
        e.dz = it->second.dz;
        e.dt = static_cast<int>(it->second.dt);
        e.values = state_values(kb, state);
        if (!prior && e.dt < 1)
            throw Error(ErrorCode::BridgeMismatch,
                        "behavior \"" + def.name + "\" post state \"" + state.name +
                            "\" would write at dt < 1");
        return e;
    };
    for (const auto& s : def.prior_states) out.priors.push_back(compile_state(s, true));
    for (const auto& s : def.post_states) out.posts.push_back(compile_state(s, false));
    return out;
}

bool cell_matches(const Value& cell, const Value& constraint) {
    if (cell == constraint) return true;
    if (constraint.kind == Value::Kind::Enum) {
        if (auto cat = category_from_name(constraint.symbol))
            return cell.category.has_value() && *cell.category == *cat;
    }
    return false;
}

static bool entity_matches(const Situation& s, const BehaviorEntity& e, const Coord& anchor,
                           int t) {
    Coord c{anchor.x + e.dx, anchor.y + e.dy, anchor.z + e.dz};
    int tt = t + e.dt;
    if (!s.extents.contains(c) || tt < 1 || tt > static_cast<int>(s.timeline.size()))
        return false;
    std::optional<Value> cell = read_cell(s, c, tt);
    if (!cell) return false;
    return std::all_of(e.values.begin(), e.values.end(),
                       [&](const Value& v) { return cell_matches(*cell, v); });
}

std::vector<Binding> match_prior_states(const Situation& s, const CompiledBehavior& b, int t) {
    std::vector<Binding> out;
    for (std::int64_t x = s.extents.lo.x; x <= s.extents.hi.x; ++x)
        for (std::int64_t y = s.extents.lo.y; y <= s.extents.hi.y; ++y)
            for (std::int64_t z = s.extents.lo.z; z <= s.extents.hi.z; ++z) {
                Coord anchor{x, y, z};
                bool all = std::all_of(
                    b.priors.begin(), b.priors.end(),
                    [&](const BehaviorEntity& e) { return entity_matches(s, e, anchor, t); });
                if (all) out.push_back({anchor, t});
            }
    return out;
}

static void check_bridge(const Infopedia& kb, const Situation& s, const CompiledBehavior& b) {
    if (b.bridge.empty() || !s.root) return;
    if (s.root->class_name == b.bridge) return;
    if (kb.find_class(s.root->class_name)) {
        ResolvedClass cls = kb.resolve_class(s.root->class_name);
        if (std::find(cls.ancestry.begin(), cls.ancestry.end(), b.bridge) != cls.ancestry.end())
            return;
    }
    throw Error(ErrorCode::BridgeMismatch,
                "behavior \"" + b.name + "\" bridges \"" + b.bridge +
                    "\" but the situation's structural parent is a \"" +
                    (s.root ? s.root->class_name : std::string("<none>")) + "\"");
}

void apply_behavior(const Infopedia& kb, Situation& s, const CompiledBehavior& b,
                    const Binding& binding) {
    check_bridge(kb, s, b);
    // Validate every post cell before the first write so a bad binding
    // cannot leave a half-applied behavior behind.
    for (const auto& e : b.posts) {
        Coord c{binding.anchor.x + e.dx, binding.anchor.y + e.dy, binding.anchor.z + e.dz};
        if (!s.extents.contains(c))
            throw Error(ErrorCode::ExtentOverflow,
                        "behavior \"" + b.name + "\" post state \"" + e.name +
                            "\" falls outside the grid");
    }
    for (const auto& e : b.posts) {
        Coord c{binding.anchor.x + e.dx, binding.anchor.y + e.dy, binding.anchor.z + e.dz};
        int t = binding.t + e.dt;
        s.ensure_time_point(t);
        for (const auto& v : e.values) write_cell(s, c, t, v);
    }
}

StepResult step_simulation(const Infopedia& kb, Situation& s,
                           const std::vector<CompiledBehavior>& behaviors, int t) {
    struct Staged {
        Value value;
        std::string source;
    };
    std::map<CellStore::Key, Staged> staged;
    StepResult result;

    for (const auto& b : behaviors) {
        check_bridge(kb, s, b);
        for (const auto& binding : match_prior_states(s, b, t)) {
            ++result.bindings;
            for (const auto& e : b.posts) {
                Coord c{binding.anchor.x + e.dx, binding.anchor.y + e.dy,
                        binding.anchor.z + e.dz};
                if (!s.extents.contains(c))
                    throw Error(ErrorCode::ExtentOverflow,
                                "behavior \"" + b.name + "\" post state \"" + e.name +
                                    "\" falls outside the grid");
                int tt = t + e.dt;
                for (const auto& v : e.values) {
                    CellStore::Key key{c.x, c.y, c.z, tt};
                    auto it = staged.find(key);
                    if (it != staged.end() && !(it->second.value == v)) {
                        std::ostringstream os;
                        os << "behaviors " << it->second.source << " and " << b.name
                           << " write conflicting values to cell (" << c.x << "," << c.y << ","
                           << c.z << ",T" << tt << ")";
                        throw Error(ErrorCode::WriteConflict, os.str());
                    }
                    staged[key] = {v, b.name};
                }
            }
        }
    }
    for (const auto& [key, w] : staged) {
        const auto& [x, y, z, tt] = key;
        s.ensure_time_point(tt);
        write_cell(s, Coord{x, y, z}, tt, w.value);
        ++result.writes;
    }
    return result;
}

bool evaluate_assertion(const Situation& s, const RuleAssertion& a) {
    for (const Coord& c : a.locations) {
        if (!s.extents.contains(c)) continue;
        if (a.t < 1 || a.t > static_cast<int>(s.timeline.size())) continue;
        std::optional<Value> cell = read_cell(s, c, a.t);
        if (!cell) continue;
        bool hit = std::any_of(a.allowed.begin(), a.allowed.end(),
                               [&](const Value& v) { return cell_matches(*cell, v); });
        if (hit) return true;
    }
    return false;
}

RuleEvaluation evaluate_rule(const Situation& s, const Rule& r) {
    RuleEvaluation out;
    out.antecedent_true = std::all_of(r.antecedent.begin(), r.antecedent.end(),
                                      [&](const RuleAssertion& a) {
                                          return evaluate_assertion(s, a);
                                      });
    out.consequent_true = std::all_of(r.consequent.begin(), r.consequent.end(),
                                      [&](const RuleAssertion& a) {
                                          return evaluate_assertion(s, a);
                                      });
    out.satisfied = !out.antecedent_true || out.consequent_true;
    return out;
}

} // namespace ross
