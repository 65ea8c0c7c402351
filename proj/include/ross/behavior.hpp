#pragma once

#include <string>
#include <vector>

#include "ross/infopedia.hpp"
#include "ross/repository.hpp"
#include "ross/secondary.hpp"

namespace ross {

/// One prior- or post-state entity of a behavior after binder resolution:
/// a fixed offset from the anchor plus the cell values it requires (prior)
/// or writes (post).
struct BehaviorEntity {
    std::string name;
    std::int64_t dx = 0, dy = 0, dz = 0;
    int dt = 0;
    std::vector<Value> values;
};

struct CompiledBehavior {
    std::string name;
    std::string bridge;  // structural parent class the behavior applies under
    std::vector<BehaviorEntity> priors;  // priors[0] is the anchor (offset 0)
    std::vector<BehaviorEntity> posts;   // every post has net dt >= 1
};

/// Resolves a behavior class definition: populated-object references are
/// inlined and the binder constraint graph is solved into per-entity offsets
/// from the first prior state. Throws BridgeMismatch when the binder leaves
/// an entity unconstrained, contradicts itself, or lets a post state write at
/// dt < 1.
CompiledBehavior compile_behavior(const Infopedia& kb, const star::BehaviorClassDef& def);

struct Binding {
    Coord anchor;
    int t = 1;

    bool operator==(const Binding&) const = default;
};

/// True when a cell value satisfies a behavior value constraint. Category
/// names ("Space", "NonSpace", ...) match any value of that category; other
/// symbols match exactly.
bool cell_matches(const Value& cell, const Value& constraint);

/// All anchor positions at time t whose neighborhood satisfies every prior
/// state, in lexicographic (x, y, z) order. Reads honor the situation's
/// assumptions; unset cells never match.
std::vector<Binding> match_prior_states(const Situation& s, const CompiledBehavior& b, int t);

/// Writes the post states of one binding. Prior cells are untouched unless a
/// post state overwrites them. Throws ExtentOverflow when a post cell falls
/// off the grid, BridgeMismatch when the situation root's class is neither
/// the bridge class nor a descendant of it.
void apply_behavior(const Infopedia& kb, Situation& s, const CompiledBehavior& b,
                    const Binding& binding);

struct StepResult {
    int bindings = 0;
    int writes = 0;
};

/// One synchronous step: matches every behavior against the time-t snapshot,
/// stages all post writes, then commits. Two staged writes of different
/// values to the same cell throw WriteConflict naming the cell.
StepResult step_simulation(const Infopedia& kb, Situation& s,
                           const std::vector<CompiledBehavior>& behaviors, int t);

// ---- Implication rules ----

/// Ground cell-level assertion: true iff some candidate location's cell value
/// at time t is in the allowed set.
struct RuleAssertion {
    Stratum stratum = Stratum::Primary;
    std::vector<Coord> locations;
    int t = 1;
    std::vector<Value> allowed;
};

struct Rule {
    std::string name;
    std::vector<RuleAssertion> antecedent;
    std::vector<RuleAssertion> consequent;
};

struct RuleEvaluation {
    bool antecedent_true = false;
    bool consequent_true = false;
    bool satisfied = true;  // material implication: !antecedent || consequent
};

bool evaluate_assertion(const Situation& s, const RuleAssertion& a);
RuleEvaluation evaluate_rule(const Situation& s, const Rule& r);

} // namespace ross
